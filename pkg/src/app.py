import argparse
import logging
import os
import sys
from typing import List, Optional

from commands import cases, info, ontology, patterns, report, resilience, simulation, taxonomy
from framework.errors import EngineError, UsageError

# Setup logging before anything else uses it
logging.basicConfig(stream=sys.stderr, level=os.getenv("LOG_LEVEL", "WARNING").upper())
logger = logging.getLogger(__name__)

from framework.middleware import CommandLoggingMiddleware

COMMANDS = [ontology, taxonomy, patterns, resilience, cases, simulation, report]


class EngineArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as UsageError instead of exiting."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = EngineArgumentParser(
        prog="blindspot",
        description="Life-ontology blind spots, failure patterns and resilience.",
    )
    info.register(parser)
    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def dispatch(argv: Optional[List[str]] = None) -> int:
    """
    Parse `argv`, run the selected command and map failures to exit codes:
    0 success, 1 data or validation error, 2 usage error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code
    except SystemExit as e:
        # --help / --version
        return e.code if isinstance(e.code, int) else 0

    try:
        return CommandLoggingMiddleware().dispatch(args, args.handler)
    except EngineError as e:
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code
    except Exception as e:
        sys.stderr.write(f"error: internal error: {e}\n")
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

import argparse
import sys

from framework.serialization import dump_json
from models.report import VersionInfo

ENGINE_VERSION = "1.0.0"
SCHEMA_VERSION = "1"


def version_info() -> VersionInfo:
    """
    Engine information.

    Returns:
        VersionInfo: engine release and the version of the JSON document schemas.
    """
    return VersionInfo(engine=ENGINE_VERSION, schema=SCHEMA_VERSION)


class VersionAction(argparse.Action):
    def __init__(self, option_strings, dest=argparse.SUPPRESS, default=argparse.SUPPRESS, help=None):
        super().__init__(option_strings=option_strings, dest=dest, default=default, nargs=0, help=help)

    def __call__(self, parser, namespace, values, option_string=None):
        sys.stdout.write(dump_json(version_info()))
        parser.exit(0)


def register(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--version", action=VersionAction, help="print engine and schema versions")

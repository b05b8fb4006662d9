import logging

from analysis.blindspot_diff import diff, severity
from analysis.pipeline import detect_patterns, resolve_tau_now
from commands.common import add_output, add_pair, load_ontology, load_optional, log_config
from dependencies import add_config_arguments, get_config
from framework.errors import EngineError
from framework.serialization import emit
from models.patterns import InvestmentHistory, Shock

logger = logging.getLogger(__name__)


def add_context_arguments(parser) -> None:
    parser.add_argument("--shock", help="Shock JSON file")
    parser.add_argument("--invest", help="InvestmentHistory JSON file")
    parser.add_argument("--tau-now", dest="tau_now", type=float,
                        help="current time in years; defaults to the actual background 'age'")


def detect(args) -> int:
    """Emit the five pattern findings as a JSON array."""
    try:
        cfg = get_config(args)
        log_config(logger, "patterns", cfg)
        ideal = load_ontology(args.ideal)
        actual = load_ontology(args.actual)
        shock = load_optional(Shock, args.shock)
        investments = load_optional(InvestmentHistory, args.invest)

        bs = diff(ideal, actual)
        sigma = severity(bs, ideal).sigma
        findings, _, _ = detect_patterns(
            ideal, actual, bs, sigma, cfg,
            shock=shock,
            investments=investments,
            tau_now=resolve_tau_now(actual, args.tau_now),
        )
        emit(findings, args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def register(subparsers) -> None:
    parser = subparsers.add_parser("patterns", help="detect the five failure patterns")
    add_pair(parser)
    add_context_arguments(parser)
    add_config_arguments(parser)
    add_output(parser)
    parser.set_defaults(handler=detect)

import logging

from analysis.blindspot_diff import diff, severity
from analysis.failure_patterns import dominant_dimension, switch_cost
from analysis.ontology_core import populated_dimensions
from analysis.resilience import resilience
from commands.common import add_output, add_pair, load_ontology, load_optional, log_config
from dependencies import add_config_arguments, get_config
from framework.errors import EngineError
from framework.serialization import emit
from models.patterns import InvestmentHistory

logger = logging.getLogger(__name__)


def score(args) -> int:
    """
    Resilience of the actual ontology. The switch cost is the cost of leaving
    its dominant dimension at the actual ontology's stage.
    """
    try:
        cfg = get_config(args)
        log_config(logger, "resilience", cfg)
        ideal = load_ontology(args.ideal)
        actual = load_ontology(args.actual)
        investments = load_optional(InvestmentHistory, args.invest) or InvestmentHistory()

        sev = severity(diff(ideal, actual), ideal)
        sigma_max = sev.sigma_max if cfg.sigma_max == "computed" else cfg.sigma_max
        cost = switch_cost(investments, actual, dominant_dimension(actual), actual.stage, cfg.patterns())
        report = resilience(sev.sigma, sigma_max, actual, cost, cfg.omega_budget, cfg.epsilon, populated_dimensions(ideal))
        emit(report, args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def register(subparsers) -> None:
    parser = subparsers.add_parser("resilience", help="completeness x balance x mobility")
    add_pair(parser)
    parser.add_argument("--invest", help="InvestmentHistory JSON file")
    add_config_arguments(parser)
    add_output(parser)
    parser.set_defaults(handler=score)

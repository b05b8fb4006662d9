import logging

from analysis.pipeline import assess, assess_trajectory
from commands.common import add_output, add_pair, load_ontology, load_optional, log_config
from commands.patterns import add_context_arguments
from dependencies import add_config_arguments, get_config
from framework.errors import EngineError
from framework.serialization import emit, load_model
from models.patterns import InvestmentHistory, Shock
from models.report import TrajectoryInput

logger = logging.getLogger(__name__)


def report(args) -> int:
    """
    Run diff, severity, classification, pattern detection and resilience,
    and emit one combined document with the effective config.
    """
    try:
        cfg = get_config(args)
        log_config(logger, "report", cfg)
        combined = assess(
            load_ontology(args.ideal),
            load_ontology(args.actual),
            cfg,
            shock=load_optional(Shock, args.shock),
            investments=load_optional(InvestmentHistory, args.invest),
            tau_now=args.tau_now,
        )
        emit(combined, args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def trajectory(args) -> int:
    try:
        cfg = get_config(args)
        log_config(logger, "trajectory", cfg)
        stages = load_model(TrajectoryInput, args.stages)
        emit(assess_trajectory(stages.stages, cfg, stages.investments), args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def register(subparsers) -> None:
    parser = subparsers.add_parser("report", help="full single-stage pipeline as one JSON document")
    add_pair(parser)
    add_context_arguments(parser)
    add_config_arguments(parser)
    add_output(parser)
    parser.set_defaults(handler=report)

    parser = subparsers.add_parser("trajectory", help="assess a sequence of life stages")
    parser.add_argument("--stages", required=True,
                        help="JSON file {\"stages\": [{\"ideal\", \"actual\", \"tau_now\"?, \"shock\"?}], \"investments\"?}")
    add_config_arguments(parser)
    add_output(parser)
    parser.set_defaults(handler=trajectory)

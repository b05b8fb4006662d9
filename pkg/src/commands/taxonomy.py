import logging

from analysis.ontology_core import require_valid
from analysis.taxonomy import classify
from commands.common import add_output, add_pair, load_ontology, log_config
from dependencies import add_config_arguments, get_config
from framework.errors import EngineError
from framework.serialization import emit

logger = logging.getLogger(__name__)


def classify_blind_spots(args) -> int:
    try:
        cfg = get_config(args)
        log_config(logger, "classify", cfg)
        ideal = load_ontology(args.ideal)
        actual = load_ontology(args.actual)
        require_valid(ideal, label="ideal ontology")
        require_valid(actual, label="actual ontology")
        emit(classify(ideal, actual, cfg.taxonomy()), args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def register(subparsers) -> None:
    parser = subparsers.add_parser("classify", help="domain, structural, weight and temporal blindness")
    add_pair(parser)
    add_config_arguments(parser)
    add_output(parser)
    parser.set_defaults(handler=classify_blind_spots)

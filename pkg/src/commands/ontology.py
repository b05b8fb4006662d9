import logging

from analysis.blindspot_diff import diff, severity
from analysis.ontology_core import normalize_ontology, validate
from commands.common import add_output, add_pair, load_ontology
from framework.errors import EngineError
from framework.serialization import emit

logger = logging.getLogger(__name__)


def validate_ontology(args) -> int:
    """
    Check an ontology file against every invariant.

    Returns:
        int: 0 when the report is empty, 1 otherwise.
    """
    try:
        report = validate(load_ontology(args.ontology), role=args.role)
        emit(report, args.output)
        return 0 if report.valid else 1
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def normalize(args) -> int:
    try:
        emit(normalize_ontology(load_ontology(args.ontology)), args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def diff_ontologies(args) -> int:
    try:
        emit(diff(load_ontology(args.ideal), load_ontology(args.actual)), args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def severity_report(args) -> int:
    """Blind-spot severity of the actual ontology against the ideal."""
    try:
        ideal = load_ontology(args.ideal)
        emit(severity(diff(ideal, load_ontology(args.actual)), ideal), args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="report every invariant violation of an ontology")
    parser.add_argument("--ontology", required=True, help="ontology JSON file")
    parser.add_argument("--role", choices=("any", "ideal"), default="any",
                        help="'ideal' also requires phi, edge weight and rho")
    add_output(parser)
    parser.set_defaults(handler=validate_ontology)

    parser = subparsers.add_parser("normalize", help="rescale node and edge weights to sum to 1 per dimension")
    parser.add_argument("--ontology", required=True, help="ontology JSON file")
    add_output(parser)
    parser.set_defaults(handler=normalize)

    parser = subparsers.add_parser("diff", help="blind spot of the actual ontology against the ideal")
    add_pair(parser)
    add_output(parser)
    parser.set_defaults(handler=diff_ontologies)

    parser = subparsers.add_parser("severity", help="weighted severity of the blind spot")
    add_pair(parser)
    add_output(parser)
    parser.set_defaults(handler=severity_report)

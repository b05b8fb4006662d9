import logging

from analysis.case_db import CaseDatabase, build_ideal, coverage, estimate_rho, load_cases, save_cases
from commands.common import add_output
from dependencies import case_session, setup_case_store
from framework.errors import ConfigError, EngineError
from framework.serialization import emit, load_model, read_json
from models.case import CaseFile, IngestSummary, NodeMetadataFile, RhoEntry

logger = logging.getLogger(__name__)


def _read_case_file(path: str) -> CaseDatabase:
    return CaseDatabase(load_model(CaseFile, path).cases)


def _read_store(url: str) -> CaseDatabase:
    setup_case_store(logger, url)
    with case_session() as session:
        return load_cases(session)


def _case_source(args) -> CaseDatabase:
    if args.cases:
        return _read_case_file(args.cases)
    return _read_store(args.store)


def _read_background(path) -> dict:
    if not path:
        return {}
    data = read_json(path)
    if not isinstance(data, dict) or not all(isinstance(v, (int, float)) for v in data.values()):
        raise ConfigError(f"{path} must hold a JSON object of numeric features")
    return {name: float(value) for name, value in data.items()}


def ingest(args) -> int:
    """Validate a case file, build its index and optionally persist it."""
    try:
        db = _read_case_file(args.cases)
        if not db.verify_index():
            raise EngineError("case index is inconsistent with its cases")
        stored = False
        if args.store:
            setup_case_store(logger, args.store)
            with case_session() as session:
                save_cases(session, db)
            stored = True
        summary = IngestSummary(
            case_count=len(db),
            edge_count=len(db.index),
            coverage=coverage(db),
            stored=stored,
        )
        emit(summary, args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def ideal_build(args) -> int:
    try:
        db = _case_source(args)
        metadata = load_model(NodeMetadataFile, args.metadata).nodes if args.metadata else ()
        ideal = build_ideal(
            db,
            _read_background(args.background),
            args.stage_label,
            args.min_similarity,
            metadata=metadata,
            stage=args.stage,
        )
        emit(ideal, args.output)
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def rho(args) -> int:
    try:
        estimates = estimate_rho(_case_source(args))
        emit(
            [RhoEntry(dimension=d, source=s, target=t, rho=value) for (d, s, t), value in sorted(estimates.items())],
            args.output,
        )
        return 0
    except EngineError:
        raise
    except Exception as e:
        raise EngineError(f"Internal error: {str(e)}")


def _add_source(parser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--cases", help="case file JSON ({\"cases\": [...]})")
    source.add_argument("--store", help="case store database URL")


def register(subparsers) -> None:
    parser = subparsers.add_parser("ingest", help="validate and index a case file")
    parser.add_argument("--cases", required=True, help="case file JSON ({\"cases\": [...]})")
    parser.add_argument("--store", help="persist the cases into this database URL")
    add_output(parser)
    parser.set_defaults(handler=ingest)

    parser = subparsers.add_parser("ideal-build", help="aggregate similar failure cases into an ideal ontology")
    _add_source(parser)
    parser.add_argument("--stage-label", dest="stage_label", required=True)
    parser.add_argument("--stage", type=int, default=0, help="stage index of the emitted ontology")
    parser.add_argument("--background", help="JSON object of background features")
    parser.add_argument("--min-similarity", dest="min_similarity", type=float, default=0.0)
    parser.add_argument("--metadata", help="node metadata overrides JSON ({\"nodes\": [...]})")
    add_output(parser)
    parser.set_defaults(handler=ideal_build)

    parser = subparsers.add_parser("rho", help="edge criticality estimated from the cases")
    _add_source(parser)
    add_output(parser)
    parser.set_defaults(handler=rho)

"""
Historical Failure Case Database

Holds failure trajectories, estimates edge criticality as the fraction of
cases whose trajectory traverses an edge, and aggregates background-similar
cases into an ideal-ontology baseline.

Cases are kept sorted by id, so every aggregate is independent of the order
in which cases were added.
"""

import json
import logging
import math
from collections import Counter, defaultdict
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from sqlalchemy.orm import Session

from framework.errors import DomainError, EmptyDatabaseError, InsufficientDataError, SchemaError
from framework.serialization import dump_json, parse_model
from models.base import EdgeRef, NodeRef
from models.case import CaseRecord, CaseRow, CoverageCell, NodeMetadata
from models.ontology import CausalEdge, ConceptNode, DimensionGraph, Ontology

logger = logging.getLogger(__name__)

DEFAULT_PHI = 1.0

FeatureRanges = Mapping[str, Tuple[float, float]]


def _edges_of(case: CaseRecord) -> FrozenSet[EdgeRef]:
    return frozenset(step.ref for step in case.trajectory)


def _nodes_of(case: CaseRecord) -> FrozenSet[NodeRef]:
    nodes = set()
    for step in case.trajectory:
        nodes.add((step.dimension, step.source))
        nodes.add((step.dimension, step.target))
    return frozenset(nodes)


class CaseDatabase:
    """
    Immutable collection of failure cases with an edge -> case-id index.

    Raises:
        DomainError: if two cases share an id.
    """

    def __init__(self, cases: Iterable[CaseRecord] = ()):
        ordered = sorted(cases, key=lambda case: case.id)
        ids = Counter(case.id for case in ordered)
        duplicates = sorted(case_id for case_id, count in ids.items() if count > 1)
        if duplicates:
            raise DomainError(f"duplicate case ids: {', '.join(duplicates)}")
        self._cases: Tuple[CaseRecord, ...] = tuple(ordered)
        self._index: Dict[EdgeRef, FrozenSet[str]] = self._build_index(self._cases)

    @staticmethod
    def _build_index(cases: Iterable[CaseRecord]) -> Dict[EdgeRef, FrozenSet[str]]:
        index: Dict[EdgeRef, set] = defaultdict(set)
        for case in cases:
            for ref in _edges_of(case):
                index[ref].add(case.id)
        return {ref: frozenset(ids) for ref, ids in sorted(index.items())}

    @property
    def cases(self) -> Tuple[CaseRecord, ...]:
        return self._cases

    @property
    def index(self) -> Dict[EdgeRef, FrozenSet[str]]:
        return dict(self._index)

    def verify_index(self) -> bool:
        return self._build_index(self._cases) == self._index

    def subset(self, case_ids: Iterable[str]) -> "CaseDatabase":
        keep = set(case_ids)
        return CaseDatabase(case for case in self._cases if case.id in keep)

    def __len__(self) -> int:
        return len(self._cases)

    def __repr__(self):
        return f"<CaseDatabase(cases={len(self._cases)}, edges={len(self._index)})>"


def estimate_rho(db: CaseDatabase) -> Dict[EdgeRef, float]:
    """
    Fraction of cases whose trajectory traverses each edge.

    Raises:
        EmptyDatabaseError: if the database holds no cases.
    """
    if not len(db):
        raise EmptyDatabaseError("case database is empty")
    total = len(db)
    return {ref: len(ids) / total for ref, ids in db.index.items()}


def background_similarity(
    b1: Mapping[str, float],
    b2: Mapping[str, float],
    ranges: Optional[FeatureRanges] = None,
) -> float:
    """
    Inverse-distance similarity of two background vectors, 1 / (1 + d), where
    d is the euclidean distance over min-max normalized features.

    Args:
        ranges: Per-feature (low, high) bounds for normalization. Without them
                each feature is normalized by the span of the two values, so
                any differing feature contributes distance 1 and the result
                only counts how many features differ. Pass ranges (see
                `feature_ranges`) for graded similarity; `matching_cases` does.

    Raises:
        SchemaError: if the feature names differ or no feature is shared.
    """
    if set(b1) != set(b2):
        raise SchemaError(
            f"background schemas differ: {sorted(set(b1) ^ set(b2))}"
        )
    if not b1:
        raise SchemaError("backgrounds share no features")

    squared = []
    for name in sorted(b1):
        a, b = b1[name], b2[name]
        low, high = ranges[name] if ranges and name in ranges else (min(a, b), max(a, b))
        span = high - low
        squared.append(0.0 if span <= 0 else ((a - b) / span) ** 2)
    return 1.0 / (1.0 + math.sqrt(math.fsum(squared)))


def feature_ranges(backgrounds: Iterable[Mapping[str, float]]) -> Dict[str, Tuple[float, float]]:
    values: Dict[str, List[float]] = defaultdict(list)
    for background in backgrounds:
        for name, value in background.items():
            values[name].append(value)
    return {name: (min(vs), max(vs)) for name, vs in sorted(values.items())}


def matching_cases(
    db: CaseDatabase,
    background: Mapping[str, float],
    stage_label: str,
    min_similarity: float,
) -> List[CaseRecord]:
    staged = [case for case in db.cases if case.stage_label == stage_label]
    # every similarity is >= 0, so a zero floor admits every staged case
    if min_similarity <= 0:
        return staged
    ranges = feature_ranges([background, *(case.background for case in db.cases)])
    return [
        case for case in staged
        if background_similarity(background, case.background, ranges) >= min_similarity
    ]


def _apply_metadata(node: ConceptNode, meta: Optional[NodeMetadata]) -> ConceptNode:
    if meta is None:
        return node
    overrides = {
        field: getattr(meta, field)
        for field in ("phi", "tau_optimal", "delta_tau_max", "c0", "lambda_", "transferability")
        if getattr(meta, field) is not None
    }
    return node.model_copy(update=overrides) if overrides else node


def build_ideal(
    db: CaseDatabase,
    background: Mapping[str, float],
    stage_label: str,
    min_similarity: float,
    metadata: Iterable[NodeMetadata] = (),
    stage: int = 0,
) -> Ontology:
    """
    Ideal-ontology baseline aggregated from background-similar failure cases.

    Node weights are per-dimension normalized visit frequencies, edge weights
    normalized traversal frequencies, and edge rho the traversal fraction
    among the matching cases. phi defaults to 1.0 unless node metadata
    overrides it.

    Raises:
        InsufficientDataError: if no case matches, carrying the match count.
    """
    matched = matching_cases(db, background, stage_label, min_similarity)
    if not matched:
        raise InsufficientDataError(
            f"no case matches stage_label={stage_label!r} with similarity >= {min_similarity}",
            match_count=0,
        )

    node_counts: Counter = Counter()
    edge_counts: Counter = Counter()
    for case in matched:
        node_counts.update(_nodes_of(case))
        edge_counts.update(_edges_of(case))

    meta_by_node = {(meta.dimension, meta.id): meta for meta in metadata}
    unused = sorted(set(meta_by_node) - set(node_counts))
    if unused:
        logger.info({"event": "UnusedNodeMetadata", "nodes": [list(ref) for ref in unused]})

    dimensions: Dict[str, DimensionGraph] = {}
    for label in sorted({ref[0] for ref in node_counts}):
        node_refs = sorted(ref for ref in node_counts if ref[0] == label)
        edge_refs = sorted(ref for ref in edge_counts if ref[0] == label)
        node_total = math.fsum(node_counts[ref] for ref in node_refs)
        edge_total = math.fsum(edge_counts[ref] for ref in edge_refs)

        nodes = []
        for ref in node_refs:
            weight = node_counts[ref] / node_total
            node = ConceptNode(id=ref[1], weight=weight, omega=weight, phi=DEFAULT_PHI)
            nodes.append(_apply_metadata(node, meta_by_node.get(ref)))

        edges = [
            CausalEdge(
                source=ref[1],
                target=ref[2],
                weight=edge_counts[ref] / edge_total,
                rho=edge_counts[ref] / len(matched),
            )
            for ref in edge_refs
        ]
        dimensions[label] = DimensionGraph(dimension=label, nodes=tuple(nodes), edges=tuple(edges))

    logger.info({
        "event": "IdealBuilt",
        "stage_label": stage_label,
        "matched_cases": len(matched),
        "nodes": sum(len(g.nodes) for g in dimensions.values()),
        "edges": sum(len(g.edges) for g in dimensions.values()),
    })
    return Ontology(
        individual=f"ideal:{stage_label}",
        stage=stage,
        stage_label=stage_label,
        background=dict(background),
        dimensions=dimensions,
    )


def coverage(db: CaseDatabase) -> Tuple[CoverageCell, ...]:
    """Case counts per (stage_label, pattern_label) cell."""
    counts = Counter((case.stage_label, case.pattern_label) for case in db.cases)
    cells = sorted(counts.items(), key=lambda item: (item[0][0], item[0][1].value if item[0][1] else ""))
    return tuple(
        CoverageCell(stage_label=stage_label, pattern_label=pattern_label, count=count)
        for (stage_label, pattern_label), count in cells
    )


# ---------- Persistent store ----------

def save_cases(session: Session, db: CaseDatabase) -> int:
    """Upsert every case into the store. Returns the number of cases written."""
    try:
        for case in db.cases:
            session.merge(CaseRow(
                id=case.id,
                stage_label=case.stage_label,
                pattern_label=case.pattern_label.value if case.pattern_label else None,
                outcome_severity=case.outcome_severity,
                payload=dump_json(case),
            ))
        session.commit()
    except Exception:
        session.rollback()
        raise
    logger.info({"event": "CasesStored", "count": len(db)})
    return len(db)


def load_cases(session: Session, stage_label: Optional[str] = None) -> CaseDatabase:
    query = session.query(CaseRow)
    if stage_label is not None:
        query = query.filter(CaseRow.stage_label == stage_label)
    rows = query.order_by(CaseRow.id).all()
    return CaseDatabase(
        parse_model(CaseRecord, json.loads(row.payload), source=f"stored case {row.id}")
        for row in rows
    )

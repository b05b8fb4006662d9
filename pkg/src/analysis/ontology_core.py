"""
Ontology validation and weight normalization.

Violations are data: `validate` never raises, it lists every broken invariant
with its dimension and location. Operations that need a valid ontology go
through `require_valid`, which raises OntologyValidationError carrying the
report.
"""

import logging
import math
from collections import Counter
from typing import List, Literal

from framework.errors import AbsentDimensionError, DegenerateGraphError, OntologyValidationError
from models.ontology import (
    ConceptNode,
    DimensionGraph,
    DimensionId,
    Ontology,
    ValidationReport,
    Violation,
    ViolationKind,
)

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-9

Role = Literal["any", "ideal"]

_UNIT_FIELDS = ("weight", "omega", "phi", "transferability")
_NONNEGATIVE_FIELDS = ("tau_optimal", "delta_tau_max", "tau_acquire")
_POSITIVE_FIELDS = ("c0", "lambda_")


def _field_label(field: str) -> str:
    return "lambda" if field == "lambda_" else field


def _check_node(label: str, node: ConceptNode, role: Role, out: List[Violation]) -> None:
    location = f"{label}/{node.id}"
    for field in _UNIT_FIELDS:
        value = getattr(node, field)
        if value is not None and not (0.0 <= value <= 1.0):
            out.append(Violation(
                kind=ViolationKind.OUT_OF_RANGE, dimension=label, location=location,
                message=f"node {location}: {field}={value} outside [0, 1]",
            ))
    for field in _NONNEGATIVE_FIELDS:
        value = getattr(node, field)
        if value is not None and value < 0:
            out.append(Violation(
                kind=ViolationKind.OUT_OF_RANGE, dimension=label, location=location,
                message=f"node {location}: {field}={value} is negative",
            ))
    for field in _POSITIVE_FIELDS:
        value = getattr(node, field)
        if value is not None and value <= 0:
            out.append(Violation(
                kind=ViolationKind.OUT_OF_RANGE, dimension=label, location=location,
                message=f"node {location}: {_field_label(field)}={value} must be > 0",
            ))
    if role == "ideal":
        if node.phi is None:
            out.append(Violation(
                kind=ViolationKind.MISSING_IDEAL_FIELD, dimension=label, location=location,
                message=f"ideal node {location} has no phi",
            ))
        if node.omega is not None and abs(node.omega - node.weight) > NORMALIZATION_TOLERANCE:
            out.append(Violation(
                kind=ViolationKind.OMEGA_MISMATCH, dimension=label, location=location,
                message=f"ideal node {location}: omega={node.omega} differs from weight={node.weight}",
            ))


def _check_graph(label: str, graph: DimensionGraph, role: Role, out: List[Violation]) -> None:
    if not label:
        out.append(Violation(
            kind=ViolationKind.DIMENSION_LABEL, dimension=label,
            message="dimension label must be a non-empty string",
        ))

    id_counts = Counter(node.id for node in graph.nodes)
    for node_id, count in sorted(id_counts.items()):
        if count > 1:
            out.append(Violation(
                kind=ViolationKind.DUPLICATE_NODE, dimension=label, location=f"{label}/{node_id}",
                message=f"node id {node_id} appears {count} times in dimension {label}",
            ))

    for node in graph.nodes:
        _check_node(label, node, role, out)

    if graph.nodes:
        total = math.fsum(node.weight for node in graph.nodes)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            out.append(Violation(
                kind=ViolationKind.NORMALIZATION, dimension=label,
                message=f"node weights in dimension {label} sum to {total}, expected 1",
            ))

    edge_counts = Counter(edge.key for edge in graph.edges)
    for (source, target), count in sorted(edge_counts.items()):
        if count > 1:
            out.append(Violation(
                kind=ViolationKind.DUPLICATE_EDGE, dimension=label, location=f"{label}/{source}->{target}",
                message=f"edge {source}->{target} appears {count} times in dimension {label}",
            ))

    for edge in graph.edges:
        location = f"{label}/{edge.source}->{edge.target}"
        for endpoint in (edge.source, edge.target):
            if endpoint not in id_counts:
                out.append(Violation(
                    kind=ViolationKind.DANGLING_EDGE, dimension=label, location=location,
                    message=f"edge {location} references unknown node {endpoint}",
                ))
        for field in ("weight", "rho"):
            value = getattr(edge, field)
            if value is not None and not (0.0 <= value <= 1.0):
                out.append(Violation(
                    kind=ViolationKind.OUT_OF_RANGE, dimension=label, location=location,
                    message=f"edge {location}: {field}={value} outside [0, 1]",
                ))
        if role == "ideal":
            for field in ("weight", "rho"):
                if getattr(edge, field) is None:
                    out.append(Violation(
                        kind=ViolationKind.MISSING_IDEAL_FIELD, dimension=label, location=location,
                        message=f"ideal edge {location} has no {field}",
                    ))

    weighted = [edge.weight for edge in graph.edges if edge.weight is not None]
    if weighted and len(weighted) != len(graph.edges):
        out.append(Violation(
            kind=ViolationKind.PARTIAL_EDGE_WEIGHTS, dimension=label,
            message=f"only {len(weighted)} of {len(graph.edges)} edges in dimension {label} carry a weight",
        ))
    elif weighted:
        total = math.fsum(weighted)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            out.append(Violation(
                kind=ViolationKind.EDGE_NORMALIZATION, dimension=label,
                message=f"edge weights in dimension {label} sum to {total}, expected 1",
            ))


def validate(o: Ontology, role: Role = "any") -> ValidationReport:
    """
    Check every invariant of an ontology.

    Args:
        o: The ontology to check.
        role: "ideal" additionally requires phi on nodes, weight and rho on
              edges, and omega (when given) equal to the node weight.

    Returns:
        ValidationReport: empty iff every invariant holds.
    """
    violations: List[Violation] = []
    if o.stage < 0:
        violations.append(Violation(
            kind=ViolationKind.NEGATIVE_STAGE,
            message=f"stage {o.stage} is negative",
        ))
    for label in sorted(o.dimensions):
        _check_graph(label, o.dimensions[label], role, violations)
    return ValidationReport(violations=tuple(violations))


def require_valid(o: Ontology, role: Role = "any", label: str = "ontology") -> None:
    report = validate(o, role)
    if not report.valid:
        raise OntologyValidationError(report, label=label)


def normalize_weights(g: DimensionGraph) -> DimensionGraph:
    """
    Rescale node weights (and edge weights, when any is positive) to sum to 1.

    Raises:
        DegenerateGraphError: if no node carries a positive weight.
    """
    total = math.fsum(node.weight for node in g.nodes)
    if not any(node.weight > 0 for node in g.nodes) or total <= 0:
        raise DegenerateGraphError(
            f"dimension {g.dimension or '<unlabelled>'} has no positive node weight to normalize"
        )
    nodes = tuple(node.model_copy(update={"weight": node.weight / total}) for node in g.nodes)

    edges = g.edges
    edge_total = math.fsum(edge.weight for edge in g.edges if edge.weight is not None)
    if any(edge.weight is not None and edge.weight > 0 for edge in g.edges) and edge_total > 0:
        edges = tuple(
            edge if edge.weight is None else edge.model_copy(update={"weight": edge.weight / edge_total})
            for edge in g.edges
        )
    return g.model_copy(update={"nodes": nodes, "edges": edges})


def normalize_ontology(o: Ontology) -> Ontology:
    dimensions = {
        label: normalize_weights(graph) if graph.nodes else graph
        for label, graph in o.dimensions.items()
    }
    return o.model_copy(update={"dimensions": dimensions})


def mean_dimension_weight(o: Ontology, d: DimensionId) -> float:
    graph = o.graph(d)
    if graph is None or not graph.nodes:
        raise AbsentDimensionError(f"dimension {d} is missing or has no nodes")
    return math.fsum(node.weight for node in graph.nodes) / len(graph.nodes)


def mean_weights(o: Ontology) -> dict:
    """Mean node weight per non-empty dimension."""
    return {
        label: mean_dimension_weight(o, label)
        for label in sorted(o.dimensions)
        if o.dimensions[label].nodes
    }


def populated_dimensions(o: Ontology) -> List[DimensionId]:
    return sorted(label for label, graph in o.dimensions.items() if graph.nodes)

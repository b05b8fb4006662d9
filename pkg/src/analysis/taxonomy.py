"""
Blind-spot taxonomy: domain, structural, weight and temporal blindness, plus
the exponential temporal remediation cost.

Every predicate uses a strict inequality; values on a threshold do not fire.
"""

import math
from typing import Iterable, List, Optional, Set, Tuple

from framework.errors import DegenerateIdealError, IncompleteIdealError, IncompleteNodeError
from models.base import EdgeRef, NodeRef
from models.ontology import ConceptNode, DimensionId, Ontology
from models.taxonomy import TaxonomyReport, TaxonomyThresholds


def classify_domain_blindness(
    ideal: Ontology,
    actual: Ontology,
    eps_dom: float,
    dimensions: Optional[Iterable[DimensionId]] = None,
) -> List[DimensionId]:
    """
    Type I: dimensions whose actual node count is a vanishing fraction of the ideal's.

    Args:
        dimensions: Dimensions to test; every ideal dimension when omitted.

    Raises:
        DegenerateIdealError: if a tested ideal dimension has no nodes.
    """
    tested = sorted(ideal.dimensions) if dimensions is None else sorted(set(dimensions))
    flagged = []
    for label in tested:
        graph = ideal.graph(label)
        if graph is None or not graph.nodes:
            raise DegenerateIdealError(f"ideal dimension {label} has no nodes")
        present = actual.graph(label)
        ratio = (len(present.nodes) if present else 0) / len(graph.nodes)
        if ratio < eps_dom:
            flagged.append(label)
    return flagged


def classify_structural_blindness(ideal: Ontology, actual: Ontology, eps_str: float) -> List[EdgeRef]:
    """
    Type II: critical ideal edges severed although both endpoints are present.

    Raises:
        IncompleteIdealError: if a severed edge carries no rho.
    """
    actual_nodes = actual.node_refs()
    actual_edges = actual.edge_refs()
    flagged = []
    for ref, edge in ideal.iter_edges():
        dimension, source, target = ref
        if (dimension, source) not in actual_nodes or (dimension, target) not in actual_nodes:
            continue
        if ref in actual_edges:
            continue
        if edge.rho is None:
            raise IncompleteIdealError(f"{dimension}/{source}->{target}", "rho")
        if edge.rho > eps_str:
            flagged.append(ref)
    return sorted(flagged)


def classify_weight_blindness(
    ideal: Ontology, actual: Ontology, eps_wt: float, eps_act: float
) -> List[NodeRef]:
    """Type III: shared nodes suppressed by more than eps_wt and left below eps_act."""
    flagged = []
    for ref, node in ideal.iter_nodes():
        present = actual.node(ref)
        if present is None:
            continue
        delta = max(0.0, node.weight - present.weight)
        if delta > eps_wt and present.weight < eps_act:
            flagged.append(ref)
    return sorted(flagged)


def _has_temporal_metadata(node: ConceptNode) -> bool:
    return None not in (node.tau_acquire, node.tau_optimal, node.delta_tau_max)


def _temporal_split(actual: Ontology) -> Tuple[List[NodeRef], List[NodeRef]]:
    late, unevaluated = [], []
    for ref, node in actual.iter_nodes():
        if not _has_temporal_metadata(node):
            unevaluated.append(ref)
        elif node.tau_acquire > node.tau_optimal + node.delta_tau_max:
            late.append(ref)
    return sorted(late), sorted(unevaluated)


def classify_temporal_blindness(actual: Ontology) -> List[NodeRef]:
    """Type IV: nodes acquired after their optimal window closed. Nodes lacking timing data are skipped."""
    return _temporal_split(actual)[0]


def classify(ideal: Ontology, actual: Ontology, thresholds: TaxonomyThresholds) -> TaxonomyReport:
    """Run all four classifiers. Empty ideal dimensions are not tested for Type I."""
    populated = [label for label, graph in ideal.dimensions.items() if graph.nodes]
    late, unevaluated = _temporal_split(actual)
    return TaxonomyReport(
        type1_dimensions=tuple(classify_domain_blindness(ideal, actual, thresholds.eps_dom, populated)),
        type2_edges=tuple(classify_structural_blindness(ideal, actual, thresholds.eps_str)),
        type3_nodes=tuple(classify_weight_blindness(ideal, actual, thresholds.eps_wt, thresholds.eps_act)),
        type4_nodes=tuple(late),
        unevaluated=tuple(unevaluated),
    )


def remediation_cost(v: ConceptNode, tau: float) -> float:
    """
    Cost of acquiring concept `v` at time `tau`: c0 * exp(lambda * max(0, tau - tau_optimal)).
    Returns math.inf once the exponential leaves the float range.

    Raises:
        IncompleteNodeError: if c0, lambda or tau_optimal is missing.
    """
    missing: Set[str] = {
        name for name, value in (("c0", v.c0), ("lambda", v.lambda_), ("tau_optimal", v.tau_optimal))
        if value is None
    }
    if missing:
        raise IncompleteNodeError(f"node {v.id} lacks {', '.join(sorted(missing))}")
    try:
        return v.c0 * math.exp(v.lambda_ * max(0.0, tau - v.tau_optimal))
    except OverflowError:
        return math.inf

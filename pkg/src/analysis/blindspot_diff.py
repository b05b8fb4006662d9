"""
Ontological difference and blind-spot severity.

Nodes and edges are matched by dimension-qualified id; a node id that appears
in two dimensions is two distinct concepts.
"""

import logging
import math
from typing import Dict

from analysis.ontology_core import require_valid
from framework.errors import IncompleteIdealError
from models.blindspot import BlindSpot, SeverityReport
from models.ontology import Ontology

logger = logging.getLogger(__name__)


def diff(ideal: Ontology, actual: Ontology, validate: bool = True) -> BlindSpot:
    """
    Compute the blind spot of `actual` against `ideal`.

    Args:
        ideal: The ideal ontology for the stage.
        actual: The individual's actual ontology.
        validate: Run the validation gate on both inputs first.

    Raises:
        OntologyValidationError: if either ontology is invalid.
    """
    if validate:
        require_valid(ideal, label="ideal ontology")
        require_valid(actual, label="actual ontology")

    if ideal.stage != actual.stage:
        logger.warning({
            "event": "StageMismatch",
            "ideal_stage": ideal.stage,
            "actual_stage": actual.stage,
        })

    actual_nodes = actual.node_refs()
    actual_edges = actual.edge_refs()

    missing_nodes = sorted(ref for ref in ideal.node_refs() if ref not in actual_nodes)
    missing_edges = sorted(ref for ref in ideal.edge_refs() if ref not in actual_edges)

    delta_w: Dict[str, Dict[str, float]] = {}
    for ref, node in ideal.iter_nodes():
        present = actual.node(ref)
        if present is None:
            continue
        delta = max(0.0, node.weight - present.weight)
        if delta > 0:
            delta_w.setdefault(ref[0], {})[ref[1]] = delta

    return BlindSpot(
        missing_nodes=tuple(missing_nodes),
        missing_edges=tuple(missing_edges),
        delta_w=delta_w,
    )


def sigma_max_of(ideal: Ontology) -> float:
    """Severity of an empty actual ontology: every node and edge of the ideal is missing."""
    node_term = math.fsum(node.weight for _, node in ideal.iter_nodes())
    edge_terms = []
    for ref, edge in ideal.iter_edges():
        if edge.weight is None:
            raise IncompleteIdealError(_edge_label(ref), "weight")
        if edge.rho is None:
            raise IncompleteIdealError(_edge_label(ref), "rho")
        edge_terms.append(edge.weight * edge.rho)
    return node_term + math.fsum(edge_terms)


def severity(bs: BlindSpot, ideal: Ontology) -> SeverityReport:
    """
    Weighted severity of a blind spot.

    Missing nodes contribute their ideal weight, missing edges their weight
    times causal criticality, and suppressed shared nodes their weight deficit
    times activation sensitivity.

    Raises:
        IncompleteIdealError: if a referenced ideal element is absent or lacks
            the attribute its term needs.
    """
    node_terms = []
    for ref in bs.missing_nodes:
        node = ideal.node(ref)
        if node is None:
            raise IncompleteIdealError(_node_label(ref), "entry in the ideal ontology")
        node_terms.append(node.weight)

    causal_terms = []
    for ref in bs.missing_edges:
        edge = ideal.edge(ref)
        if edge is None:
            raise IncompleteIdealError(_edge_label(ref), "entry in the ideal ontology")
        if edge.weight is None:
            raise IncompleteIdealError(_edge_label(ref), "weight")
        if edge.rho is None:
            raise IncompleteIdealError(_edge_label(ref), "rho")
        causal_terms.append(edge.weight * edge.rho)

    suppression_terms = []
    for ref in bs.suppressed_nodes():
        node = ideal.node(ref)
        if node is None:
            raise IncompleteIdealError(_node_label(ref), "entry in the ideal ontology")
        if node.phi is None:
            raise IncompleteIdealError(_node_label(ref), "phi")
        suppression_terms.append(bs.delta(ref) * node.phi)

    node_absence = math.fsum(node_terms)
    causal_absence = math.fsum(causal_terms)
    weight_suppression = math.fsum(suppression_terms)

    return SeverityReport(
        sigma=node_absence + causal_absence + weight_suppression,
        node_absence_term=node_absence,
        causal_absence_term=causal_absence,
        weight_suppression_term=weight_suppression,
        sigma_max=sigma_max_of(ideal),
    )


def _node_label(ref) -> str:
    return f"{ref[0]}/{ref[1]}"


def _edge_label(ref) -> str:
    return f"{ref[0]}/{ref[1]}->{ref[2]}"

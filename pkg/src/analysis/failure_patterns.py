"""
Failure Pattern Detection

Five convergent failure patterns evaluated over an actual ontology, its blind
spot against the ideal, an external shock and an investment history:

    Mono           one dimension absorbs the weight, the others are neglected
    WindowClosure  a late-acquired concept now costs more than the budget
    ChainBreak     a high-criticality causal path of the ideal is broken
    Resonance      a shock lands mostly inside the blind spot
    LockIn         leaving the dominant dimension costs more than the budget

Critical paths are enumerated per dimension over a networkx DiGraph with
branch-and-bound pruning on the running rho product.
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

from analysis.ontology_core import mean_weights
from analysis.taxonomy import classify_temporal_blindness, remediation_cost
from framework.errors import (
    AbsentDimensionError,
    DegenerateShockError,
    DomainError,
    IncompleteIdealError,
    IncompleteNodeError,
    MalformedPathError,
)
from models.base import EdgeRef, NodeRef
from models.blindspot import BlindSpot
from models.ontology import DimensionId, Ontology
from models.patterns import (
    CriticalPath,
    InvestmentHistory,
    PatternConfig,
    PatternFinding,
    PatternName,
    Shock,
)
from models.taxonomy import TaxonomyThresholds

logger = logging.getLogger(__name__)

DEFAULT_TRANSFERABILITY = 0.5


# ---------- Pattern I: mono-dimensional overfit ----------

def detect_mono(actual: Ontology, cfg: PatternConfig) -> PatternFinding:
    """
    Fires when one dimension's mean weight exceeds theta_mono while every
    other dimension stays below eps_mono.

    Raises:
        AbsentDimensionError: if a dimension of `actual` has no nodes.
    """
    for label, graph in actual.dimensions.items():
        if not graph.nodes:
            raise AbsentDimensionError(f"dimension {label} has no nodes")
    means = mean_weights(actual)
    if not means:
        raise AbsentDimensionError("actual ontology has no populated dimension")

    for candidate, value in sorted(means.items()):
        if value > cfg.theta_mono and all(
            other < cfg.eps_mono for label, other in means.items() if label != candidate
        ):
            return PatternFinding(
                pattern=PatternName.MONO,
                fired=True,
                evidence={"dominant_dimension": candidate, "mean_weights": means},
            )
    return PatternFinding(
        pattern=PatternName.MONO,
        fired=False,
        evidence={"max_mean_weight": max(means.values())},
    )


# ---------- Pattern II: window closure ----------

def detect_window_closure(actual: Ontology, tau_now: float, cfg: PatternConfig) -> PatternFinding:
    """
    Fires when some Type IV node would cost more than omega_budget to remediate at `tau_now`.

    Nodes lacking cost metadata (c0, lambda, tau_optimal) are skipped.
    """
    if tau_now < 0:
        raise DomainError(f"tau_now must be >= 0, got {tau_now}")

    costs: List[Tuple[NodeRef, float]] = []
    for ref in classify_temporal_blindness(actual):
        try:
            costs.append((ref, remediation_cost(actual.node(ref), tau_now)))
        except IncompleteNodeError:
            logger.debug({"event": "WindowClosureSkipped", "node": list(ref)})

    exceeding = [(ref, cost) for ref, cost in costs if cost > cfg.omega_budget]
    if exceeding:
        return PatternFinding(
            pattern=PatternName.WINDOW_CLOSURE,
            fired=True,
            evidence={
                # null cost: beyond float range
                "nodes": [
                    {"node": list(ref), "cost": cost if math.isfinite(cost) else None}
                    for ref, cost in exceeding
                ],
                "tau_now": tau_now,
            },
        )
    evidence = {"max_cost": max(cost for _, cost in costs)} if costs else {}
    return PatternFinding(pattern=PatternName.WINDOW_CLOSURE, fired=False, evidence=evidence)


# ---------- Pattern III: structural chain break ----------

def path_criticality(path: Sequence[EdgeRef], ideal: Ontology) -> float:
    """
    Product of the rho values along a connected directed walk of the ideal.

    Raises:
        MalformedPathError: on an empty or disconnected path, an edge absent
            from the ideal, or an edge without rho.
    """
    if not path:
        raise MalformedPathError("path has no edges")
    product = 1.0
    for index, ref in enumerate(path):
        if index:
            previous = path[index - 1]
            if ref[0] != previous[0] or ref[1] != previous[2]:
                raise MalformedPathError(
                    f"edge {ref[0]}/{ref[1]}->{ref[2]} does not continue from "
                    f"{previous[0]}/{previous[1]}->{previous[2]}"
                )
        edge = ideal.edge(ref)
        if edge is None:
            raise MalformedPathError(f"edge {ref[0]}/{ref[1]}->{ref[2]} is not in the ideal ontology")
        if edge.rho is None:
            raise MalformedPathError(f"edge {ref[0]}/{ref[1]}->{ref[2]} carries no rho")
        product *= edge.rho
    return product


def criticality_graph(ideal: Ontology, dimension: DimensionId) -> nx.DiGraph:
    """DiGraph of one ideal dimension with `rho` on every edge."""
    graph = nx.DiGraph()
    dimension_graph = ideal.graph(dimension)
    if dimension_graph is None:
        return graph
    graph.add_nodes_from(node.id for node in dimension_graph.nodes)
    for edge in dimension_graph.edges:
        if edge.rho is None:
            raise IncompleteIdealError(f"{dimension}/{edge.source}->{edge.target}", "rho")
        graph.add_edge(edge.source, edge.target, rho=edge.rho)
    return graph


def _extend(
    graph: nx.DiGraph,
    path: List[str],
    product: float,
    eps_chain: float,
    max_path_len: int,
    found: List[Tuple[Tuple[str, ...], float]],
) -> None:
    if len(path) - 1 >= max_path_len:
        return
    tail = path[-1]
    for successor in sorted(graph.successors(tail)):
        if successor in path:
            continue
        extended = product * graph.edges[tail, successor]["rho"]
        # rho <= 1, so no extension of a pruned prefix can clear the threshold
        if extended <= eps_chain:
            continue
        path.append(successor)
        found.append((tuple(path), extended))
        _extend(graph, path, extended, eps_chain, max_path_len, found)
        path.pop()


def enumerate_critical_paths(ideal: Ontology, eps_chain: float, max_path_len: int) -> List[CriticalPath]:
    """
    Every simple directed path of 1..max_path_len edges whose criticality exceeds eps_chain.

    Returns:
        List[CriticalPath]: by descending criticality, then dimension and node ids.
    """
    if max_path_len < 1:
        raise DomainError(f"max_path_len must be >= 1, got {max_path_len}")

    paths: List[CriticalPath] = []
    for dimension in sorted(ideal.dimensions):
        graph = criticality_graph(ideal, dimension)
        found: List[Tuple[Tuple[str, ...], float]] = []
        for root in sorted(graph.nodes):
            _extend(graph, [root], 1.0, eps_chain, max_path_len, found)
        paths.extend(CriticalPath(dimension=dimension, nodes=nodes, criticality=c) for nodes, c in found)

    paths.sort(key=lambda p: (-p.criticality, p.dimension, p.nodes))
    return paths


def _first_missing(path: CriticalPath, actual_nodes: Set[NodeRef], actual_edges: Set[EdgeRef]) -> Optional[dict]:
    if (path.dimension, path.nodes[0]) not in actual_nodes:
        return {"kind": "node", "ref": [path.dimension, path.nodes[0]]}
    for ref in path.edges:
        if (ref[0], ref[2]) not in actual_nodes:
            return {"kind": "node", "ref": [ref[0], ref[2]]}
        if ref not in actual_edges:
            return {"kind": "edge", "ref": list(ref)}
    return None


def detect_chain_break(ideal: Ontology, actual: Ontology, cfg: PatternConfig) -> PatternFinding:
    """Fires when a critical path of the ideal is not fully contained in `actual`."""
    actual_nodes = actual.node_refs()
    actual_edges = actual.edge_refs()

    broken = []
    for path in enumerate_critical_paths(ideal, cfg.eps_chain, cfg.max_path_len):
        missing = _first_missing(path, actual_nodes, actual_edges)
        if missing is not None:
            broken.append({
                "dimension": path.dimension,
                "nodes": list(path.nodes),
                "criticality": path.criticality,
                "first_missing": missing,
            })

    if broken:
        return PatternFinding(pattern=PatternName.CHAIN_BREAK, fired=True, evidence={"broken_paths": broken})
    return PatternFinding(pattern=PatternName.CHAIN_BREAK, fired=False)


# ---------- Pattern IV: blind-spot resonance ----------

def blind_spot_members(
    bs: BlindSpot, ideal: Ontology, thresholds: TaxonomyThresholds = TaxonomyThresholds()
) -> Set[NodeRef]:
    """
    Nodes that count as inside the blind spot: missing nodes, weight-blind
    (Type III) nodes, and endpoints of missing edges with rho above eps_str.
    """
    members: Set[NodeRef] = set(bs.missing_nodes)

    for ref in bs.suppressed_nodes():
        node = ideal.node(ref)
        if node is None:
            continue
        delta = bs.delta(ref)
        if delta > thresholds.eps_wt and node.weight - delta < thresholds.eps_act:
            members.add(ref)

    for ref in bs.missing_edges:
        edge = ideal.edge(ref)
        if edge is None:
            continue
        if edge.rho is None:
            raise IncompleteIdealError(f"{ref[0]}/{ref[1]}->{ref[2]}", "rho")
        if edge.rho > thresholds.eps_str:
            members.add((ref[0], ref[1]))
            members.add((ref[0], ref[2]))
    return members


def _overlap(shock: Shock, bs: BlindSpot, ideal: Ontology, thresholds: TaxonomyThresholds):
    domain = sorted(set(shock.domain_nodes))
    if not domain:
        raise DegenerateShockError("shock domain is empty")
    members = blind_spot_members(bs, ideal, thresholds)
    overlapping = [ref for ref in domain if ref in members]
    return overlapping, len(overlapping) / len(domain)


def resonance_index(
    sigma: float,
    shock: Shock,
    bs: BlindSpot,
    ideal: Ontology,
    thresholds: TaxonomyThresholds = TaxonomyThresholds(),
) -> float:
    """
    Resonance destruction index: sigma * shock magnitude * fraction of the
    shock domain inside the blind spot.

    Raises:
        DegenerateShockError: if the shock domain is empty.
        DomainError: if sigma is negative.
    """
    if sigma < 0:
        raise DomainError(f"sigma must be >= 0, got {sigma}")
    _, fraction = _overlap(shock, bs, ideal, thresholds)
    return sigma * shock.magnitude * fraction


def detect_resonance(
    shock: Shock,
    bs: BlindSpot,
    ideal: Ontology,
    sigma: float,
    cfg: PatternConfig,
    thresholds: TaxonomyThresholds = TaxonomyThresholds(),
) -> PatternFinding:
    """Fires when the overlap fraction exceeds theta_res."""
    if sigma < 0:
        raise DomainError(f"sigma must be >= 0, got {sigma}")
    overlapping, fraction = _overlap(shock, bs, ideal, thresholds)
    if fraction > cfg.theta_res:
        return PatternFinding(
            pattern=PatternName.RESONANCE,
            fired=True,
            evidence={
                "gamma": sigma * shock.magnitude * fraction,
                "overlap_fraction": fraction,
                "overlapping_nodes": [list(ref) for ref in overlapping],
                "shock_stage": shock.stage,
            },
        )
    return PatternFinding(pattern=PatternName.RESONANCE, fired=False, evidence={"overlap_fraction": fraction})


# ---------- Pattern V: path lock-in ----------

def depreciated_investment(hist: InvestmentHistory, dimension: DimensionId, k: int, gamma: float) -> float:
    if k < hist.max_stage():
        raise DomainError(f"stage {k} precedes recorded investment at stage {hist.max_stage()}")
    return math.fsum(gamma ** (k - j) * hist.amount(j, dimension) for j in range(k + 1))


def residual_value(actual: Ontology, dimension: DimensionId) -> float:
    """Transferable value of a dimension's ontology; absent dimensions carry none."""
    graph = actual.graph(dimension)
    if graph is None:
        return 0.0
    return math.fsum(
        (DEFAULT_TRANSFERABILITY if node.transferability is None else node.transferability) * node.weight
        for node in graph.nodes
    )


def switch_cost(
    hist: InvestmentHistory, actual: Ontology, from_dim: DimensionId, k: int, cfg: PatternConfig
) -> float:
    """
    Cost of leaving `from_dim` at stage `k`: depreciated investment minus the
    residual value that transfers. May be negative.

    Raises:
        DomainError: if `k` precedes a recorded investment stage.
    """
    return (
        cfg.alpha * depreciated_investment(hist, from_dim, k, cfg.gamma)
        - cfg.beta * residual_value(actual, from_dim)
    )


def dominant_dimension(actual: Ontology) -> DimensionId:
    """Dimension with the largest mean weight; ties go to the lexicographically smallest label."""
    means: Dict[str, float] = mean_weights(actual)
    if not means:
        raise AbsentDimensionError("actual ontology has no populated dimension")
    return min(means, key=lambda label: (-means[label], label))


def detect_lockin(cost: float, cfg: PatternConfig) -> PatternFinding:
    return PatternFinding(
        pattern=PatternName.LOCK_IN,
        fired=cost > cfg.omega_budget,
        evidence={"switch_cost": cost},
    )

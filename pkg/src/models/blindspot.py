from typing import Dict, Tuple

from pydantic import Field

from .base import EdgeRef, FrozenModel, NodeRef


class BlindSpot(FrozenModel):
    """Result of the ideal-minus-actual difference."""

    missing_nodes: Tuple[NodeRef, ...] = ()
    missing_edges: Tuple[EdgeRef, ...] = ()
    # {dimension: {node_id: max(0, W_ideal - W_actual)}}, strictly positive entries only
    delta_w: Dict[str, Dict[str, float]] = Field(default_factory=dict)

    def delta(self, ref: NodeRef) -> float:
        return self.delta_w.get(ref[0], {}).get(ref[1], 0.0)

    def suppressed_nodes(self) -> Tuple[NodeRef, ...]:
        return tuple(
            (dimension, node_id)
            for dimension in sorted(self.delta_w)
            for node_id in sorted(self.delta_w[dimension])
        )

    @property
    def empty(self) -> bool:
        return not (self.missing_nodes or self.missing_edges or self.delta_w)


class SeverityReport(FrozenModel):
    sigma: float
    node_absence_term: float
    causal_absence_term: float
    weight_suppression_term: float
    sigma_max: float

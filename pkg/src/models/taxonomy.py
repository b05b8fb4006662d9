from typing import Tuple

from pydantic import Field

from .base import EdgeRef, FrozenModel, NodeRef

# eps_dom is the published sparsity threshold; the other three are engine defaults.
DEFAULT_EPS_DOM = 0.15
DEFAULT_EPS_STR = 0.5
DEFAULT_EPS_WT = 0.3
DEFAULT_EPS_ACT = 0.1


class TaxonomyThresholds(FrozenModel):
    eps_dom: float = Field(default=DEFAULT_EPS_DOM, gt=0, lt=1)
    eps_str: float = Field(default=DEFAULT_EPS_STR, gt=0, lt=1)
    eps_wt: float = Field(default=DEFAULT_EPS_WT, gt=0, lt=1)
    eps_act: float = Field(default=DEFAULT_EPS_ACT, gt=0, lt=1)


class TaxonomyReport(FrozenModel):
    type1_dimensions: Tuple[str, ...] = ()
    type2_edges: Tuple[EdgeRef, ...] = ()
    type3_nodes: Tuple[NodeRef, ...] = ()
    type4_nodes: Tuple[NodeRef, ...] = ()
    # actual nodes lacking tau_acquire / tau_optimal / delta_tau_max
    unevaluated: Tuple[NodeRef, ...] = ()

from pydantic import Field

from .base import FrozenModel


class ResilienceInputs(FrozenModel):
    sigma: float
    sigma_max: float
    max_mean_weight: float
    n_dimensions: int
    switch_cost: float
    omega_budget: float
    epsilon: float


class ResilienceReport(FrozenModel):
    res: float = Field(ge=0, le=1)
    completeness: float = Field(ge=0, le=1)
    balance: float = Field(gt=0, le=1)
    # (1 - max_d w + epsilon) before normalization by its perfectly balanced value
    balance_raw: float
    mobility: float = Field(gt=0, le=1)
    inputs: ResilienceInputs

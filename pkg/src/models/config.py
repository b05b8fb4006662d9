"""
Analysis Configuration

Every threshold and constant the analysis pipeline uses, with documented
defaults. eps_dom (0.15), theta_mono (0.85) and eps_mono (0.15) follow the
published framework; the remaining values are engine defaults.

Precedence when resolved by the CLI: flags > --config file > defaults.
"""

from typing import Literal, Union

from pydantic import Field, PositiveFloat, model_validator

from .base import FrozenModel
from .patterns import PatternConfig
from .taxonomy import (
    DEFAULT_EPS_ACT,
    DEFAULT_EPS_DOM,
    DEFAULT_EPS_STR,
    DEFAULT_EPS_WT,
    TaxonomyThresholds,
)

DEFAULT_EPSILON = 1e-3


class AnalysisConfig(FrozenModel):
    # Taxonomy
    eps_dom: float = Field(default=DEFAULT_EPS_DOM, gt=0, lt=1)
    eps_str: float = Field(default=DEFAULT_EPS_STR, gt=0, lt=1)
    eps_wt: float = Field(default=DEFAULT_EPS_WT, gt=0, lt=1)
    eps_act: float = Field(default=DEFAULT_EPS_ACT, gt=0, lt=1)

    # Patterns
    theta_mono: float = Field(default=0.85, gt=0, lt=1)
    eps_mono: float = Field(default=0.15, gt=0, lt=1)
    eps_chain: float = Field(default=0.5, gt=0, lt=1)
    theta_res: float = Field(default=0.5, gt=0, lt=1)
    omega_budget: float = Field(default=10.0, gt=0)
    alpha: float = Field(default=1.0, gt=0)
    beta: float = Field(default=1.0, ge=0)
    gamma: float = Field(default=0.9, gt=0, lt=1)
    max_path_len: int = Field(default=6, ge=1)

    # Resilience
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0)
    sigma_max: Union[Literal["computed"], PositiveFloat] = "computed"

    @model_validator(mode="after")
    def _ordered_mono_thresholds(self):
        if not self.theta_mono > self.eps_mono:
            raise ValueError("theta_mono must exceed eps_mono")
        return self

    def taxonomy(self) -> TaxonomyThresholds:
        return TaxonomyThresholds(
            eps_dom=self.eps_dom,
            eps_str=self.eps_str,
            eps_wt=self.eps_wt,
            eps_act=self.eps_act,
        )

    def patterns(self) -> PatternConfig:
        return PatternConfig(
            theta_mono=self.theta_mono,
            eps_mono=self.eps_mono,
            eps_chain=self.eps_chain,
            theta_res=self.theta_res,
            omega_budget=self.omega_budget,
            alpha=self.alpha,
            beta=self.beta,
            gamma=self.gamma,
            max_path_len=self.max_path_len,
        )

from typing import List, Optional, Tuple

from pydantic import Field, model_validator

from .base import FrozenModel

RNG_NAME = "numpy.random.Philox"


def default_sweep_grid() -> Tuple[int, ...]:
    return (10, 20, 40, 80, 160, 320, 640)


class SimConfig(FrozenModel):
    m_dim: int = Field(default=5, ge=1)
    ds_dim: int = Field(default=50, ge=1)
    n_samples: int = Field(default=200, ge=10)
    n_patterns: int = Field(default=5, ge=1)
    noise_sigma: float = Field(default=0.5, gt=0)
    seeds: Tuple[int, ...] = tuple(range(100))
    eval_size: int = Field(default=200, ge=1)

    # Scenario geometry
    center_scale: float = Field(default=4.0, gt=0)
    diversity_scale: float = Field(default=10.0, ge=0)
    alignment_rate: float = Field(default=0.5, ge=0, le=1)

    # Sample sweep / statistics
    sweep_grid: Tuple[int, ...] = Field(default_factory=default_sweep_grid)
    sweep_target: float = 0.9
    sweep_seeds: int = Field(default=5, ge=1)
    bootstrap_resamples: int = Field(default=2000, ge=100)

    @model_validator(mode="after")
    def _consistent_dimensions(self):
        if self.m_dim > self.ds_dim:
            raise ValueError(f"m_dim ({self.m_dim}) must not exceed ds_dim ({self.ds_dim})")
        if self.n_samples < self.n_patterns:
            raise ValueError("n_samples must be at least n_patterns so every pattern is observed")
        if any(n < self.n_patterns for n in self.sweep_grid):
            raise ValueError("every sweep_grid size must be at least n_patterns")
        return self


class SeedOutcome(FrozenModel):
    seed: int
    u_failure: float
    u_success: float
    gap: float


class SweepPoint(FrozenModel):
    n: int
    u_failure: float
    u_success: float


class SimResult(FrozenModel):
    per_seed: Tuple[SeedOutcome, ...]
    mean_gap: float
    gap_positive_fraction: float = Field(ge=0, le=1)
    bootstrap_half_width: float
    sweep: Tuple[SweepPoint, ...] = ()
    failure_crossing_n: Optional[int] = None
    success_crossing_n: Optional[int] = None
    # failure-agent n / success-agent n; a bound against the largest grid size
    # when the success agent never reaches the target
    sweep_ratio: Optional[float] = None
    sweep_ratio_is_bound: bool = False
    rng: str = RNG_NAME
    config: SimConfig

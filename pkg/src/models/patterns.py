"""
Failure Pattern Schemas

Shock and investment inputs, the pattern thresholds, and the finding each
detector emits. Evidence payloads are pattern specific:

    Mono          dominant_dimension, mean_weights     | max_mean_weight
    WindowClosure nodes [{node, cost}], tau_now        | max_cost (when any Type IV node)
    ChainBreak    broken_paths [{dimension, nodes,
                  criticality, first_missing}]         | {}
    Resonance     gamma, overlap_fraction,
                  overlapping_nodes                    | overlap_fraction
    LockIn        switch_cost                          | switch_cost

(left: fired, right: not fired)
"""

from enum import Enum
from typing import Any, Dict, Tuple

from pydantic import Field, model_validator

from .base import EdgeRef, FrozenModel, NodeRef


class Shock(FrozenModel):
    magnitude: float = Field(ge=0)
    domain_nodes: Tuple[NodeRef, ...] = ()
    stage: int = Field(default=0, ge=0)


class InvestmentEntry(FrozenModel):
    stage: int = Field(ge=0)
    dimension: str
    amount: float = Field(ge=0)


class InvestmentHistory(FrozenModel):
    entries: Tuple[InvestmentEntry, ...] = ()

    @model_validator(mode="after")
    def _unique_cells(self):
        seen = set()
        for entry in self.entries:
            cell = (entry.stage, entry.dimension)
            if cell in seen:
                raise ValueError(f"duplicate investment for stage {entry.stage}, dimension {entry.dimension}")
            seen.add(cell)
        return self

    def amount(self, stage: int, dimension: str) -> float:
        for entry in self.entries:
            if entry.stage == stage and entry.dimension == dimension:
                return entry.amount
        return 0.0

    def max_stage(self) -> int:
        return max((entry.stage for entry in self.entries), default=0)


class PatternConfig(FrozenModel):
    theta_mono: float = Field(default=0.85, gt=0, lt=1)
    eps_mono: float = Field(default=0.15, gt=0, lt=1)
    eps_chain: float = Field(default=0.5, gt=0, lt=1)
    theta_res: float = Field(default=0.5, gt=0, lt=1)
    omega_budget: float = Field(default=10.0, gt=0)
    alpha: float = Field(default=1.0, gt=0)
    beta: float = Field(default=1.0, ge=0)
    gamma: float = Field(default=0.9, gt=0, lt=1)
    max_path_len: int = Field(default=6, ge=1)

    @model_validator(mode="after")
    def _ordered_mono_thresholds(self):
        if not self.theta_mono > self.eps_mono:
            raise ValueError("theta_mono must exceed eps_mono")
        return self


class PatternName(str, Enum):
    MONO = "Mono"
    WINDOW_CLOSURE = "WindowClosure"
    CHAIN_BREAK = "ChainBreak"
    RESONANCE = "Resonance"
    LOCK_IN = "LockIn"


class PatternFinding(FrozenModel):
    pattern: PatternName
    fired: bool
    evidence: Dict[str, Any] = Field(default_factory=dict)


class CriticalPath(FrozenModel):
    dimension: str
    nodes: Tuple[str, ...]
    criticality: float

    @property
    def edges(self) -> Tuple[EdgeRef, ...]:
        return tuple(
            (self.dimension, source, target)
            for source, target in zip(self.nodes, self.nodes[1:])
        )

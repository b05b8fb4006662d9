"""
Historical Failure Case Model and Pydantic Schema

This module defines:
- The Pydantic schemas for case files (`{"cases": [...]}`) and node metadata
  override files (`{"nodes": [...]}`).
- The SQLAlchemy ORM model persisting case records in the optional case store.

A case trajectory is the ordered list of edges a failure propagated through;
consecutive steps within the same dimension must form a connected walk.
"""

from datetime import datetime, timezone
from typing import Dict, Optional, Tuple

from pydantic import ConfigDict, Field, model_validator
from sqlalchemy import Column, DateTime, Float, String, Text

from .base import Base, EdgeRef, FrozenModel
from .patterns import PatternName, Shock

# datetime.UTC (an alias of timezone.utc) only exists on Python 3.11+.
UTC = timezone.utc


class CaseRow(Base):
    """
    SQLAlchemy ORM model holding one case record; `payload` is the record's JSON.
    """

    __tablename__ = "blindspot_case"

    id = Column(String(200), primary_key=True)
    stage_label = Column(String(100), nullable=False, index=True)
    pattern_label = Column(String(30), nullable=True)
    outcome_severity = Column(Float, nullable=False)
    payload = Column(Text, nullable=False)

    create_date = Column(DateTime, default=lambda: datetime.now(UTC))

    def __repr__(self):
        return (
            f"<CaseRow(id={self.id}, stage_label={self.stage_label}, "
            f"pattern_label={self.pattern_label})>"
        )


# ---------- Pydantic Schemas ----------

class TrajectoryStep(FrozenModel):
    dimension: str
    source: str
    target: str

    @property
    def ref(self) -> EdgeRef:
        return (self.dimension, self.source, self.target)


class CaseRecord(FrozenModel):
    id: str
    background: Dict[str, float] = Field(default_factory=dict)
    stage_label: str
    trajectory: Tuple[TrajectoryStep, ...]
    shock: Optional[Shock] = None
    outcome_severity: float = Field(ge=0)
    pattern_label: Optional[PatternName] = None

    @model_validator(mode="after")
    def _connected_trajectory(self):
        if not self.trajectory:
            raise ValueError(f"case {self.id}: trajectory is empty")
        for previous, step in zip(self.trajectory, self.trajectory[1:]):
            if step.dimension == previous.dimension and step.source != previous.target:
                raise ValueError(
                    f"case {self.id}: step {step.source}->{step.target} does not continue "
                    f"from {previous.source}->{previous.target} in dimension {step.dimension}"
                )
        return self


class CaseFile(FrozenModel):
    cases: Tuple[CaseRecord, ...] = ()


class NodeMetadata(FrozenModel):
    """Per-node attributes that cannot be estimated from trajectories."""

    dimension: str
    id: str
    phi: Optional[float] = Field(default=None, ge=0, le=1)
    tau_optimal: Optional[float] = Field(default=None, ge=0)
    delta_tau_max: Optional[float] = Field(default=None, ge=0)
    c0: Optional[float] = Field(default=None, gt=0)
    lambda_: Optional[float] = Field(default=None, gt=0, alias="lambda")
    transferability: Optional[float] = Field(default=None, ge=0, le=1)

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True, serialize_by_alias=True)


class NodeMetadataFile(FrozenModel):
    nodes: Tuple[NodeMetadata, ...] = ()


class CoverageCell(FrozenModel):
    stage_label: str
    pattern_label: Optional[PatternName] = None
    count: int


class IngestSummary(FrozenModel):
    case_count: int
    edge_count: int
    coverage: Tuple[CoverageCell, ...] = ()
    stored: bool = False


class RhoEntry(FrozenModel):
    dimension: str
    source: str
    target: str
    rho: float

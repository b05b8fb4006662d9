from typing import Optional, Tuple

from pydantic import Field

from .base import FrozenModel
from .blindspot import BlindSpot, SeverityReport
from .config import AnalysisConfig
from .ontology import Ontology
from .patterns import InvestmentHistory, PatternFinding, Shock
from .resilience import ResilienceReport
from .taxonomy import TaxonomyReport


class VersionInfo(FrozenModel):
    engine: str
    schema_version: str = Field(alias="schema")


class CombinedReport(FrozenModel):
    config: AnalysisConfig
    blind_spot: BlindSpot
    severity: SeverityReport
    taxonomy: TaxonomyReport
    findings: Tuple[PatternFinding, ...]
    resilience: ResilienceReport
    dominant_dimension: str
    switch_cost: float
    tau_now: Optional[float] = None


class StageInput(FrozenModel):
    ideal: Ontology
    actual: Ontology
    tau_now: Optional[float] = None
    shock: Optional[Shock] = None


class TrajectoryInput(FrozenModel):
    stages: Tuple[StageInput, ...]
    investments: Optional[InvestmentHistory] = None


class StageAssessment(FrozenModel):
    stage: int
    stage_label: str
    sigma: float
    sigma_max: float
    res: float
    fired_patterns: Tuple[str, ...] = ()
    res_change: Optional[float] = None


class TrajectoryReport(FrozenModel):
    config: AnalysisConfig
    stages: Tuple[StageAssessment, ...]
    declining_stages: Tuple[int, ...] = ()

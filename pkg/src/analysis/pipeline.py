"""
Report Pipeline

diff -> severity -> classify -> patterns -> resilience, for one stage or for
an individual's sequence of stages.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from analysis.blindspot_diff import diff, severity
from analysis.failure_patterns import (
    detect_chain_break,
    detect_lockin,
    detect_mono,
    detect_resonance,
    detect_window_closure,
    dominant_dimension,
    switch_cost,
)
from analysis.ontology_core import populated_dimensions
from analysis.resilience import resilience
from analysis.taxonomy import classify
from framework.errors import DomainError
from models.blindspot import BlindSpot
from models.config import AnalysisConfig
from models.ontology import Ontology
from models.patterns import InvestmentHistory, PatternFinding, PatternName, Shock
from models.report import CombinedReport, StageAssessment, StageInput, TrajectoryReport

logger = logging.getLogger(__name__)

TAU_NOW_FEATURE = "age"


def resolve_tau_now(actual: Ontology, tau_now: Optional[float]) -> Optional[float]:
    if tau_now is not None:
        return tau_now
    return actual.background.get(TAU_NOW_FEATURE)


def detect_patterns(
    ideal: Ontology,
    actual: Ontology,
    bs: BlindSpot,
    sigma: float,
    cfg: AnalysisConfig,
    shock: Optional[Shock] = None,
    investments: Optional[InvestmentHistory] = None,
    tau_now: Optional[float] = None,
) -> Tuple[List[PatternFinding], str, float]:
    """
    Evaluate all five patterns.

    Window closure and resonance are reported unfired with empty evidence when
    no time or no shock is available.

    Returns:
        (findings, dominant dimension, switch cost out of it)
    """
    patterns = cfg.patterns()
    thresholds = cfg.taxonomy()

    findings = [detect_mono(actual, patterns)]

    if tau_now is None:
        findings.append(PatternFinding(pattern=PatternName.WINDOW_CLOSURE, fired=False))
    else:
        findings.append(detect_window_closure(actual, tau_now, patterns))

    findings.append(detect_chain_break(ideal, actual, patterns))

    if shock is None:
        findings.append(PatternFinding(pattern=PatternName.RESONANCE, fired=False))
    else:
        findings.append(detect_resonance(shock, bs, ideal, sigma, patterns, thresholds))

    dominant = dominant_dimension(actual)
    cost = switch_cost(investments or InvestmentHistory(), actual, dominant, actual.stage, patterns)
    findings.append(detect_lockin(cost, patterns))
    return findings, dominant, cost


def assess(
    ideal: Ontology,
    actual: Ontology,
    cfg: AnalysisConfig,
    shock: Optional[Shock] = None,
    investments: Optional[InvestmentHistory] = None,
    tau_now: Optional[float] = None,
) -> CombinedReport:
    """
    Full single-stage assessment.

    `tau_now` falls back to the actual ontology's "age" background feature.
    """
    bs = diff(ideal, actual)
    sev = severity(bs, ideal)
    sigma_max = sev.sigma_max if cfg.sigma_max == "computed" else cfg.sigma_max
    taxonomy = classify(ideal, actual, cfg.taxonomy())

    tau_now = resolve_tau_now(actual, tau_now)
    findings, dominant, cost = detect_patterns(ideal, actual, bs, sev.sigma, cfg, shock, investments, tau_now)
    res = resilience(sev.sigma, sigma_max, actual, cost, cfg.omega_budget, cfg.epsilon, populated_dimensions(ideal))

    logger.info({
        "event": "Assessed",
        "individual": actual.individual,
        "stage": actual.stage,
        "sigma": sev.sigma,
        "res": res.res,
        "fired": [f.pattern.value for f in findings if f.fired],
    })
    return CombinedReport(
        config=cfg,
        blind_spot=bs,
        severity=sev,
        taxonomy=taxonomy,
        findings=tuple(findings),
        resilience=res,
        dominant_dimension=dominant,
        switch_cost=cost,
        tau_now=tau_now,
    )


def _history_until(investments: Optional[InvestmentHistory], stage: int) -> InvestmentHistory:
    if investments is None:
        return InvestmentHistory()
    return InvestmentHistory(entries=tuple(e for e in investments.entries if e.stage <= stage))


def assess_trajectory(
    stages: Sequence[StageInput],
    cfg: AnalysisConfig,
    investments: Optional[InvestmentHistory] = None,
) -> TrajectoryReport:
    """
    Assess every life stage of one individual and track how resilience moves.

    Investments recorded after a stage are not charged to it.

    Raises:
        DomainError: if two inputs share a stage index.
    """
    seen = set()
    for item in stages:
        if item.actual.stage in seen:
            raise DomainError(f"stage {item.actual.stage} appears more than once")
        seen.add(item.actual.stage)

    assessments: List[StageAssessment] = []
    previous_res: Optional[float] = None
    for item in sorted(stages, key=lambda s: s.actual.stage):
        report = assess(
            item.ideal,
            item.actual,
            cfg,
            shock=item.shock,
            investments=_history_until(investments, item.actual.stage),
            tau_now=item.tau_now,
        )
        res = report.resilience.res
        assessments.append(StageAssessment(
            stage=item.actual.stage,
            stage_label=item.actual.stage_label,
            sigma=report.severity.sigma,
            sigma_max=report.resilience.inputs.sigma_max,
            res=res,
            fired_patterns=tuple(f.pattern.value for f in report.findings if f.fired),
            res_change=None if previous_res is None else res - previous_res,
        ))
        previous_res = res

    return TrajectoryReport(
        config=cfg,
        stages=tuple(assessments),
        declining_stages=tuple(a.stage for a in assessments if a.res_change is not None and a.res_change < 0),
    )

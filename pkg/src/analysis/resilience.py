"""
Ontological resilience: completeness x dimensional balance x mobility.

The balance factor is divided by its value at perfect balance, so an
ontology with uniform dimension means, no blind spot and no switch cost
scores exactly 1.
"""

from typing import Iterable

from analysis.ontology_core import mean_weights
from framework.errors import DomainError
from models.ontology import DimensionId, Ontology
from models.resilience import ResilienceInputs, ResilienceReport

SIGMA_TOLERANCE = 1e-12


def resilience_from_components(
    sigma: float,
    sigma_max: float,
    max_mean_weight: float,
    n_dimensions: int,
    switch_cost: float,
    omega_budget: float,
    epsilon: float,
) -> ResilienceReport:
    """
    Closed-form resilience.

    Raises:
        DomainError: naming the violated bound.
    """
    if sigma_max <= 0:
        raise DomainError(f"sigma_max must be > 0, got {sigma_max}")
    if sigma < 0 or sigma > sigma_max + SIGMA_TOLERANCE:
        raise DomainError(f"sigma must lie in [0, sigma_max={sigma_max}], got {sigma}")
    if omega_budget <= 0:
        raise DomainError(f"omega_budget must be > 0, got {omega_budget}")
    if epsilon <= 0:
        raise DomainError(f"epsilon must be > 0, got {epsilon}")
    if n_dimensions < 1:
        raise DomainError("actual ontology needs at least one dimension with nodes")
    if not 0.0 <= max_mean_weight <= 1.0:
        raise DomainError(f"max mean dimension weight must lie in [0, 1], got {max_mean_weight}")

    completeness = max(0.0, 1.0 - sigma / sigma_max)
    balance_raw = 1.0 - max_mean_weight + epsilon
    balance = min(1.0, balance_raw / (1.0 - 1.0 / n_dimensions + epsilon))
    mobility = 1.0 / (1.0 + max(0.0, switch_cost) / omega_budget)

    return ResilienceReport(
        res=completeness * balance * mobility,
        completeness=completeness,
        balance=balance,
        balance_raw=balance_raw,
        mobility=mobility,
        inputs=ResilienceInputs(
            sigma=sigma,
            sigma_max=sigma_max,
            max_mean_weight=max_mean_weight,
            n_dimensions=n_dimensions,
            switch_cost=switch_cost,
            omega_budget=omega_budget,
            epsilon=epsilon,
        ),
    )


def resilience(
    sigma: float,
    sigma_max: float,
    actual: Ontology,
    switch_cost: float,
    omega_budget: float,
    epsilon: float,
    dimensions: Iterable[DimensionId] = (),
) -> ResilienceReport:
    """
    Resilience of `actual`.

    D is the actual's populated dimensions plus `dimensions` (normally the
    ideal's); a dimension the actual lacks counts with mean weight 0.
    """
    means = mean_weights(actual)
    if not means:
        raise DomainError("actual ontology needs at least one dimension with nodes")
    return resilience_from_components(
        sigma=sigma,
        sigma_max=sigma_max,
        max_mean_weight=max(means.values()),
        n_dimensions=len(set(means) | set(dimensions)),
        switch_cost=switch_cost,
        omega_budget=omega_budget,
        epsilon=epsilon,
    )

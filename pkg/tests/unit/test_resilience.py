import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from analysis.resilience import resilience, resilience_from_components
from framework.errors import DomainError

from tests.builders import node, ontology

DEFAULTS = dict(
    sigma=0.95,
    sigma_max=1.9,
    max_mean_weight=0.9,
    n_dimensions=4,
    switch_cost=10.0,
    omega_budget=10.0,
    epsilon=0.01,
)


def components(**overrides):
    return resilience_from_components(**{**DEFAULTS, **overrides})


def test_balanced_ontology_without_blind_spot_scores_one(balanced):
    report = resilience(0.0, 1.0, balanced, 0.0, 10.0, 1e-3)

    assert report.completeness == 1.0
    assert report.balance == 1.0
    assert report.mobility == 1.0
    assert report.res == 1.0


def test_full_severity_scores_zero(balanced):
    report = resilience(1.9, 1.9, balanced, 0.0, 10.0, 1e-3)

    assert report.completeness == 0.0
    assert report.res == 0.0


def test_hand_evaluated_example():
    report = components()

    assert report.completeness == pytest.approx(0.5)
    assert report.balance == pytest.approx(0.11 / 0.76)
    assert report.balance_raw == pytest.approx(0.11)
    assert report.mobility == pytest.approx(0.5)
    assert report.res == pytest.approx(0.0362, abs=1e-4)
    assert report.res == pytest.approx(report.completeness * report.balance * report.mobility, abs=1e-12)


def test_report_carries_inputs():
    report = components()
    assert report.inputs.model_dump() == DEFAULTS


def test_negative_switch_cost_is_clamped():
    assert components(switch_cost=-25.0).mobility == 1.0


def test_balance_never_exceeds_one():
    # a single populated dimension with mean below 1 would otherwise push balance above 1
    assert components(max_mean_weight=0.5, n_dimensions=1).balance == 1.0


@pytest.mark.parametrize(
    "overrides, bound",
    [
        (dict(sigma=-0.1), "sigma"),
        (dict(sigma=2.0), "sigma"),
        (dict(sigma_max=0.0, sigma=0.0), "sigma_max"),
        (dict(omega_budget=0.0), "omega_budget"),
        (dict(epsilon=0.0), "epsilon"),
        (dict(n_dimensions=0), "dimension"),
        (dict(max_mean_weight=1.5), "max mean"),
    ],
)
def test_domain_errors_name_the_bound(overrides, bound):
    with pytest.raises(DomainError) as exc:
        components(**overrides)

    assert bound in exc.value.detail


def test_empty_actual_is_a_domain_error():
    with pytest.raises(DomainError):
        resilience(0.0, 1.0, ontology({"prof": ([], [])}), 0.0, 10.0, 1e-3)


def test_resilience_reads_mean_weights_from_the_actual():
    actual = ontology({
        "prof": ([node("a", 0.9), node("b", 0.9)], []),
        "health": ([node("c", 0.1), node("d", 0.1)], []),
    })

    report = resilience(0.0, 1.0, actual, 0.0, 10.0, 0.01)

    assert report.inputs.max_mean_weight == pytest.approx(0.9)
    assert report.inputs.n_dimensions == 2
    assert report.balance == pytest.approx(0.11 / 0.51)


def test_dimensions_missing_from_the_actual_still_count(balanced):
    mono = ontology({"prof": ([node("career", 1.0)], [])})

    report = resilience(0.5, 1.0, mono, 0.0, 10.0, 1e-3, dimensions=sorted(balanced.dimensions))

    assert report.inputs.n_dimensions == 4
    assert report.balance_raw == pytest.approx(1e-3)
    assert report.balance == pytest.approx(1e-3 / (0.75 + 1e-3))
    assert report.res < resilience(0.5, 1.0, balanced, 0.0, 10.0, 1e-3).res


def test_extra_actual_dimensions_are_not_double_counted(balanced):
    report = resilience(0.0, 1.0, balanced, 0.0, 10.0, 1e-3, dimensions=["prof", "health"])

    assert report.inputs.n_dimensions == 4
    assert report.res == 1.0


def strictly_decreasing(values):
    return all(a > b for a, b in zip(values, values[1:]))


def test_res_decreases_with_severity():
    sweep = [components(sigma=s).res for s in np.linspace(0.0, 1.9, 50)]
    assert strictly_decreasing(sweep)


def test_res_decreases_with_dominant_weight():
    sweep = [components(max_mean_weight=w).res for w in np.linspace(0.3, 1.0, 50)]
    assert strictly_decreasing(sweep)


def test_res_decreases_with_switch_cost():
    sweep = [components(switch_cost=c).res for c in np.linspace(0.1, 100.0, 50)]
    assert strictly_decreasing(sweep)


@settings(max_examples=300, deadline=None)
@given(
    st.floats(min_value=0.01, max_value=100.0),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
    st.integers(1, 8),
    st.floats(min_value=-100.0, max_value=1000.0),
    st.floats(min_value=0.01, max_value=100.0),
    st.floats(min_value=1e-6, max_value=0.5),
)
def test_factors_stay_in_range(sigma_max, fraction, max_mean_weight, n, switch_cost, omega, epsilon):
    report = resilience_from_components(
        sigma=fraction * sigma_max,
        sigma_max=sigma_max,
        max_mean_weight=max_mean_weight,
        n_dimensions=n,
        switch_cost=switch_cost,
        omega_budget=omega,
        epsilon=epsilon,
    )

    assert 0.0 <= report.res <= 1.0
    assert 0.0 < report.balance <= 1.0
    assert 0.0 < report.mobility <= 1.0
    assert report.res == pytest.approx(report.completeness * report.balance * report.mobility, abs=1e-12)

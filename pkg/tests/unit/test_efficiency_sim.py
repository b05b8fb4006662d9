import csv

import numpy as np
import pytest

from analysis.efficiency_sim import (
    bootstrap_half_width,
    efficiency_experiment,
    make_rng,
    nearest_centroid_predict,
    nearest_neighbor_predict,
    run_trial,
    write_sweep_csv,
)
from framework.errors import ConfigError
from models.simulation import RNG_NAME, SimConfig

QUICK = dict(n_samples=40, eval_size=50, seeds=(0, 1, 2), sweep_grid=(), bootstrap_resamples=200)

# Nearest-centroid edge over 1-NN on identical data at noise_sigma <= center_scale / 4
NULL_LEARNER_MARGIN = 0.01


def test_philox_streams_are_reproducible():
    assert np.array_equal(make_rng(42).random(5), make_rng(42).random(5))
    assert not np.array_equal(make_rng(42).random(5), make_rng(43).random(5))


def test_nearest_centroid_and_neighbor():
    X = np.array([[0.0, 0.0], [0.0, 2.0], [10.0, 0.0], [10.0, 2.0]])
    y = np.array([0, 0, 1, 1])
    points = np.array([[1.0, 1.0], [9.0, 1.0], [6.0, 2.0]])

    assert nearest_centroid_predict(X, y, points).tolist() == [0, 1, 1]
    assert nearest_neighbor_predict(X, y, points).tolist() == [0, 1, 1]


def test_run_trial_is_deterministic():
    cfg = SimConfig(**QUICK)
    assert run_trial(cfg, 7) == run_trial(cfg, 7)


def test_noiseless_failure_agent_is_perfect():
    cfg = SimConfig(n_patterns=10, n_samples=10, noise_sigma=1e-9, sweep_grid=())

    u_failure, _ = run_trial(cfg, 3)

    assert u_failure == 1.0


def test_single_seed():
    result = efficiency_experiment(SimConfig(**{**QUICK, "seeds": (11,)}))

    assert len(result.per_seed) == 1
    outcome = result.per_seed[0]
    assert outcome.gap == outcome.u_failure - outcome.u_success
    assert result.mean_gap == outcome.gap
    assert result.bootstrap_half_width == 0.0
    assert result.rng == RNG_NAME


def test_experiment_is_deterministic():
    cfg = SimConfig(**{**QUICK, "sweep_grid": (10, 20), "sweep_seeds": 2})
    assert efficiency_experiment(cfg) == efficiency_experiment(cfg)


def test_invalid_config_is_a_config_error():
    with pytest.raises(ConfigError):
        run_trial(SimConfig.model_construct(m_dim=60, ds_dim=50), 0)
    with pytest.raises(ConfigError):
        efficiency_experiment(SimConfig(**{**QUICK, "seeds": ()}))


def test_bootstrap_half_width():
    assert bootstrap_half_width([1.0]) == 0.0
    assert bootstrap_half_width([0.5] * 20) == 0.0
    assert bootstrap_half_width([0.0, 1.0] * 10) > 0.0


def test_sweep_csv(tmp_path):
    cfg = SimConfig(**{**QUICK, "sweep_grid": (10, 20), "sweep_seeds": 1})
    result = efficiency_experiment(cfg)
    path = tmp_path / "sweep.csv"

    write_sweep_csv(result, str(path))

    rows = list(csv.reader(path.open()))
    assert rows[0] == ["n", "u_failure", "u_success"]
    assert [int(row[0]) for row in rows[1:]] == [10, 20]
    assert float(rows[1][1]) == result.sweep[0].u_failure


@pytest.mark.slow
def test_failure_agent_wins_on_low_dimensional_patterns():
    result = efficiency_experiment(SimConfig(m_dim=5, ds_dim=50, n_samples=200))

    assert result.mean_gap > 0
    assert result.gap_positive_fraction >= 0.95


@pytest.mark.slow
def test_failure_agent_needs_fewer_samples():
    result = efficiency_experiment(SimConfig(seeds=tuple(range(5))))

    assert result.failure_crossing_n is not None
    assert result.sweep_ratio < 1


@pytest.mark.slow
def test_no_advantage_without_a_complement():
    # noise 1.0 puts errors in both agents; the residual gap is the
    # centroid-vs-instance learner difference, bounded by NULL_LEARNER_MARGIN
    null = efficiency_experiment(SimConfig(m_dim=5, ds_dim=5, noise_sigma=1.0, sweep_grid=()))
    diverse = efficiency_experiment(SimConfig(m_dim=5, ds_dim=50, noise_sigma=1.0, sweep_grid=()))

    assert np.mean([s.u_failure for s in null.per_seed]) < 1.0
    assert np.mean([s.u_success for s in null.per_seed]) < 1.0
    assert abs(null.mean_gap) <= null.bootstrap_half_width + NULL_LEARNER_MARGIN
    assert abs(null.mean_gap) < 0.1 * diverse.mean_gap


@pytest.mark.slow
def test_advantage_shrinks_as_patterns_fill_the_space():
    fractions = [
        efficiency_experiment(
            SimConfig(m_dim=5, ds_dim=ds, seeds=tuple(range(30)), sweep_grid=())
        ).gap_positive_fraction
        for ds in (50, 20, 5)
    ]

    assert fractions == sorted(fractions, reverse=True)

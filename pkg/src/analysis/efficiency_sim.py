"""
Failure Learning Efficiency Simulation

Synthetic check of the claim that an agent trained on convergent failure
patterns avoids shocks better than one imitating diverse success
trajectories at equal sample size.

Per trial (seed):
    1. Draw an orthonormal basis of the ds_dim ambient space; the first m_dim
       columns span the failure-pattern subspace, the rest its complement.
    2. Place n_patterns well-separated cluster centres in the subspace.
    3. Failure samples are noisy cluster members. Success samples are the
       same members spread uniformly over the complement (diversity).
    4. The failure agent is a nearest-centroid classifier, the success agent a
       1-nearest-neighbour imitator. Both label held-out shocked scenarios;
       a correct label earns reward 1, a wrong one reward 0 and a penalty
       equal to the scenario's shock alignment.
    5. Utility = mean reward - mean penalty.

With m_dim == ds_dim there is no complement, yet a small gap remains at
high noise_sigma: nearest-centroid averages noise out, 1-NN does not.

Every stream comes from numpy's Philox counter-based generator keyed by the
seed, so a (config, seed) pair is bit-reproducible.
"""

import csv
import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from framework.errors import ConfigError
from models.simulation import RNG_NAME, SeedOutcome, SimConfig, SimResult, SweepPoint

logger = logging.getLogger(__name__)

CENTER_PLACEMENT_TRIES = 100
BOOTSTRAP_SEED = 0


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def _check(cfg: SimConfig) -> SimConfig:
    try:
        return SimConfig.model_validate(cfg.model_dump())
    except ValidationError as e:
        raise ConfigError(f"invalid simulation config: {e.errors()[0]['msg']}")


def _place_centers(rng: np.random.Generator, cfg: SimConfig) -> np.ndarray:
    """Cluster centres in subspace coordinates, pairwise at least center_scale apart when achievable."""
    best, best_gap = None, -1.0
    for _ in range(CENTER_PLACEMENT_TRIES):
        centers = rng.normal(0.0, cfg.center_scale, size=(cfg.n_patterns, cfg.m_dim))
        if cfg.n_patterns < 2:
            return centers
        diffs = centers[:, None, :] - centers[None, :, :]
        distances = np.sqrt((diffs ** 2).sum(axis=-1))
        gap = distances[np.triu_indices(cfg.n_patterns, k=1)].min()
        if gap > best_gap:
            best, best_gap = centers, gap
        if gap >= cfg.center_scale:
            break
    return best


def _squared_distances(points: np.ndarray, prototypes: np.ndarray) -> np.ndarray:
    # ||a - b||^2 = ||a||^2 + ||b||^2 - 2 a.b
    return (
        np.sum(points ** 2, axis=1, keepdims=True)
        + np.sum(prototypes ** 2, axis=1)
        - 2.0 * points @ prototypes.T
    )


def nearest_centroid_predict(X: np.ndarray, y: np.ndarray, points: np.ndarray) -> np.ndarray:
    classes = np.unique(y)
    centroids = np.stack([X[y == c].mean(axis=0) for c in classes])
    return classes[np.argmin(_squared_distances(points, centroids), axis=1)]


def nearest_neighbor_predict(X: np.ndarray, y: np.ndarray, points: np.ndarray) -> np.ndarray:
    return y[np.argmin(_squared_distances(points, X), axis=1)]


def _utility(predicted: np.ndarray, truth: np.ndarray, aligned: np.ndarray) -> float:
    correct = predicted == truth
    reward = correct.astype(float)
    penalty = np.where(correct, 0.0, aligned)
    return float(reward.mean() - penalty.mean())


def run_trial(cfg: SimConfig, seed: int) -> Tuple[float, float]:
    """
    One seeded trial of the protocol.

    Returns:
        (u_failure, u_success)

    Raises:
        ConfigError: if `cfg` violates its invariants.
    """
    cfg = _check(cfg)
    rng = make_rng(seed)
    m, ds, n = cfg.m_dim, cfg.ds_dim, cfg.n_samples

    basis, _ = np.linalg.qr(rng.standard_normal((ds, ds)))
    subspace, complement = basis[:, :m], basis[:, m:]
    centers = _place_centers(rng, cfg) @ subspace.T

    labels = np.arange(n) % cfg.n_patterns
    failure_X = centers[labels] + (cfg.noise_sigma * rng.standard_normal((n, m))) @ subspace.T
    success_X = (
        centers[labels]
        + (cfg.noise_sigma * rng.standard_normal((n, m))) @ subspace.T
        + rng.uniform(-cfg.diversity_scale, cfg.diversity_scale, size=(n, ds - m)) @ complement.T
    )

    truth = rng.integers(0, cfg.n_patterns, size=cfg.eval_size)
    aligned = (rng.random(cfg.eval_size) < cfg.alignment_rate).astype(float)
    scenarios = (
        centers[truth]
        + (cfg.noise_sigma * rng.standard_normal((cfg.eval_size, m))) @ subspace.T
        + rng.uniform(-cfg.diversity_scale, cfg.diversity_scale, size=(cfg.eval_size, ds - m)) @ complement.T
    )

    u_failure = _utility(nearest_centroid_predict(failure_X, labels, scenarios), truth, aligned)
    u_success = _utility(nearest_neighbor_predict(success_X, labels, scenarios), truth, aligned)
    return u_failure, u_success


def bootstrap_half_width(values: List[float], resamples: int = 2000) -> float:
    """Half the width of the 95% percentile bootstrap interval of the mean."""
    data = np.asarray(values, dtype=float)
    if data.size < 2:
        return 0.0
    rng = make_rng(BOOTSTRAP_SEED)
    means = data[rng.integers(0, data.size, size=(resamples, data.size))].mean(axis=1)
    low, high = np.percentile(means, [2.5, 97.5])
    return float((high - low) / 2.0)


def _crossing(points: List[SweepPoint], attribute: str, target: float) -> Optional[int]:
    for point in points:
        if getattr(point, attribute) >= target:
            return point.n
    return None


def sample_sweep(cfg: SimConfig) -> Tuple[SweepPoint, ...]:
    """Mean utilities over the first sweep_seeds seeds at every grid sample size."""
    seeds = cfg.seeds[: cfg.sweep_seeds]
    points = []
    for n in sorted(cfg.sweep_grid):
        sized = cfg.model_copy(update={"n_samples": n})
        outcomes = [run_trial(sized, seed) for seed in seeds]
        points.append(SweepPoint(
            n=n,
            u_failure=math.fsum(u for u, _ in outcomes) / len(outcomes),
            u_success=math.fsum(u for _, u in outcomes) / len(outcomes),
        ))
    return tuple(points)


def efficiency_experiment(cfg: SimConfig) -> SimResult:
    """
    Run every seed, aggregate the utility gap and sweep the sample size.

    Raises:
        ConfigError: if no seed is configured or the config is invalid.
    """
    cfg = _check(cfg)
    if not cfg.seeds:
        raise ConfigError("at least one seed is required")

    per_seed = []
    for seed in sorted(cfg.seeds):
        u_failure, u_success = run_trial(cfg, seed)
        per_seed.append(SeedOutcome(seed=seed, u_failure=u_failure, u_success=u_success, gap=u_failure - u_success))

    gaps = [outcome.gap for outcome in per_seed]
    sweep = sample_sweep(cfg) if cfg.sweep_grid else ()
    failure_n = _crossing(list(sweep), "u_failure", cfg.sweep_target)
    success_n = _crossing(list(sweep), "u_success", cfg.sweep_target)

    ratio, is_bound = None, False
    if failure_n is not None and success_n is not None:
        ratio = failure_n / success_n
    elif failure_n is not None:
        # success agent never reached the target on the grid
        ratio, is_bound = failure_n / max(cfg.sweep_grid), True

    result = SimResult(
        per_seed=tuple(per_seed),
        mean_gap=math.fsum(gaps) / len(gaps),
        gap_positive_fraction=sum(1 for gap in gaps if gap > 0) / len(gaps),
        bootstrap_half_width=bootstrap_half_width(gaps, cfg.bootstrap_resamples),
        sweep=sweep,
        failure_crossing_n=failure_n,
        success_crossing_n=success_n,
        sweep_ratio=ratio,
        sweep_ratio_is_bound=is_bound,
        rng=RNG_NAME,
        config=cfg,
    )
    logger.info({
        "event": "EfficiencyExperiment",
        "seeds": len(per_seed),
        "mean_gap": result.mean_gap,
        "gap_positive_fraction": result.gap_positive_fraction,
        "sweep_ratio": ratio,
    })
    return result


def write_sweep_csv(result: SimResult, path: str) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["n", "u_failure", "u_success"])
        for point in result.sweep:
            writer.writerow([point.n, repr(point.u_failure), repr(point.u_success)])

"""Benchmark harness: seeded sweeps behind the CLI's report commands.

Every sweep derives one RNG stream per (grid cell, trial) pair, so
results are reproducible bit for bit and independent of how many worker
threads run the trials.  Rows are emitted in deterministic (cell, trial)
order regardless of completion order.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from .angles import acute_angle_scores, normalize_columns
from .cop import cop_recover
from .detector import detect
from .errors import EmptyInlierSetError
from .recovery import log_recovery_error, recover_basis
from .synth import LabeledDataset, SynthSpec, assemble_dataset, stream_rng

VALIDATE_BOUND_COLUMNS = (
    "gamma",
    "snr_db",
    "trial",
    "q_outlier_min",
    "q_inlier_max",
    "zeta",
    "bound_holds",
    "mean_q_inlier_max",
)

PHASE_INLIERS_COLUMNS = (
    "n",
    "N",
    "r",
    "ratio",
    "n_inliers",
    "n_outliers",
    "trials",
    "inlier_recovery_pct",
)

PHASE_SUBSPACE_COLUMNS = (
    "n",
    "r",
    "n_inliers",
    "n_outliers",
    "trials",
    "recovery_pct",
)

COMPARE_COLUMNS = (
    "algorithm",
    "n",
    "r",
    "n_inliers",
    "n_outliers",
    "gamma",
    "n_s",
    "norm",
    "trial",
    "lre",
    "runtime_seconds",
    "kept_true_inliers",
    "kept_outliers",
)

# LRE below which a trial counts as an exact subspace recovery.
RECOVERY_LRE_CUTOFF = -5.0


def worker_count() -> int:
    """Worker cap for sweep trials; ROMA_THREADS overrides hardware count."""
    env = os.environ.get("ROMA_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_trials(fn: Callable[[int], object], trials: int) -> list:
    """Run ``fn(0..trials-1)``, preserving index order in the result."""
    workers = worker_count()
    if workers == 1 or trials == 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=min(workers, trials)) as pool:
        return list(pool.map(fn, range(trials)))


def _check_grid(name: str, values: Sequence) -> list:
    values = list(values)
    if not values:
        raise ValueError(f"{name} grid must be non-empty")
    return values


def _check_trials(trials: int) -> int:
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    return int(trials)


def half_up_inlier_count(N: int, gamma: float) -> int:
    return int(math.floor((1.0 - gamma) * N + 0.5))


def cells_from_gammas(N: int, gammas: Sequence[float]) -> list[tuple[int, int]]:
    """(inlier count, outlier count) cells for a gamma grid at fixed N."""
    cells = []
    for gamma in _check_grid("gamma", gammas):
        n_in = half_up_inlier_count(N, gamma)
        cells.append((n_in, N - n_in))
    return cells


def validate_bound(
    n: int,
    r: int,
    N: int,
    gammas: Sequence[float],
    trials: int = 200,
    alpha: float = 0.05,
    seed: int = 0,
    snr_db: float | None = None,
) -> list[dict]:
    """Minimum outlier score vs threshold across an outlier-fraction grid.

    One row per (gamma, trial) with the trial's minimum true-outlier
    score, maximum true-inlier score, the threshold, and whether the
    bound held; the per-gamma mean of the inlier maxima is repeated on
    each row for plotting.
    """
    gammas = _check_grid("gamma", gammas)
    trials = _check_trials(trials)
    from .thresholds import roma_threshold

    zeta = roma_threshold(n, N, alpha)
    rows: list[dict] = []
    for gi, gamma in enumerate(gammas):
        spec = SynthSpec(n=n, N=N, r=r, gamma=gamma, snr_db=snr_db, seed=seed)

        def one_trial(t: int, gi=gi, spec=spec) -> tuple[float, float]:
            ds = assemble_dataset(spec, rng=stream_rng(seed, gi * trials + t))
            scores = acute_angle_scores(normalize_columns(ds.matrix)).scores
            q_out = float(scores[ds.true_outliers].min()) if ds.true_outliers.size else math.nan
            q_in = float(scores[ds.true_inliers].max()) if ds.true_inliers.size else math.nan
            return q_out, q_in

        results = run_trials(one_trial, trials)
        mean_q_in = float(np.mean([q_in for _, q_in in results]))
        for t, (q_out, q_in) in enumerate(results):
            rows.append(
                {
                    "gamma": gamma,
                    "snr_db": snr_db,
                    "trial": t,
                    "q_outlier_min": q_out,
                    "q_inlier_max": q_in,
                    "zeta": zeta,
                    "bound_holds": bool(math.isnan(q_out) or q_out > zeta),
                    "mean_q_inlier_max": mean_q_in,
                }
            )
    return rows


def phase_inliers(
    n: int,
    N: int,
    ranks: Sequence[int],
    inlier_counts: Sequence[int],
    trials: int = 100,
    alpha: float = 0.05,
    seed: int = 0,
) -> list[dict]:
    """Mean percentage of true inliers recovered over a (rank, N_I) grid."""
    ranks = _check_grid("rank", ranks)
    inlier_counts = _check_grid("inlier count", inlier_counts)
    trials = _check_trials(trials)

    rows: list[dict] = []
    cells = [(r, n_in) for r in ranks for n_in in inlier_counts]
    for ci, (r, n_in) in enumerate(cells):
        spec = SynthSpec(n=n, N=N, r=r, gamma=(N - n_in) / N, seed=seed)

        def one_trial(t: int, ci=ci, spec=spec) -> float:
            ds = assemble_dataset(spec, rng=stream_rng(seed, ci * trials + t))
            part = detect(ds.matrix, alpha=alpha)
            kept = np.intersect1d(part.inliers, ds.true_inliers).size
            return 100.0 * kept / ds.true_inliers.size

        pct = run_trials(one_trial, trials)
        rows.append(
            {
                "n": n,
                "N": N,
                "r": r,
                "ratio": r / n,
                "n_inliers": n_in,
                "n_outliers": N - n_in,
                "trials": trials,
                "inlier_recovery_pct": float(np.mean(pct)),
            }
        )
    return rows


def phase_subspace(
    n: int,
    r: int,
    inlier_counts: Sequence[int],
    outlier_counts: Sequence[int],
    trials: int = 100,
    alpha: float = 0.05,
    seed: int = 0,
) -> list[dict]:
    """Percentage of trials with exact recovery over an (N_I, N_O) grid.

    A trial succeeds when detection followed by SVD on the kept columns
    lands below ``RECOVERY_LRE_CUTOFF`` in log recovery error.
    """
    inlier_counts = _check_grid("inlier count", inlier_counts)
    outlier_counts = _check_grid("outlier count", outlier_counts)
    trials = _check_trials(trials)

    rows: list[dict] = []
    cells = [(n_in, n_out) for n_in in inlier_counts for n_out in outlier_counts]
    for ci, (n_in, n_out) in enumerate(cells):
        N = n_in + n_out
        spec = SynthSpec(n=n, N=N, r=r, gamma=n_out / N, seed=seed)

        def one_trial(t: int, ci=ci, spec=spec) -> bool:
            ds = assemble_dataset(spec, rng=stream_rng(seed, ci * trials + t))
            lre, _, _ = _roma_trial(ds, alpha)
            return lre < RECOVERY_LRE_CUTOFF

        outcomes = run_trials(one_trial, trials)
        rows.append(
            {
                "n": n,
                "r": r,
                "n_inliers": n_in,
                "n_outliers": n_out,
                "trials": trials,
                "recovery_pct": 100.0 * float(np.mean(outcomes)),
            }
        )
    return rows


def _roma_trial(ds: LabeledDataset, alpha: float) -> tuple[float, RomaKept, float]:
    start = time.perf_counter()
    part = detect(ds.matrix, alpha=alpha)
    try:
        estimate = recover_basis(ds.matrix[:, part.inliers])
        lre = log_recovery_error(ds.truth_basis, estimate)
    except EmptyInlierSetError:
        lre = 0.0
    elapsed = time.perf_counter() - start
    kept = RomaKept(
        true_inliers=int(np.intersect1d(part.inliers, ds.true_inliers).size),
        outliers=int(np.intersect1d(part.inliers, ds.true_outliers).size),
    )
    return lre, kept, elapsed


class RomaKept:
    def __init__(self, true_inliers: int, outliers: int):
        self.true_inliers = true_inliers
        self.outliers = outliers


def compare(
    n: int,
    r: int,
    cells: Sequence[tuple[int, int]],
    n_s: int,
    norm: str = "l2",
    trials: int = 50,
    alpha: float = 0.05,
    seed: int = 0,
) -> list[dict]:
    """Head-to-head rows for the angle detector and Coherence Pursuit.

    Each (cell, trial) pair generates one dataset shared by both
    algorithms.  The coherence baseline is granted the true rank for its
    PCA step (its documented parameter dependence); the detector runs
    parameter-free.  Timing covers the algorithm call only.
    """
    cells = _check_grid("cell", cells)
    trials = _check_trials(trials)

    rows: list[dict] = []
    for ci, (n_in, n_out) in enumerate(cells):
        N = n_in + n_out
        gamma = n_out / N
        spec = SynthSpec(n=n, N=N, r=r, gamma=gamma, seed=seed)

        def one_trial(t: int, ci=ci, spec=spec) -> tuple:
            ds = assemble_dataset(spec, rng=stream_rng(seed, ci * trials + t))
            roma_lre, roma_kept, roma_time = _roma_trial(ds, alpha)

            start = time.perf_counter()
            chosen, estimate = cop_recover(ds.matrix, n_s=n_s, norm=norm, rank_hint=spec.r)
            cop_lre = log_recovery_error(ds.truth_basis, estimate)
            cop_time = time.perf_counter() - start
            cop_kept_in = int(np.intersect1d(chosen, ds.true_inliers).size)
            cop_kept_out = int(np.intersect1d(chosen, ds.true_outliers).size)
            return (roma_lre, roma_kept, roma_time, cop_lre, cop_kept_in, cop_kept_out, cop_time)

        results = run_trials(one_trial, trials)
        for t, res in enumerate(results):
            roma_lre, roma_kept, roma_time, cop_lre, cop_in, cop_out, cop_time = res
            base = {
                "n": n,
                "r": r,
                "n_inliers": n_in,
                "n_outliers": n_out,
                "gamma": gamma,
                "n_s": n_s,
                "norm": norm,
                "trial": t,
            }
            rows.append(
                {
                    "algorithm": "roma",
                    **base,
                    "lre": roma_lre,
                    "runtime_seconds": roma_time,
                    "kept_true_inliers": roma_kept.true_inliers,
                    "kept_outliers": roma_kept.outliers,
                }
            )
            rows.append(
                {
                    "algorithm": "cop",
                    **base,
                    "lre": cop_lre,
                    "runtime_seconds": cop_time,
                    "kept_true_inliers": cop_in,
                    "kept_outliers": cop_out,
                }
            )
    return rows

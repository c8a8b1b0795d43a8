"""The outlier detector and its analytical side-conditions.

``detect`` is the whole algorithm: normalize the columns, score every
point by the minimum acute angle it subtends, and declare outliers
wherever the score exceeds the parameter-free threshold.  The remaining
functions quantify when the resulting partition can or cannot be exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angles import FULL_MATRIX_CAP, AngleScores, acute_angle_scores, normalize_columns
from .errors import DegenerateCdfError
from .synth import sample_inliers, sample_outliers, sample_subspace_basis, stream_rng
from .thresholds import roma_threshold, theta_cdf_exact, theta_cdf_gauss


@dataclass(frozen=True)
class RomaPartition:
    """Estimated inlier/outlier split of the columns of one matrix.

    ``outliers`` and ``inliers`` are disjoint ascending index arrays
    covering ``0..N-1``; ``cut_index`` is the number of points classified
    outlier (the cut position in the descending score order).
    """

    outliers: np.ndarray
    inliers: np.ndarray
    threshold: float
    cut_index: int
    scores: AngleScores

    @property
    def all_outliers(self) -> bool:
        """True when every point was flagged; recovery is impossible then."""
        return self.cut_index == len(self.scores)

    def min_outlier_score(self) -> float | None:
        if self.outliers.size == 0:
            return None
        return float(self.scores.scores[self.outliers].min())

    def max_inlier_score(self) -> float | None:
        if self.inliers.size == 0:
            return None
        return float(self.scores.scores[self.inliers].max())


def detect(m: np.ndarray, alpha: float = 0.05, full_matrix_cap: int = FULL_MATRIX_CAP) -> RomaPartition:
    """Partition the columns of ``m`` into outliers and inliers.

    Pipeline: normalize columns, compute each point's minimum acute angle
    against all others, sort the scores descending, and cut at the last
    position still above the threshold.  When no score exceeds the
    threshold the outlier set is empty; when all do, the partition's
    ``all_outliers`` flag is set rather than raising, leaving the caller
    to decide whether recovery is meaningful.

    Deterministic given its input; needs no knowledge of the subspace
    dimension or the outlier fraction.
    """
    x = normalize_columns(m)
    scores = acute_angle_scores(x, full_matrix_cap=full_matrix_cap)
    zeta = roma_threshold(x.shape[0], x.shape[1], alpha)
    cut = int(np.sum(scores.sorted_scores > zeta))
    return RomaPartition(
        outliers=np.sort(scores.order[:cut]),
        inliers=np.sort(scores.order[cut:]),
        threshold=zeta,
        cut_index=cut,
        scores=scores,
    )


def separation_condition(n: int, r: int) -> bool:
    """Whether inlier and outlier scores are well separated on average.

    True iff ``r < 2 + 2(n-2)/(9*pi)``.  Below this rank the average
    inlier score sits clearly under the high-probability floor of the
    outlier scores, so most inliers survive detection.
    """
    if not 1 <= r < n:
        raise ValueError(f"need 1 <= r < n, got r={r}, n={n}")
    return r < 2.0 + 2.0 * (n - 2) / (9.0 * math.pi)


def non_erp_inlier_bound(
    n: int,
    r: int,
    N: int,
    gamma: float,
    alpha: float = 0.05,
    zeta: float | None = None,
    mode: str = "gauss",
) -> float:
    """Inlier count below which exact recovery is guaranteed to fail.

    Evaluates ``1 + (1-alpha)/F_in(zeta) - gamma*N*F_out(zeta)/F_in(zeta)``
    where ``F_in``/``F_out`` are the small-angle cdf values for
    inlier-inlier (effective dimension r) and inlier-outlier (dimension n)
    acute angles.  With fewer inliers than this, some inlier score exceeds
    the threshold too often for the recovered inlier set to be exact.

    The cdfs are taken as the N(pi/2, 1/(d-2)) tail at ``zeta`` in
    ``gauss`` mode and as the Simpson-quadrature angle cdf in ``exact``
    mode.  (This reproduces the published worked values; doubling the
    tail per the acute-angle density does not.)
    """
    if not 3 <= r < n:
        raise ValueError(f"need 3 <= r < n, got r={r}, n={n}")
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma must lie in [0, 1), got {gamma}")
    if zeta is None:
        zeta = roma_threshold(n, N, alpha)
    if not 0.0 < zeta < math.pi / 2:
        raise ValueError(f"zeta must lie in (0, pi/2), got {zeta}")
    if mode == "gauss":
        f_in = float(theta_cdf_gauss(r, zeta))
        f_out = float(theta_cdf_gauss(n, zeta))
    elif mode == "exact":
        f_in = float(theta_cdf_exact(r, zeta))
        f_out = float(theta_cdf_exact(n, zeta))
    else:
        raise ValueError(f"mode must be 'exact' or 'gauss', got {mode!r}")
    if f_in <= 0.0:
        raise DegenerateCdfError(
            f"inlier angle cdf underflowed at zeta={zeta} (r={r}); the bound is vacuous here"
        )
    return 1.0 + (1.0 - alpha) / f_in - gamma * N * f_out / f_in


def erp_failure_prob_bound(
    n: int,
    r: int,
    N: int,
    gamma: float,
    zeta: float,
    trials: int = 1000,
    seed: int = 0,
) -> float:
    """Monte Carlo bound on the exact-recovery failure probability.

    Estimates ``p = P(min over j != k of theta_kj > zeta)`` for a fixed
    inlier ``k`` by sampling full datasets (the angles are only pairwise
    independent, so no closed form is available) and returns
    ``min(1, N_I * p)``.  Exact recovery then fails with probability at
    most that value.  Trials use derived streams, so the estimate is
    reproducible and order-independent.
    """
    if trials < 100:
        raise ValueError(f"need at least 100 trials, got {trials}")
    if not 3 <= r < n:
        raise ValueError(f"need 3 <= r < n, got r={r}, n={n}")
    if not 0.0 <= zeta <= math.pi:
        raise ValueError(f"zeta must lie in [0, pi], got {zeta}")
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma must lie in [0, 1), got {gamma}")
    n_in = int(math.floor((1.0 - gamma) * N + 0.5))
    n_out = N - n_in
    if n_in < 1 or N < 2:
        raise ValueError("configuration leaves no inlier to track")

    hits = 0
    for trial in range(trials):
        rng = stream_rng(seed, trial)
        basis = sample_subspace_basis(n, r, rng)
        cols = [sample_inliers(basis, n_in, rng)]
        if n_out:
            cols.append(sample_outliers(n, n_out, rng))
        points = np.concatenate(cols, axis=1)
        dots = np.clip(points[:, 0] @ points[:, 1:], -1.0, 1.0)
        if float(np.arccos(dots).min()) > zeta:
            hits += 1
    return min(1.0, n_in * hits / trials)


@dataclass(frozen=True)
class GuaranteeReport:
    """The three analytical checks for one parameter configuration."""

    separation_ok: bool
    non_erp_inlier_bound: float
    erp_failure_prob_bound: float


def guarantee_report(
    n: int,
    r: int,
    N: int,
    gamma: float,
    alpha: float = 0.05,
    trials: int = 1000,
    seed: int = 0,
    mode: str = "gauss",
) -> GuaranteeReport:
    zeta = roma_threshold(n, N, alpha)
    return GuaranteeReport(
        separation_ok=separation_condition(n, r),
        non_erp_inlier_bound=non_erp_inlier_bound(n, r, N, gamma, alpha, zeta, mode),
        erp_failure_prob_bound=erp_failure_prob_bound(n, r, N, gamma, zeta, trials, seed),
    )

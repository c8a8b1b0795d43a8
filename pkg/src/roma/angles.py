"""Column normalization and pairwise-angle machinery.

Data points are the columns of an ``n x N`` matrix.  All angle
computations run through a single Gram-matrix product followed by
element-wise ``arccos``; dot products are clamped to ``[-1, 1]`` first so
duplicated columns cannot drift outside the ``arccos`` domain.

For very wide matrices the full ``N x N`` angle matrix is never
materialized: minimum-angle scores are accumulated over row blocks
instead (see :func:`acute_angle_scores`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroColumnError

# Widest matrix for which the full N x N angle matrix is held in memory;
# beyond this, scores are computed from row blocks.
FULL_MATRIX_CAP = 20_000

_NORM_FLOOR = 1e-12


def _as_points(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix of column points, got shape {m.shape}")
    if m.shape[0] < 2 or m.shape[1] < 2:
        raise ValueError(f"need at least 2 dimensions and 2 points, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return m


def _check_normalized(x: np.ndarray) -> np.ndarray:
    x = _as_points(x)
    norms = np.linalg.norm(x, axis=0)
    if not np.allclose(norms, 1.0, rtol=0.0, atol=1e-9):
        raise ValueError("columns are not unit-normalized; call normalize_columns first")
    return x


def normalize_columns(m: np.ndarray) -> np.ndarray:
    """Scale every column to unit Euclidean norm.

    Args
    ----
    m:
        ``n x N`` matrix whose columns are the data points.

    Returns
    -------
    np.ndarray
        Matrix of the same shape with unit-norm columns.

    Raises
    ------
    ZeroColumnError
        If a column norm is below ``1e-12 * sqrt(n)``.  Normalization is
        undefined there and silently dropping the column would corrupt
        index bookkeeping downstream.
    """
    m = _as_points(m)
    norms = np.linalg.norm(m, axis=0)
    floor = _NORM_FLOOR * np.sqrt(m.shape[0])
    bad = np.flatnonzero(norms <= floor)
    if bad.size:
        raise ZeroColumnError(int(bad[0]))
    return m / norms


def pairwise_principal_angles(x: np.ndarray) -> np.ndarray:
    """Matrix of angles ``arccos(x_i . x_j)`` in ``[0, pi]``.

    ``x`` must hold unit-norm columns.  The diagonal is exactly zero and
    the result is symmetric.
    """
    x = _check_normalized(x)
    gram = np.clip(x.T @ x, -1.0, 1.0)
    theta = np.arccos(gram)
    np.fill_diagonal(theta, 0.0)
    return theta


def pairwise_acute_angles(x: np.ndarray) -> np.ndarray:
    """Matrix of angles ``arccos(|x_i . x_j|)`` in ``[0, pi/2]``.

    Equals ``min(theta, pi - theta)`` entrywise: sign is absorbed, so
    antipodal points are at acute angle zero.
    """
    x = _check_normalized(x)
    gram = np.clip(np.abs(x.T @ x), 0.0, 1.0)
    phi = np.arccos(gram)
    np.fill_diagonal(phi, 0.0)
    return phi


@dataclass(frozen=True)
class AngleScores:
    """Per-column minimum acute angles plus their descending-order view.

    Attributes
    ----------
    scores:
        ``scores[i]`` is the smallest acute angle column ``i`` subtends
        with any other column.
    order:
        Permutation of ``0..N-1`` sorting scores in descending order;
        ties keep ascending original index.
    sorted_scores:
        ``scores[order]`` (non-increasing).
    """

    scores: np.ndarray
    order: np.ndarray
    sorted_scores: np.ndarray

    @classmethod
    def from_scores(cls, scores: np.ndarray) -> "AngleScores":
        scores = np.asarray(scores, dtype=float)
        order = np.argsort(-scores, kind="stable")
        return cls(scores=scores, order=order, sorted_scores=scores[order])

    def __len__(self) -> int:
        return self.scores.shape[0]


def min_angle_scores(phi: np.ndarray) -> AngleScores:
    """Reduce an acute-angle matrix to per-column minimum scores.

    Args
    ----
    phi:
        Symmetric ``N x N`` matrix with zero diagonal (as produced by
        :func:`pairwise_acute_angles`).

    Returns
    -------
    AngleScores
        ``scores[i] = min over j != i of phi[i, j]``, with the stable
        descending sort attached.
    """
    phi = np.asarray(phi, dtype=float)
    if phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
        raise ValueError(f"expected a square angle matrix, got shape {phi.shape}")
    if phi.shape[0] < 2:
        raise ValueError("need at least 2 points")
    if np.any(np.abs(np.diagonal(phi)) > 1e-12):
        raise ValueError("angle matrix must have a zero diagonal")
    if not np.allclose(phi, phi.T, rtol=0.0, atol=1e-12):
        raise ValueError("angle matrix must be symmetric")
    masked = phi.copy()
    np.fill_diagonal(masked, np.inf)
    return AngleScores.from_scores(masked.min(axis=1))


def _blocked_min_scores(x: np.ndarray, block_columns: int) -> np.ndarray:
    # arccos is monotone decreasing, so the minimum acute angle per row is
    # exactly arccos of the row maximum of |dot|; this skips the N x N
    # arccos pass that the matrix route pays.
    n_pts = x.shape[1]
    scores = np.empty(n_pts)
    for start in range(0, n_pts, block_columns):
        stop = min(start + block_columns, n_pts)
        gram = np.abs(x[:, start:stop].T @ x)
        gram[np.arange(stop - start), np.arange(start, stop)] = -1.0
        scores[start:stop] = np.arccos(np.minimum(gram.max(axis=1), 1.0))
    return scores


def acute_angle_scores(x: np.ndarray, full_matrix_cap: int = FULL_MATRIX_CAP) -> AngleScores:
    """Minimum acute-angle score per column of a normalized matrix.

    Equivalent to reducing :func:`pairwise_acute_angles` with
    :func:`min_angle_scores` (bitwise so while one block suffices), but
    the angle matrix is never materialized: scores come from row maxima
    of the absolute Gram matrix, processed in fixed-order column blocks
    of at most ``full_matrix_cap`` so memory stays bounded for very wide
    inputs.  Block boundaries can perturb dot products at the last ulp;
    the routes agree well within 1e-12 either way.
    """
    x = _check_normalized(x)
    return AngleScores.from_scores(
        _blocked_min_scores(x, min(full_matrix_cap, x.shape[1]))
    )

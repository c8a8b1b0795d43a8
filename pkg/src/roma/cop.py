"""Coherence Pursuit baseline.

Ranks points by the norm of their coherence vector (dot products with
every other point) and keeps the top ``n_s`` as inliers.  Unlike the
angle detector it needs ``n_s`` — effectively an outlier-count bound —
supplied by the caller, which is exactly the sensitivity the benchmark
harness probes.
"""

from __future__ import annotations

import numpy as np

from .angles import _check_normalized, normalize_columns
from .recovery import SubspaceBasis, recover_basis


def cop_scores(x: np.ndarray, norm: str = "l2") -> np.ndarray:
    """Coherence score per column of a normalized matrix.

    ``score[i]`` is the l1 or l2 norm of ``(x_i . x_j) for j != i``;
    higher means more inlier-like.  Self-coherence is excluded.
    """
    x = _check_normalized(x)
    gram = x.T @ x
    np.fill_diagonal(gram, 0.0)
    if norm == "l1":
        return np.abs(gram).sum(axis=1)
    if norm == "l2":
        return np.sqrt((gram * gram).sum(axis=1))
    raise ValueError(f"norm must be 'l1' or 'l2', got {norm!r}")


def cop_recover(
    m: np.ndarray,
    n_s: int,
    norm: str = "l2",
    rank_hint: int | None = None,
) -> tuple[np.ndarray, SubspaceBasis]:
    """Pick the ``n_s`` most coherent points and run PCA on them.

    Returns the chosen column indices (in descending score order, stable
    on ties) and the recovered basis.
    """
    x = normalize_columns(m)
    if not 1 <= n_s <= x.shape[1]:
        raise ValueError(f"n_s must lie in [1, {x.shape[1]}], got {n_s}")
    scores = cop_scores(x, norm=norm)
    chosen = np.argsort(-scores, kind="stable")[:n_s]
    return chosen, recover_basis(x[:, chosen], rank_hint=rank_hint)

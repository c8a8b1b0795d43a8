"""Subspace recovery by SVD and the log recovery error metric."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EmptyInlierSetError


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal basis of an r-dimensional subspace of R^n."""

    n: int
    r: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.shape != (self.n, self.r):
            raise ValueError(f"basis shape {b.shape} does not match (n={self.n}, r={self.r})")
        gram = b.T @ b
        if np.linalg.norm(gram - np.eye(self.r)) > 1e-10:
            raise ValueError("basis columns are not orthonormal")
        object.__setattr__(self, "basis", b)

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T


def recover_basis(points: np.ndarray, rank_hint: int | None = None) -> SubspaceBasis:
    """PCA of a set of column points via SVD.

    Without ``rank_hint`` the retained rank is the number of singular
    values above ``1e-8 * max(n, count) * sigma_max`` (a scaled
    machine-precision cutoff standing in for "nonzero" in exact
    arithmetic).  With a hint, exactly ``min(rank_hint, count, n)``
    leading directions are kept — the escape hatch for noisy data where
    rank selection is the caller's problem.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    if points.ndim != 2 or points.shape[1] == 0:
        raise EmptyInlierSetError("no columns supplied for subspace recovery")
    n, count = points.shape

    u, sigma, _ = np.linalg.svd(points, full_matrices=False)
    if rank_hint is not None:
        if rank_hint < 1:
            raise ValueError(f"rank_hint must be >= 1, got {rank_hint}")
        rank = min(int(rank_hint), count, n)
    else:
        cutoff = 1e-8 * max(n, count) * (sigma[0] if sigma.size else 0.0)
        rank = max(1, int(np.sum(sigma > cutoff)))
    return SubspaceBasis(n=n, r=rank, basis=u[:, :rank])


def log_recovery_error(truth: SubspaceBasis, estimate: SubspaceBasis) -> float:
    """log10 of the normalized residual of the truth under the estimate.

    ``log10(||U - P U||_F / ||U||_F)`` with ``P`` the projector onto the
    estimated subspace.  Zero when the estimate misses the truth
    entirely, ``-inf`` for an exact match, and invariant to the choice of
    orthonormal basis on either side.
    """
    if truth.n != estimate.n:
        raise DimensionMismatchError(
            f"ambient dimensions differ: truth n={truth.n}, estimate n={estimate.n}"
        )
    u = truth.basis
    residual = u - estimate.basis @ (estimate.basis.T @ u)
    ratio = np.linalg.norm(residual) / math.sqrt(truth.r)
    with np.errstate(divide="ignore"):
        return float(np.log10(ratio))

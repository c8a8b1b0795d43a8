"""Synthetic data under the uniform inlier/outlier model.

Inliers are drawn uniformly from the intersection of a Haar-random
r-dimensional subspace with the unit sphere; outliers are uniform on the
whole sphere.  Generation is driven by a counter-based Philox generator
so that distinct ``(seed, stream)`` pairs give independent, reproducible
streams for parallel trials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .recovery import SubspaceBasis


def stream_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for one trial of one experiment.

    Implemented as Philox keyed by the 128-bit pair ``(seed, stream)``;
    the mapping is injective, so no two streams of a run can collide.
    """
    key = np.array([np.uint64(seed), np.uint64(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for one labeled dataset.

    ``gamma`` is the outlier fraction; the inlier count is
    ``round((1-gamma)*N)`` with half-up rounding and the actual counts are
    recorded on the generated dataset.  ``snr_db``, when set, adds
    isotropic Gaussian noise to every column before any downstream
    normalization, calibrated so a unit-norm clean column has
    ``E||noise||^2 = 10^(-snr_db/10)``.
    """

    n: int
    N: int
    r: int
    gamma: float
    snr_db: float | None = None
    seed: int = 0

    def __post_init__(self):
        if not 3 <= self.r < self.n:
            raise ValueError(f"need 3 <= r < n, got r={self.r}, n={self.n}")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma must lie in [0, 1), got {self.gamma}")
        if self.N < 2:
            raise ValueError(f"need at least 2 points, got N={self.N}")
        if self.inlier_count < 1:
            raise ValueError("spec leaves no inliers after rounding")

    @property
    def inlier_count(self) -> int:
        return int(math.floor((1.0 - self.gamma) * self.N + 0.5))

    @property
    def outlier_count(self) -> int:
        return self.N - self.inlier_count


@dataclass(frozen=True)
class LabeledDataset:
    """A generated matrix together with its ground truth."""

    matrix: np.ndarray
    true_inliers: np.ndarray
    true_outliers: np.ndarray
    truth_basis: SubspaceBasis

    @property
    def n_points(self) -> int:
        return self.matrix.shape[1]


def sample_subspace_basis(n: int, r: int, rng: np.random.Generator) -> SubspaceBasis:
    """Orthonormal basis of a subspace drawn from the rotation-invariant law.

    QR of an ``n x r`` standard-normal matrix, with column signs fixed to
    the R diagonal so the frame itself is Haar distributed.
    """
    if not 1 <= r < n:
        raise ValueError(f"need 1 <= r < n, got r={r}, n={n}")
    g = rng.standard_normal((n, r))
    q, rmat = np.linalg.qr(g)
    q = q * np.sign(np.diagonal(rmat))
    return SubspaceBasis(n=n, r=r, basis=q)


def sample_inliers(basis: SubspaceBasis, count: int, rng: np.random.Generator) -> np.ndarray:
    """Columns uniform on the intersection of the subspace with the sphere."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    g = rng.standard_normal((basis.r, count))
    g /= np.linalg.norm(g, axis=0)
    return basis.basis @ g


def sample_outliers(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Columns uniform on the unit sphere of the ambient space."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    g = rng.standard_normal((n, count))
    g /= np.linalg.norm(g, axis=0)
    return g


def assemble_dataset(spec: SynthSpec, rng: np.random.Generator | None = None) -> LabeledDataset:
    """Generate one labeled dataset.

    Columns are placed at a uniformly random permutation of positions so
    that detection cannot exploit ordering.  Draw order is fixed (basis,
    inliers, outliers, permutation, noise), which makes identical specs
    produce bit-identical datasets.
    """
    if rng is None:
        rng = stream_rng(spec.seed)
    n_in = spec.inlier_count
    n_out = spec.outlier_count

    basis = sample_subspace_basis(spec.n, spec.r, rng)
    columns = np.empty((spec.n, spec.N))
    inlier_cols = sample_inliers(basis, n_in, rng)
    outlier_cols = sample_outliers(spec.n, n_out, rng) if n_out else None

    positions = rng.permutation(spec.N)
    inlier_pos = positions[:n_in]
    outlier_pos = positions[n_in:]
    columns[:, inlier_pos] = inlier_cols
    if outlier_cols is not None:
        columns[:, outlier_pos] = outlier_cols

    if spec.snr_db is not None:
        sigma = math.sqrt(10.0 ** (-spec.snr_db / 10.0) / spec.n)
        columns = columns + rng.normal(0.0, sigma, size=columns.shape)

    return LabeledDataset(
        matrix=columns,
        true_inliers=np.sort(inlier_pos),
        true_outliers=np.sort(outlier_pos),
        truth_basis=basis,
    )

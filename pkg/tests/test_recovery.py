import math

import numpy as np
import pytest

from roma import (
    DimensionMismatchError,
    EmptyInlierSetError,
    SubspaceBasis,
    SynthSpec,
    assemble_dataset,
    log_recovery_error,
    recover_basis,
    sample_inliers,
    sample_subspace_basis,
    stream_rng,
)


class TestSubspaceBasis:
    def test_rejects_non_orthonormal(self):
        with pytest.raises(ValueError):
            SubspaceBasis(n=3, r=2, basis=np.ones((3, 2)))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            SubspaceBasis(n=3, r=2, basis=np.eye(3))

    def test_projector(self):
        basis = SubspaceBasis(n=3, r=1, basis=np.array([[1.0], [0.0], [0.0]]))
        assert np.allclose(basis.projector(), np.diag([1.0, 0.0, 0.0]))


class TestRecoverBasis:
    def test_exact_span_rank_three(self):
        truth = sample_subspace_basis(12, 3, stream_rng(0))
        points = sample_inliers(truth, 30, stream_rng(1))
        est = recover_basis(points)
        assert est.r == 3
        assert log_recovery_error(truth, est) <= -12.0

    def test_single_point_rank_one(self):
        v = np.array([3.0, 4.0, 0.0])
        est = recover_basis(v)
        assert est.r == 1
        assert np.allclose(np.abs(est.basis[:, 0]), [0.6, 0.8, 0.0], atol=1e-12)

    def test_generator_rank(self):
        ds = assemble_dataset(SynthSpec(n=100, N=750, r=10, gamma=0.0, seed=2))
        est = recover_basis(ds.matrix)
        assert est.r == 10

    def test_rank_hint_caps(self):
        rng = stream_rng(3)
        points = rng.standard_normal((8, 5))
        assert recover_basis(points, rank_hint=3).r == 3
        assert recover_basis(points, rank_hint=99).r == 5  # min(hint, count, n)
        with pytest.raises(ValueError):
            recover_basis(points, rank_hint=0)

    def test_empty_rejected(self):
        with pytest.raises(EmptyInlierSetError):
            recover_basis(np.empty((5, 0)))

    def test_output_orthonormal(self):
        rng = stream_rng(4)
        points = rng.standard_normal((20, 9))
        est = recover_basis(points)
        assert np.linalg.norm(est.basis.T @ est.basis - np.eye(est.r)) < 1e-10


class TestLogRecoveryError:
    def test_exact_match_floor(self):
        for r in (1, 10, 100):
            truth = sample_subspace_basis(r + 20, r, stream_rng(10 + r))
            assert log_recovery_error(truth, truth) <= -12.0

    def test_total_miss_is_zero(self):
        truth = SubspaceBasis(n=3, r=1, basis=np.array([[1.0], [0.0], [0.0]]))
        est = SubspaceBasis(n=3, r=1, basis=np.array([[0.0], [1.0], [0.0]]))
        assert log_recovery_error(truth, est) == pytest.approx(0.0, abs=1e-15)

    def test_half_overlap_hand_value(self):
        # 2-D truth sharing exactly one direction with the estimate:
        # residual norm 1 against ||truth||_F = sqrt(2).
        truth = SubspaceBasis(n=4, r=2, basis=np.eye(4)[:, :2])
        est = SubspaceBasis(n=4, r=2, basis=np.eye(4)[:, [0, 2]])
        assert log_recovery_error(truth, est) == pytest.approx(math.log10(1 / math.sqrt(2)), abs=1e-12)

    def test_invariant_to_basis_choice(self):
        truth = sample_subspace_basis(15, 4, stream_rng(20))
        est = sample_subspace_basis(15, 4, stream_rng(21))
        rng = stream_rng(22)
        q, rmat = np.linalg.qr(rng.standard_normal((4, 4)))
        q *= np.sign(np.diagonal(rmat))
        rotated = SubspaceBasis(n=15, r=4, basis=est.basis @ q)
        assert log_recovery_error(truth, rotated) == pytest.approx(
            log_recovery_error(truth, est), abs=1e-12
        )

    def test_dimension_mismatch(self):
        a = sample_subspace_basis(10, 2, stream_rng(30))
        b = sample_subspace_basis(11, 2, stream_rng(31))
        with pytest.raises(DimensionMismatchError):
            log_recovery_error(a, b)

    def test_estimate_superset_recovers(self):
        # An estimate spanning a superset of the truth has zero residual.
        truth = SubspaceBasis(n=5, r=1, basis=np.eye(5)[:, :1])
        est = SubspaceBasis(n=5, r=3, basis=np.eye(5)[:, :3])
        assert log_recovery_error(truth, est) == -math.inf

import math

import numpy as np
import pytest

from oracles import oracle_detect
from roma import (
    DegenerateCdfError,
    SynthSpec,
    ZeroColumnError,
    assemble_dataset,
    detect,
    erp_failure_prob_bound,
    guarantee_report,
    non_erp_inlier_bound,
    roma_threshold,
    separation_condition,
    stream_rng,
)


class TestDetect:
    def test_partition_invariants(self):
        ds = assemble_dataset(SynthSpec(n=50, N=150, r=5, gamma=0.3, seed=0))
        part = detect(ds.matrix)
        combined = np.concatenate([part.outliers, part.inliers])
        assert sorted(combined.tolist()) == list(range(150))
        assert part.cut_index == part.outliers.size
        assert np.all(part.scores.scores[part.outliers] > part.threshold)
        assert np.all(part.scores.scores[part.inliers] <= part.threshold)
        assert part.threshold == roma_threshold(50, 150, 0.05)

    def test_deterministic(self):
        ds = assemble_dataset(SynthSpec(n=30, N=80, r=4, gamma=0.2, seed=1))
        a = detect(ds.matrix)
        b = detect(ds.matrix)
        assert np.array_equal(a.outliers, b.outliers)
        assert np.array_equal(a.scores.scores, b.scores.scores)

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            n = int(rng.integers(3, 21))
            N = int(rng.integers(3, 9))
            m = rng.standard_normal((n, N))
            part = detect(m)
            scores, order, outliers, inliers = oracle_detect(m)
            assert part.outliers.tolist() == outliers
            assert part.inliers.tolist() == inliers
            assert part.scores.order.tolist() == order
            assert np.max(np.abs(part.scores.scores - np.array(scores))) < 1e-12

    def test_single_ray_has_no_outliers(self):
        # Duplicated directions force every score to zero.
        direction = np.array([1.0, 2.0, -0.5, 0.25])
        scales = np.array([1.0, -3.0, 0.5, 7.0, -0.1])
        m = np.outer(direction, scales)
        part = detect(m)
        assert part.outliers.size == 0
        assert part.cut_index == 0
        assert not part.all_outliers
        assert part.min_outlier_score() is None
        # Normalized copies of one ray agree to the last ulp; arccos turns
        # that into scores of order 1e-8, still far below any threshold.
        assert np.all(part.scores.scores < 1e-7)

    def test_all_outliers_flag(self):
        # A handful of random points in high dimension are mutually
        # near-orthogonal, so every score clears the threshold.
        rng = np.random.default_rng(3)
        m = rng.standard_normal((200, 5))
        part = detect(m)
        assert part.all_outliers
        assert part.inliers.size == 0
        assert part.max_inlier_score() is None
        assert part.min_outlier_score() > part.threshold

    def test_column_scaling_invariance(self):
        ds = assemble_dataset(SynthSpec(n=40, N=100, r=5, gamma=0.25, seed=4))
        rng = np.random.default_rng(5)
        scales = rng.uniform(0.5, 2.0, size=100) * rng.choice([-1.0, 1.0], size=100)
        a = detect(ds.matrix)
        b = detect(ds.matrix * scales)
        assert np.array_equal(a.outliers, b.outliers)
        assert np.array_equal(a.inliers, b.inliers)

    def test_alpha_monotonicity(self):
        ds = assemble_dataset(SynthSpec(n=40, N=100, r=5, gamma=0.25, seed=6))
        small = detect(ds.matrix, alpha=0.01)
        large = detect(ds.matrix, alpha=0.2)
        assert large.threshold > small.threshold
        assert large.outliers.size <= small.outliers.size

    def test_zero_column_propagates(self):
        m = np.ones((5, 4))
        m[:, 2] = 0.0
        with pytest.raises(ZeroColumnError):
            detect(m)

    def test_empirical_outlier_identification(self):
        # Fraction of trials whose estimated outlier set covers the truth.
        trials, hits = 100, 0
        spec = SynthSpec(n=60, N=300, r=8, gamma=0.3, seed=7)
        for t in range(trials):
            ds = assemble_dataset(spec, rng=stream_rng(7, t))
            part = detect(ds.matrix)
            hits += set(ds.true_outliers).issubset(set(part.outliers))
        assert hits / trials >= 0.95


class TestSeparationCondition:
    def test_n300_boundary(self):
        assert separation_condition(300, 23)
        assert not separation_condition(300, 24)

    def test_n100_r6(self):
        assert separation_condition(100, 6)

    def test_near_full_rank_fails(self):
        assert not separation_condition(10, 9)

    def test_validation(self):
        with pytest.raises(ValueError):
            separation_condition(10, 10)


class TestNonErpInlierBound:
    def test_worked_example_sixty(self):
        # Frozen with a 50-digit oracle: 59.01868 at these parameters.
        bound = non_erp_inlier_bound(n=60, r=10, N=400, gamma=0.85, alpha=0.05, mode="gauss")
        assert bound == pytest.approx(59.01868173, rel=1e-8)

    def test_worked_example_twelve(self):
        bound = non_erp_inlier_bound(n=100, r=6, N=400, gamma=0.97, alpha=0.05, mode="gauss")
        assert bound == pytest.approx(12.0376779, rel=1e-8)

    def test_gamma_zero_reduces(self):
        from roma import theta_cdf_gauss

        zeta = roma_threshold(80, 500, 0.05)
        bound = non_erp_inlier_bound(n=80, r=8, N=500, gamma=0.0, mode="gauss")
        assert bound == pytest.approx(1.0 + 0.95 / theta_cdf_gauss(8, zeta), rel=1e-12)

    def test_gamma_term_negligible_at_high_ambient(self):
        lo = non_erp_inlier_bound(n=60, r=10, N=400, gamma=0.05, mode="gauss")
        hi = non_erp_inlier_bound(n=60, r=10, N=400, gamma=0.95, mode="gauss")
        assert lo == pytest.approx(hi, abs=1e-3)

    def test_exact_mode_runs(self):
        bound = non_erp_inlier_bound(n=60, r=10, N=400, gamma=0.85, mode="exact")
        assert math.isfinite(bound) and bound > 1.0

    def test_degenerate_cdf(self):
        with pytest.raises(DegenerateCdfError):
            non_erp_inlier_bound(n=500, r=400, N=100, gamma=0.1, zeta=0.3, mode="exact")

    def test_validation(self):
        with pytest.raises(ValueError):
            non_erp_inlier_bound(n=60, r=10, N=400, gamma=0.5, zeta=2.0)
        with pytest.raises(ValueError):
            non_erp_inlier_bound(n=60, r=10, N=400, gamma=0.5, mode="bogus")
        with pytest.raises(ValueError):
            non_erp_inlier_bound(n=60, r=2, N=400, gamma=0.5)


class TestErpFailureProbBound:
    def test_zero_threshold_clamps_to_one(self):
        assert erp_failure_prob_bound(n=20, r=4, N=30, gamma=0.5, zeta=0.0, trials=100) == 1.0

    def test_pi_threshold_is_zero(self):
        assert erp_failure_prob_bound(n=20, r=4, N=30, gamma=0.5, zeta=math.pi, trials=100) == 0.0

    def test_two_batch_self_consistency(self):
        # Mid-range probability configuration; disjoint seeded batches
        # must agree within two combined standard errors.
        kwargs = dict(n=50, r=10, N=30, gamma=0.5, zeta=1.25, trials=500)
        b0 = erp_failure_prob_bound(seed=0, **kwargs)
        b1 = erp_failure_prob_bound(seed=1, **kwargs)
        assert 0.0 < b0 < 1.0
        assert 0.0 < b1 < 1.0
        n_in = 15
        se = []
        for b in (b0, b1):
            p = b / n_in
            se.append(n_in * math.sqrt(p * (1 - p) / kwargs["trials"]))
        assert abs(b0 - b1) <= 2.0 * math.hypot(*se)

    def test_deterministic(self):
        kwargs = dict(n=30, r=5, N=40, gamma=0.5, zeta=1.2, trials=150, seed=3)
        assert erp_failure_prob_bound(**kwargs) == erp_failure_prob_bound(**kwargs)

    def test_validation(self):
        with pytest.raises(ValueError):
            erp_failure_prob_bound(n=20, r=4, N=30, gamma=0.5, zeta=1.0, trials=50)


def test_guarantee_report():
    report = guarantee_report(n=60, r=8, N=200, gamma=0.3, trials=100, seed=0)
    assert report.separation_ok
    assert report.non_erp_inlier_bound > 1.0
    assert 0.0 <= report.erp_failure_prob_bound <= 1.0

import numpy as np
import pytest

import rkhs_approx as ra
from rkhs_approx.errors import DegenerateSpan, UnsupportedExponent

from _util import random_disk_measure, random_measure, random_psd


def _index_measure(n, weights=None):
    w = np.full(n, 1.0 / n) if weights is None else np.asarray(weights)
    return ra.make_discrete_measure([[float(i)] for i in range(n)], w)


class TestFrameBoundsP2:
    def test_single_point_normalized_kernel(self):
        mu = ra.make_discrete_measure([[0.2, 0.3]], [1.0])
        fb = ra.frame_bounds_p2(ra.Gaussian(1.0), mu)
        assert fb.lower == pytest.approx(1.0, abs=1e-12)
        assert fb.upper == pytest.approx(1.0, abs=1e-12)

    def test_single_point_scaled_kernel(self):
        # Rayleigh quotient is identically K(x, x) = c
        c = 3.7
        fb = ra.frame_bounds_p2(ra.CustomGram([[c]]), _index_measure(1))
        assert fb.lower == pytest.approx(c, rel=1e-12)
        assert fb.upper == pytest.approx(c, rel=1e-12)

    def test_monte_carlo_sandwich(self):
        # 1000 random-coefficient Rayleigh quotients must land inside [A, B]
        rng = np.random.default_rng(0)
        mu = random_measure(rng, 2)
        q = ra.gram(ra.Gaussian(2.0), mu.points)
        fb = ra.frame_bounds_p2(ra.Gaussian(2.0), mu)
        for _ in range(1000):
            a = rng.normal(size=2)
            num = float(np.sum(mu.weights * np.abs(q.entries @ a) ** 2))
            den = float(a @ q.entries @ a)
            ratio = num / den
            assert fb.lower - 1e-9 <= ratio <= fb.upper + 1e-9

    def test_degenerate_span(self):
        with pytest.raises(DegenerateSpan):
            ra.frame_bounds_p2(ra.CustomGram(np.zeros((2, 2))), _index_measure(2))

    def test_scale_covariance(self):
        # K -> cK scales both bounds by c and leaves their ratio alone
        rng = np.random.default_rng(1)
        base = random_psd(rng, 5)
        w = rng.uniform(0.1, 1.0, 5)
        mu = _index_measure(5, w / w.sum())
        c = 2.6
        fb1 = ra.frame_bounds_p2(ra.CustomGram(base), mu)
        fb2 = ra.frame_bounds_p2(ra.CustomGram(c * base), mu)
        assert fb2.lower == pytest.approx(c * fb1.lower, rel=1e-9)
        assert fb2.upper == pytest.approx(c * fb1.upper, rel=1e-9)
        assert fb2.upper / fb2.lower == pytest.approx(fb1.upper / fb1.lower, rel=1e-9)


class TestFrameRatioSample:
    def test_inside_eigen_bounds_and_converging(self):
        rng = np.random.default_rng(2)
        mu = random_measure(rng, 6)
        eig = ra.frame_bounds_p2(ra.Gaussian(2.0), mu)
        widths = []
        for n in (10, 100, 1000):
            fb = ra.frame_ratio_sample(ra.Gaussian(2.0), mu, p=2.0, n_samples=n, seed=5)
            assert fb.lower >= eig.lower - 1e-9
            assert fb.upper <= eig.upper + 1e-9
            widths.append((fb.lower - eig.lower) + (eig.upper - fb.upper))
        assert widths[-1] <= widths[0]

    def test_single_point_all_ratios_one(self):
        mu = ra.make_discrete_measure([[0.0, 0.0]], [1.0])
        for p in (1.0, 2.0, 3.5):
            fb = ra.frame_ratio_sample(ra.Gaussian(1.0), mu, p=p, n_samples=50, seed=0)
            assert fb.lower == pytest.approx(1.0, rel=1e-12)
            assert fb.upper == pytest.approx(1.0, rel=1e-12)

    def test_rank_deficient_span_keeps_ratios_finite(self):
        # two dependent sections: sampling happens inside the rank-1 span
        entries = np.ones((2, 2))
        fb = ra.frame_ratio_sample(ra.CustomGram(entries), _index_measure(2), 2.0, 200, seed=3)
        assert np.isfinite(fb.lower) and np.isfinite(fb.upper)
        assert fb.lower > 0

    def test_nested_seed_monotonicity(self):
        rng = np.random.default_rng(4)
        mu = random_disk_measure(rng, 5)
        lows, highs = [], []
        for n in (10, 50, 250):
            fb = ra.frame_ratio_sample(ra.Szego(), mu, p=2.0, n_samples=n, seed=11)
            lows.append(fb.lower)
            highs.append(fb.upper)
        assert lows[0] >= lows[1] >= lows[2]
        assert highs[0] <= highs[1] <= highs[2]

    def test_rejects_p_below_one(self):
        mu = ra.make_discrete_measure([[0.0]], [1.0])
        with pytest.raises(UnsupportedExponent):
            ra.frame_ratio_sample(ra.Gaussian(1.0), mu, p=0.5, n_samples=5, seed=0)


class TestNormEquivalenceReport:
    def test_single_point_p2(self):
        mu = ra.make_discrete_measure([[0.1]], [1.0])
        rep = ra.norm_equivalence_report(ra.Gaussian(1.0), mu, p=2.0, n_samples=20, seed=0)
        assert rep.c1 == pytest.approx(1.0, abs=1e-12)
        assert rep.c2 == pytest.approx(1.0, abs=1e-12)
        assert rep.full_rank

    def test_p2_constants_square_to_eigen_bounds(self):
        rng = np.random.default_rng(5)
        mu = random_measure(rng, 7)
        rep = ra.norm_equivalence_report(ra.Gaussian(2.0), mu, p=2.0, n_samples=400, seed=1)
        assert rep.c1**2 == pytest.approx(rep.eigen.lower, rel=1e-12)
        assert rep.c2**2 == pytest.approx(rep.eigen.upper, rel=1e-12)
        assert rep.sampled.lower >= rep.eigen.lower - 1e-9
        assert rep.sampled.upper <= rep.eigen.upper + 1e-9

    def test_rank_deficiency_is_reported(self):
        entries = np.ones((3, 3))
        rep = ra.norm_equivalence_report(ra.CustomGram(entries), _index_measure(3), 2.0, 50, 0)
        assert not rep.full_rank
        assert rep.rank == 1
        assert "rank-deficient" in rep.note

    def test_histogram_material_present(self):
        rng = np.random.default_rng(6)
        mu = random_measure(rng, 4)
        rep = ra.norm_equivalence_report(ra.Gaussian(2.0), mu, p=3.0, n_samples=64, seed=2)
        assert rep.ratios.shape == (64,)
        assert rep.eigen is None
        assert rep.c1 == pytest.approx(rep.sampled.lower ** (1 / 3), rel=1e-12)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from oracles import quad_moments, quad_overlap
from zenoloop.errors import DomainError, UndefinedMomentsError
from zenoloop.gaussian import (
    GaussianMixture,
    merge_and_prune,
    overlap,
    position_moments,
    position_pdf,
    sample_positions,
    shift,
    squared_norm,
)

finite = st.floats(-5, 5, allow_nan=False)
amplitude = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)


@st.composite
def mixtures(draw, max_size=5):
    k = draw(st.integers(1, max_size))
    sigma = draw(st.floats(0.3, 2.0))
    amps = draw(st.lists(amplitude, min_size=k, max_size=k))
    centers = draw(st.lists(finite, min_size=k, max_size=k))
    return GaussianMixture(sigma, amps, centers)


class TestOverlap:
    def test_identical(self):
        assert overlap(0.0, 0.0, 1.0) == 1.0

    @pytest.mark.parametrize("a,b,expected", [(1.0, -1.0, 0.6065306597126334), (3.0, 0.0, 0.32465246735834974)])
    def test_against_quadrature(self, a, b, expected):
        # frozen values: exp(-0.5), exp(-9/8); both also checked against quadrature
        assert abs(quad_overlap(a, b, 1.0) - expected) <= 1e-10
        assert overlap(a, b, 1.0) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("sigma", [0.0, -1.0, math.nan])
    def test_bad_sigma(self, sigma):
        with pytest.raises(DomainError):
            overlap(0, 1, sigma)

    @given(finite, finite, st.floats(0.5, 3))
    def test_symmetric_and_bounded(self, a, b, s):
        o = overlap(a, b, s)
        assert o == overlap(b, a, s)
        assert 0 < o <= 1
        if a == b:
            assert o == 1
        elif abs(a - b) > 1e-6 * s:  # below this exp() rounds to 1.0
            assert o < 1

    @given(st.floats(0, 4), st.floats(0.01, 1))
    def test_decreasing_in_distance(self, d, extra):
        assert overlap(0, d + extra, 1.0) < overlap(0, d, 1.0)


class TestSquaredNorm:
    def test_single(self):
        assert squared_norm(GaussianMixture.single(3.0, 0.7, amplitude=0.6 + 0.8j)) == pytest.approx(1.0)

    def test_pair_against_quadrature(self):
        m = GaussianMixture(1.0, [0.5, 0.5], [1.0, -1.0])
        expected = 0.25 + 0.25 + 0.5 * math.exp(-0.5)
        assert quad_moments([0.5, 0.5], [1.0, -1.0], 1.0)[0] == pytest.approx(expected, abs=1e-10)
        assert squared_norm(m) == pytest.approx(0.8032653298563167, abs=1e-12)

    def test_cancellation(self):
        assert squared_norm(GaussianMixture(1.0, [1, -1], [0.3, 0.3])) == 0.0

    @given(mixtures(), st.floats(-10, 10))
    def test_shift_invariant(self, m, d):
        assert squared_norm(shift(m, d)) == pytest.approx(squared_norm(m), abs=1e-12)

    @given(mixtures(), st.floats(0, 2 * math.pi))
    def test_global_phase_invariant(self, m, phase):
        assert squared_norm(m.scaled(np.exp(1j * phase))) == pytest.approx(squared_norm(m), abs=1e-12)

    def test_shift_random_five_component(self):
        rng = np.random.default_rng(0)
        m = GaussianMixture(1.0, rng.normal(size=5) + 1j * rng.normal(size=5), rng.normal(size=5))
        assert abs(squared_norm(shift(m, 3.7)) - squared_norm(m)) <= 1e-12


class TestPdf:
    def test_peak(self):
        m = GaussianMixture.single(1.5, 0.8)
        assert position_pdf(m, 1.5) == pytest.approx((2 * math.pi * 0.64) ** -0.5, rel=1e-14)

    def test_cancelled_mixture_is_zero(self):
        m = GaussianMixture(1.0, [1, -1], [0.0, 0.0])
        assert np.all(position_pdf(m, np.linspace(-3, 3, 11)) == 0)

    def test_pair_at_zero(self):
        m = GaussianMixture(1.0, [0.5, 0.5], [1.0, -1.0])
        expected = abs(0.5 * (2 * math.pi) ** -0.25 * math.exp(-0.25) * 2) ** 2
        assert position_pdf(m, 0.0) == pytest.approx(expected, abs=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(mixtures())
    def test_integrates_to_norm(self, m):
        s = m.width_sigma
        lo, hi = m.centers.min() - 10 * s, m.centers.max() + 10 * s
        val, _ = integrate.quad(lambda x: position_pdf(m, x), lo, hi, limit=400, epsabs=1e-13)
        assert val == pytest.approx(squared_norm(m), abs=1e-8)

    def test_vectorized_shape(self):
        m = GaussianMixture(1.0, [1, 1j], [0, 1])
        assert position_pdf(m, np.zeros((3, 4))).shape == (3, 4)


class TestMoments:
    def test_interference_can_narrow(self):
        m = GaussianMixture(1.0, [0.5j, -1j], [0.0, 1.0])
        _, qmean, qvar = quad_moments(m.amplitudes, m.centers, 1.0)
        mean, var = position_moments(m)
        assert var < 1.0
        assert (mean, var) == pytest.approx((qmean, qvar), rel=1e-9)

    def test_single(self):
        assert position_moments(GaussianMixture.single(2.0, 0.5)) == pytest.approx((2.0, 0.25))

    def test_symmetric_pair(self):
        mean, _ = position_moments(GaussianMixture(1.0, [0.3, 0.3], [-0.7, 0.7]))
        assert mean == pytest.approx(0.0, abs=1e-15)

    def test_weighted_pair_against_quadrature(self):
        th = math.pi / 8
        amps = [math.cos(th) ** 2, math.sin(th) ** 2]
        _, qmean, qvar = quad_moments(amps, [1.0, -1.0], 1.0)
        mean, var = position_moments(GaussianMixture(1.0, amps, [1.0, -1.0]))
        assert mean == pytest.approx(qmean, abs=1e-9)
        assert var == pytest.approx(qvar, abs=1e-9)

    @settings(max_examples=40, deadline=None)
    @given(mixtures(max_size=4))
    def test_against_quadrature(self, m):
        if squared_norm(m) < 1e-3:
            return
        n0, qmean, qvar = quad_moments(m.amplitudes, m.centers, m.width_sigma)
        mean, var = position_moments(m)
        assert mean == pytest.approx(qmean, rel=1e-8, abs=1e-8)
        assert var == pytest.approx(qvar, rel=1e-8)

    def test_zero_norm_raises(self):
        with pytest.raises(UndefinedMomentsError):
            position_moments(GaussianMixture(1.0, [1, -1], [0, 0]))


class TestMerge:
    def test_same_center(self):
        m, _ = merge_and_prune(GaussianMixture(1.0, [0.2, 0.5j], [1.0, 1.0]), 0.0, 0.0)
        assert len(m) == 1
        assert m.amplitudes[0] == pytest.approx(0.2 + 0.5j)
        assert m.centers[0] == 1.0

    def test_identity_on_distinct(self):
        src = GaussianMixture(1.0, [1, 2, 3], [-1.0, 0.0, 2.0])
        m, change = merge_and_prune(src, 0.0, 0.0)
        np.testing.assert_array_equal(m.amplitudes, src.amplitudes)
        np.testing.assert_array_equal(m.centers, src.centers)
        assert change == 0.0

    def test_floor_drops(self):
        m, _ = merge_and_prune(GaussianMixture(1.0, [1, 1e-15], [0.0, 5.0]), 0.0, 1e-12)
        assert len(m) == 1

    def test_jittered_cloud_collapses(self):
        rng = np.random.default_rng(3)
        base = np.repeat(np.arange(64) * 0.25, 16)
        centers = base + rng.normal(scale=1e-5, size=base.size)
        amps = rng.uniform(0.5, 1, size=base.size) / 32
        src = GaussianMixture(1.0, amps, centers)
        m, change = merge_and_prune(src, 1e-3, 0.0)
        assert len(src) == 1024 and len(m) <= 64
        exact_change = abs(squared_norm(m) - squared_norm(src))
        assert change == pytest.approx(exact_change) and change < 1e-6

    def test_negative_tolerance(self):
        with pytest.raises(DomainError):
            merge_and_prune(GaussianMixture.single(), -1.0, 0.0)


class TestMixtureType:
    def test_rejects_bad_width(self):
        with pytest.raises(DomainError):
            GaussianMixture(0.0, [1], [0])

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            GaussianMixture(1.0, [math.inf], [0])

    def test_immutable_arrays(self):
        m = GaussianMixture(1.0, [1], [0])
        with pytest.raises(ValueError):
            m.centers[0] = 3.0

    def test_components_view(self):
        m = GaussianMixture(1.0, [1, 2j], [0, 1])
        assert [c.center for c in m.components] == [0.0, 1.0]
        assert m.components[1].amplitude == 2j


def test_sampler_matches_moments():
    m = GaussianMixture(1.0, [0.7, 0.3], [2.0, -1.0])
    u = (np.arange(200000) + 0.5) / 200000
    x = sample_positions(m, u)
    mean, var = position_moments(m)
    assert x.mean() == pytest.approx(mean, abs=2e-4)
    assert x.var() == pytest.approx(var, rel=2e-3)

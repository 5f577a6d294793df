import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zenoloop.errors import DomainError
from zenoloop.polarization import (
    H,
    OBSERVABLE_HV,
    V,
    Port,
    PolarizationState,
    expectation,
    hwp,
    pbs_reflect_probability,
    pbs_route,
    pockels_rotate,
    polarizer_project,
    prepare,
)

angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)


def same_up_to_phase(a, b, tol=1e-12):
    return abs(abs(np.vdot(a.as_array(), b.as_array())) - 1.0) < tol


class TestPrepare:
    def test_h(self):
        assert prepare(0.0) == PolarizationState(1, 0)

    def test_v(self):
        s = prepare(math.pi / 2)
        assert abs(s.amp_h) < 1e-16 and s.amp_v == pytest.approx(1)

    def test_diagonal(self):
        s = prepare(math.pi / 4)
        assert (s.amp_h, s.amp_v) == pytest.approx((math.sqrt(2) / 2, math.sqrt(2) / 2))

    def test_nonfinite(self):
        with pytest.raises(DomainError):
            prepare(math.nan)


class TestExpectation:
    def test_h(self):
        assert expectation(H) == 1.0

    def test_diagonal(self):
        assert expectation(prepare(math.pi / 4)) == pytest.approx(0.0, abs=1e-15)

    def test_pi_over_8(self):
        s = prepare(math.pi / 8)
        direct = abs(s.amp_h) ** 2 - abs(s.amp_v) ** 2
        assert expectation(s, OBSERVABLE_HV) == pytest.approx(direct, abs=1e-15)
        assert expectation(s) == pytest.approx(0.7071067811865476, abs=1e-12)

    def test_unnormalized(self):
        with pytest.raises(DomainError):
            expectation(PolarizationState(1, 1))

    @given(angles)
    def test_complement_symmetry(self, th):
        assert expectation(prepare(th)) == pytest.approx(-expectation(prepare(math.pi / 2 - th)), abs=1e-12)


class TestHalfWavePlate:
    @given(angles)
    def test_prepares_theta_from_h(self, th):
        out = hwp(H, th / 2)
        assert same_up_to_phase(out, prepare(th))

    @given(angles)
    def test_involution(self, th):
        assert same_up_to_phase(hwp(prepare(th), th / 2), H)

    def test_norm_preserved(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            v /= np.linalg.norm(v)
            out = hwp(PolarizationState(*v), rng.uniform(-math.pi, math.pi))
            assert abs(out.squared_norm - 1.0) <= 1e-12
            assert abs(pockels_rotate(out).squared_norm - 1.0) <= 1e-12


class TestPolarizer:
    def test_h_through_h(self):
        out, p = polarizer_project(H, 0.0)
        assert out == H and p == 1.0

    def test_h_through_v(self):
        _, p = polarizer_project(H, math.pi / 2)
        assert p == pytest.approx(0.0, abs=1e-30)

    @given(angles)
    def test_protection_of_undisturbed_state(self, th):
        _, p = polarizer_project(prepare(th), th)
        assert p == pytest.approx(1.0, abs=1e-12)

    @given(angles, angles)
    def test_idempotent(self, th, a):
        first, p1 = polarizer_project(prepare(th), a)
        _, p2 = polarizer_project(first, a)
        assert 0 <= p1 <= 1
        assert p2 == pytest.approx(1.0, abs=1e-12)

    def test_unnormalized_input(self):
        _, p = polarizer_project(PolarizationState(2, 0), 0.0)
        assert p == 1.0

    def test_zero_norm(self):
        with pytest.raises(DomainError):
            polarizer_project(PolarizationState(0, 0), 0.3)


class TestPolarizingBeamSplitter:
    def test_h_transmits(self):
        rng = np.random.default_rng(0)
        assert all(pbs_route(H, 0.0, rng)[0] is Port.TRANSMIT for _ in range(1000))

    def test_v_reflects(self):
        rng = np.random.default_rng(0)
        assert all(pbs_route(V, 0.0, rng)[0] is Port.REFLECT for _ in range(1000))

    def test_crosstalk_frequency(self):
        rng = np.random.default_rng(12)
        n, eps = 100_000, 0.01
        hits = sum(pbs_route(H, eps, rng)[0] is Port.REFLECT for _ in range(n))
        assert abs(hits / n - eps) <= 3 * math.sqrt(eps * (1 - eps) / n)

    def test_output_is_nominal(self):
        rng = np.random.default_rng(1)
        port, out = pbs_route(prepare(0.3), 0.2, rng)
        assert out == (H if port is Port.TRANSMIT else V)

    def test_reflect_probability(self):
        assert pbs_reflect_probability(prepare(math.pi / 6), 0.1) == pytest.approx(0.75 * 0.1 + 0.25 * 0.9)

    @pytest.mark.parametrize("eps", [-0.1, 0.6])
    def test_bad_crosstalk(self, eps):
        with pytest.raises(DomainError):
            pbs_reflect_probability(H, eps)


def test_pockels_maps_h_to_v():
    assert same_up_to_phase(pockels_rotate(H), V)
    assert same_up_to_phase(pockels_rotate(V), H)

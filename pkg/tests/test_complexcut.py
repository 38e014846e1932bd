import cmath
import math

import pytest
from hypothesis import given, strategies as st

from zetadet import CutAngle, OnCutError, Sector, ZeroInputError, in_sector, log_cut, pow_cut
from zetadet.complexcut import TAU, ang_dist

PI = math.pi


class TestCutAngle:
    def test_normalization_window(self):
        assert CutAngle(-PI / 2).normalized == -PI / 2
        assert CutAngle(3 * PI / 2).normalized == 3 * PI / 2
        assert CutAngle(-2 * PI).normalized == -2 * PI

    def test_theta_and_theta_plus_two_pi_are_distinct(self):
        assert CutAngle(-PI / 2) != CutAngle(-PI / 2 + TAU)

    def test_equality_by_normalized_value(self):
        assert CutAngle(0.25) == CutAngle(0.25 + 2 * TAU)
        assert hash(CutAngle(0.25)) == hash(CutAngle(0.25 + 2 * TAU))


class TestLogCut:
    def test_principal_of_one(self):
        assert log_cut(1, -PI) == 0

    def test_imaginary_unit(self):
        assert log_cut(1j, -PI / 2) == pytest.approx(1j * PI / 2)

    def test_on_cut_raises(self):
        with pytest.raises(OnCutError):
            log_cut(-1, -PI)

    def test_zero_raises(self):
        with pytest.raises(ZeroInputError):
            log_cut(0, -PI)

    def test_angular_tolerance_widens_the_cut(self):
        lam = cmath.exp(1j * (-PI + 1e-6))
        log_cut(lam, -PI)  # off the exact ray: fine
        with pytest.raises(OnCutError):
            log_cut(lam, -PI, on_cut_tol=1e-3)

    def test_branch_shift_across_the_ray(self):
        # same ray direction, windows one turn apart: logs differ by 2*pi*i
        low = log_cut(1.0, -PI / 2)
        high = log_cut(1.0, 3 * PI / 2)
        assert high - low == pytest.approx(2j * PI)


class TestPowCut:
    def test_inverse_of_i(self):
        assert pow_cut(1j, 1, -PI / 2) == pytest.approx(-1j)

    def test_sqrt_of_four(self):
        assert pow_cut(4, 0.5, -PI) == pytest.approx(0.5)

    def test_negative_base(self):
        # log_{-pi/2}(-2) = ln 2 + i*pi, so (-2)^{-1} = -1/2 on this branch
        assert pow_cut(-2, 1, -PI / 2) == pytest.approx(-0.5)


nonzero_complex = st.builds(
    complex,
    st.floats(-10, 10, allow_nan=False),
    st.floats(-10, 10, allow_nan=False),
).filter(lambda z: abs(z) > 1e-6)

angles = st.floats(-2 * PI, 2 * PI - 1e-9, allow_nan=False)


@given(nonzero_complex, angles)
def test_log_cut_inverts_exp(lam, theta):
    try:
        w = log_cut(lam, theta)
    except OnCutError:
        return
    assert cmath.exp(w) == pytest.approx(lam, rel=1e-12, abs=1e-12)
    assert theta < w.imag < theta + TAU


@given(nonzero_complex, angles, angles)
def test_log_cut_angle_difference_is_zero_or_full_turn(lam, t1, t2):
    lo, hi = sorted((t1, t2))
    if hi - lo >= TAU:
        return
    try:
        wl = log_cut(lam, lo)
        wh = log_cut(lam, hi)
    except OnCutError:
        return
    diff = wh - wl
    assert diff.real == pytest.approx(0.0, abs=1e-12)
    crossed = lo < wl.imag <= hi
    expected = TAU if crossed else 0.0
    assert diff.imag == pytest.approx(expected, abs=1e-9)


@given(nonzero_complex, angles)
def test_pow_cut_at_zero_exponent(lam, theta):
    try:
        assert pow_cut(lam, 0, theta) == 1
    except OnCutError:
        pass


@given(
    nonzero_complex,
    angles,
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
)
def test_pow_cut_exponent_additivity(lam, theta, s1, s2):
    try:
        lhs = pow_cut(lam, s1 + s2, theta)
        rhs = pow_cut(lam, s1, theta) * pow_cut(lam, s2, theta)
    except OnCutError:
        return
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


class TestSector:
    def test_upper_half_plane(self):
        assert in_sector(1j, Sector(0.0, PI))

    def test_origin_excluded(self):
        assert not in_sector(0, Sector(0.0, PI))
        assert not in_sector(0, Sector(-PI, PI, True, True))

    def test_closed_endpoint(self):
        s = Sector(-PI / 2, PI / 2, hi_closed=True)
        assert in_sector(cmath.exp(1j * PI / 2), s)
        assert not in_sector(cmath.exp(-1j * PI / 2), s)

    def test_open_endpoints(self):
        s = Sector(0.0, PI / 2)
        assert not s.contains(1.0)
        assert not s.contains(1j)
        assert s.contains(1 + 1j)

    def test_invalid_bounds(self):
        with pytest.raises(ValueError):
            Sector(1.0, 1.0)
        with pytest.raises(ValueError):
            Sector(0.0, 7.0)


def test_ang_dist_symmetry():
    assert ang_dist(-PI, PI) == pytest.approx(0.0)
    assert ang_dist(0.0, PI) == pytest.approx(PI)
    assert ang_dist(0.1, -0.2) == pytest.approx(0.3)

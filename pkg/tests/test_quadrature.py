import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from detmaps import QuadratureEvalError, Region, integrate_2d, riemann_oracle, wightman


def const_one(x, y):
    return np.ones_like(x, dtype=complex)


def osc(x, y):
    return np.exp(1j * (x + y))


# (integral of e^{i tau} over [0, pi])^2 = (2i)^2
OSC_CLOSED_FORM = -4.0 + 0.0j


def test_unit_constant_over_unit_square():
    res = integrate_2d(const_one, Region.rect(0, 1, 0, 1))
    assert res.converged
    assert res.value == pytest.approx(1.0 + 0.0j, abs=1e-12)


def test_unit_constant_over_lower_triangle():
    res = integrate_2d(const_one, Region.lower_triangle(0, 1))
    assert res.converged
    assert res.value == pytest.approx(0.5 + 0.0j, abs=1e-12)


def test_oscillatory_closed_form():
    res = integrate_2d(osc, Region.rect(0, math.pi, 0, math.pi))
    assert res.converged
    assert abs(res.value - OSC_CLOSED_FORM) < 1e-8
    assert abs(res.value - OSC_CLOSED_FORM) <= max(res.err_estimate, 1e-12)


@given(
    st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False),
)
@settings(max_examples=40, deadline=None)
def test_bilinear_integrands_are_exact(c0, cx, cy):
    # Tensor Gauss-Kronrod is exact for polynomials; closed form over [0,2]x[0,1]:
    # integral of c0 + cx*x + cy*x*y.
    def f(x, y):
        return c0 + cx * x + cy * x * y

    expected = c0 * 2.0 + cx * 2.0 + cy * 1.0
    res = integrate_2d(f, Region.rect(0, 2, 0, 1))
    assert abs(res.value - expected) < 1e-10 * (1.0 + abs(expected))


def test_additivity_over_bisected_quadrants(params):
    def f(t1, t2):
        return np.exp(1j * (t1 - t2)) * wightman("II", t1, t2, 0.0, params)

    whole = integrate_2d(f, Region.rect(-1, 0, -1, 0), diag_eps=params.epsilon)
    parts = [
        integrate_2d(f, Region.rect(x0, x1, y0, y1), diag_eps=params.epsilon)
        for x0, x1 in ((-1.0, -0.5), (-0.5, 0.0))
        for y0, y1 in ((-1.0, -0.5), (-0.5, 0.0))
    ]
    budget = whole.err_estimate + sum(p.err_estimate for p in parts)
    assert abs(whole.value - sum(p.value for p in parts)) <= budget + 1e-12


def test_conjugation_exactness(params):
    def f(t1, t2):
        return np.exp(1j * (t1 + 0.5 * t2)) * wightman("II", t1, t2, 0.0, params)

    direct = integrate_2d(f, Region.rect(-1, 0, -1, 0), diag_eps=params.epsilon)
    conjugated = integrate_2d(lambda x, y: np.conj(f(x, y)), Region.rect(-1, 0, -1, 0),
                              diag_eps=params.epsilon)
    assert abs(conjugated.value - direct.value.conjugate()) < 1e-12


def test_triangle_halves_sum_to_square():
    def f(x, y):
        return np.exp(1j * (0.7 * x - 0.3 * y))

    lower = integrate_2d(f, Region.lower_triangle(0, 2))
    upper = integrate_2d(lambda x, y: f(y, x), Region.lower_triangle(0, 2))
    square = integrate_2d(f, Region.rect(0, 2, 0, 2))
    assert abs(lower.value + upper.value - square.value) < 1e-8


def test_max_depth_exhaustion_reports_non_convergence(params):
    def f(t1, t2):
        return wightman("II", t1, t2, 0.0, params)

    res = integrate_2d(f, Region.rect(-1, 0, -1, 0), rel_tol=1e-14, abs_tol=1e-16, max_depth=0)
    assert not res.converged
    assert res.err_estimate > 0.0


def test_non_finite_sample_is_reported_with_location():
    def f(x, y):
        return np.where(x > 0.5, np.nan, 1.0) + 0.0j

    with pytest.raises(QuadratureEvalError) as err:
        integrate_2d(f, Region.rect(0, 1, 0, 1))
    assert err.value.point[0] > 0.5


def test_region_validation():
    with pytest.raises(ValueError):
        Region.rect(1, 0, 0, 1)
    with pytest.raises(ValueError):
        Region("lower_triangle", 0, 1, 0, 2)
    with pytest.raises(ValueError):
        Region("hexagon", 0, 1, 0, 1)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        integrate_2d(const_one, Region.rect(0, 1, 0, 1), rel_tol=0.0)


# --- midpoint oracle ---------------------------------------------------------


def test_oracle_unit_constant():
    assert riemann_oracle(const_one, Region.rect(0, 1, 0, 1), 10) == pytest.approx(1.0 + 0.0j, abs=1e-15)


def test_oracle_oscillatory_convergence():
    assert abs(riemann_oracle(osc, Region.rect(0, math.pi, 0, math.pi), 400) - OSC_CLOSED_FORM) < 1e-4


def test_oracle_triangle_half_area():
    assert abs(riemann_oracle(const_one, Region.lower_triangle(0, 1), 1000) - 0.5) < 1e-3


def test_oracle_midpoint_second_order():
    # Halving the cell size must shrink the error by about four.
    errors = [abs(riemann_oracle(osc, Region.rect(0, math.pi, 0, math.pi), n) - OSC_CLOSED_FORM)
              for n in (50, 100, 200, 400)]
    for coarse, fine in zip(errors, errors[1:]):
        assert fine < coarse / 2.0


def test_oracle_needs_two_cells():
    with pytest.raises(ValueError):
        riemann_oracle(const_one, Region.rect(0, 1, 0, 1), 1)


def test_oracle_rejects_non_finite():
    def f(x, y):
        return np.where((x > 0.4) & (y > 0.4), np.inf, 0.0) + 0.0j

    with pytest.raises(QuadratureEvalError):
        riemann_oracle(f, Region.rect(0, 1, 0, 1), 8)

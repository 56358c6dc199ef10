import math

import pytest
from hypothesis import given, settings, strategies as st

from detmaps import Segment, kinematics
from detmaps.trajectory import coshm1_scaled, sinh_scaled

# Frozen from 50-digit evaluation of sinh(1) and cosh(1) - 1.
SINH_1 = 1.1752011936438014
COSH_1_MINUS_1 = 0.54308063481524378


def test_inertial_worldline_is_rest_at_origin():
    kin = kinematics(Segment.inertial(), 1.5)
    assert (kin.t, kin.x, kin.tdot, kin.xdot) == (1.5, 0.0, 1.0, 0.0)


def test_accelerated_at_origin():
    kin = kinematics(Segment.accelerated(2.0), 0.0)
    assert (kin.t, kin.x, kin.tdot, kin.xdot) == (0.0, 0.0, 1.0, 0.0)


def test_accelerated_unit_rate_unit_time():
    kin = kinematics(Segment.accelerated(1.0), 1.0)
    assert kin.t == pytest.approx(SINH_1, abs=1e-14)
    assert kin.x == pytest.approx(COSH_1_MINUS_1, abs=1e-14)
    assert kin.tdot == pytest.approx(1.0 + COSH_1_MINUS_1, abs=1e-14)
    assert kin.xdot == pytest.approx(SINH_1, abs=1e-14)


@given(st.floats(-4.0, 4.0), st.floats(0.1, 4.0))
@settings(max_examples=200, deadline=None)
def test_four_velocity_unit_norm(tau, a):
    # Keep the rapidity below ~4 so the identity is representable in doubles.
    tau = tau / a
    assert kinematics(Segment.accelerated(a), tau).norm_defect < 1e-12


def test_four_velocity_norm_scaled_at_large_rapidity():
    for a, tau in ((4.0, 3.0), (2.0, 6.0), (3.0, -4.0)):
        kin = kinematics(Segment.accelerated(a), tau)
        assert kin.norm_defect / kin.tdot**2 < 1e-12


def test_junction_continuity():
    acc = kinematics(Segment.accelerated(3.0), 0.0)
    inr = kinematics(Segment.inertial(), 0.0)
    assert (acc.t, acc.x, acc.tdot, acc.xdot) == (inr.t, inr.x, inr.tdot, inr.xdot)


def test_small_acceleration_series_limit():
    a = 1e-7
    for tau in (0.25, 0.5, 1.0):
        kin = kinematics(Segment.accelerated(a), tau)
        assert abs(kin.x - a * tau * tau / 2.0) < 1e-14
        assert abs(kin.t - tau) < 1e-14


def test_scaled_hyperbolics_match_direct_evaluation_above_threshold():
    for a, tau in ((0.5, 1.3), (3.0, -0.7), (1e-5, 2.0)):
        assert sinh_scaled(a, tau) == pytest.approx(math.sinh(a * tau) / a, rel=1e-13)
        assert coshm1_scaled(a, tau) == pytest.approx((math.cosh(a * tau) - 1.0) / a, rel=1e-10)


def test_series_branch_avoids_cancellation():
    a, tau = 1e-9, 1.0
    # Direct evaluation of (cosh - 1)/a returns 0 here; the series keeps
    # the leading a*tau^2/2 term.
    assert coshm1_scaled(a, tau) == pytest.approx(a * tau * tau / 2.0, rel=1e-12)


def test_domain_errors():
    with pytest.raises(ValueError):
        Segment.accelerated(0.0)
    with pytest.raises(ValueError):
        Segment.accelerated(-1.0)
    with pytest.raises(ValueError):
        Segment.accelerated(math.inf)
    with pytest.raises(ValueError):
        Segment("inertial", 2.0)
    with pytest.raises(ValueError):
        kinematics(Segment.inertial(), math.nan)
    with pytest.raises(ValueError):
        kinematics(Segment.accelerated(1.0), math.inf)

import pytest

from detmaps import DetectorParams, QuadConfig, TrajectoryPlan, correlator_set

STANDARD_PLAN = TrajectoryPlan(inertial_duration=1.0, acceleration=3.0, accel_duration=1.0)


@pytest.fixture(scope="session")
def params():
    return DetectorParams(omega=1.0, epsilon=0.025, coupling_abs=0.05, coupling_phase=0.0)


@pytest.fixture(scope="session")
def quad_cfg():
    return QuadConfig()


@pytest.fixture(scope="session")
def standard_plan():
    return STANDARD_PLAN


@pytest.fixture(scope="session")
def standard_corr(params, quad_cfg):
    """Correlators for the workhorse scenario t = T = 1, a = 3."""
    return correlator_set(STANDARD_PLAN, params, quad_cfg)

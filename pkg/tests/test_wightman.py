import math

import numpy as np
import pytest

from detmaps import DetectorParams, coincidence_value, wightman

EPS = 0.025


@pytest.fixture(scope="module")
def det():
    return DetectorParams(omega=1.0, epsilon=EPS)


def test_coincidence_closed_form(det):
    target = 1.0 / (16.0 * math.pi**2 * EPS**2)
    assert coincidence_value(EPS) == pytest.approx(target, rel=1e-15)
    assert target == pytest.approx(10.1321, abs=5e-5)
    value = wightman("II", 0.7, 0.7, 0.0, det)
    assert value.real == pytest.approx(target, rel=1e-12)
    assert value.imag == pytest.approx(0.0, abs=1e-12)


def test_all_kernels_agree_at_origin(det):
    target = coincidence_value(EPS)
    for pair, a in (("II", 0.0), ("AA", 3.0), ("IA", 2.0), ("AI", 2.0)):
        value = wightman(pair, 0.0, 0.0, a, det)
        assert abs(value - target) / target < 1e-12


def test_equal_time_accelerated_is_coincidence(det):
    value = wightman("AA", 0.7, 0.7, 3.0, det)
    assert abs(value - coincidence_value(EPS)) / coincidence_value(EPS) < 1e-12


def test_cross_kernels_conjugate_on_grid(det):
    grid = np.linspace(-2.0, 2.0, 20)
    t1, t2 = np.meshgrid(grid, grid)
    for a in (1.0, 3.0):
        ai = wightman("AI", t1, t2, a, det)
        ia = wightman("IA", t2, t1, a, det)
        assert np.max(np.abs(ai - np.conj(ia))) < 1e-12


def test_same_segment_kernels_hermitian(det):
    grid = np.linspace(-2.0, 2.0, 12)
    t1, t2 = np.meshgrid(grid, grid)
    for pair, a in (("II", 0.0), ("AA", 2.5)):
        forward = wightman(pair, t1, t2, a, det)
        backward = wightman(pair, t2, t1, a, det)
        assert np.max(np.abs(forward - np.conj(backward))) < 1e-12


def test_vanishing_acceleration_reduces_to_inertial(det):
    grid = np.linspace(-2.0, 2.0, 9)
    t1, t2 = np.meshgrid(grid, grid)
    inertial = wightman("II", t1, t2, 0.0, det)
    for pair in ("AA", "IA", "AI"):
        value = wightman(pair, t1, t2, 1e-7, det)
        assert np.max(np.abs(value - inertial) / np.abs(inertial)) < 1e-5


def test_bounded_by_coincidence_and_decaying(det):
    bound = coincidence_value(EPS) * (1.0 + 1e-9)
    for pair, a in (("II", 0.0), ("AA", 3.0), ("IA", 2.0), ("AI", 2.0)):
        assert abs(wightman(pair, 0.0, 0.0, a, det)) <= bound
    deltas = np.linspace(0.0, 3.0, 60)
    magnitudes = np.abs(wightman("II", deltas, np.zeros_like(deltas), 0.0, det))
    assert magnitudes[0] <= bound
    assert np.all(np.diff(magnitudes) < 0.0)


def test_pair_and_acceleration_validation(det):
    with pytest.raises(ValueError):
        wightman("XX", 0.0, 0.0, 1.0, det)
    for pair in ("AA", "IA", "AI"):
        with pytest.raises(ValueError):
            wightman(pair, 0.0, 0.0, 0.0, det)


def test_params_validation():
    with pytest.raises(ValueError):
        DetectorParams(omega=0.0, epsilon=EPS)
    with pytest.raises(ValueError):
        DetectorParams(omega=1.0, epsilon=0.0)
    with pytest.raises(ValueError):
        DetectorParams(omega=1.0, epsilon=EPS, coupling_abs=-0.1)
    with pytest.raises(ValueError):
        DetectorParams(omega=1.0, epsilon=EPS, coupling_phase=math.nan)


def test_coupling_from_polar_form():
    det = DetectorParams(omega=1.0, epsilon=EPS, coupling_abs=0.1, coupling_phase=math.pi / 2)
    assert det.coupling == pytest.approx(0.1j, abs=1e-17)

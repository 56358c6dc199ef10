import numpy as np
import pytest

from detmaps import (
    DetectorParams,
    QuadConfig,
    Region,
    TrajectoryPlan,
    correlator_set,
    correlator_value,
    inertial_block,
    integrate_2d,
    oracle_value,
    time_ordered_value,
    wightman,
)
from detmaps.correlators import SIGN_PAIRS, pair_domain


def test_zero_inertial_duration_blanks_cross_and_inertial(params, quad_cfg):
    corr = correlator_set(TrajectoryPlan(0.0, 3.0, 1.0), params, quad_cfg)
    for pair in ("II", "IA", "AI"):
        for signs in SIGN_PAIRS:
            assert corr.plain[pair, signs] == 0.0
    assert corr.time_ordered["II", (1, -1)] == 0.0
    assert any(corr.plain["AA", signs] != 0.0 for signs in SIGN_PAIRS)


def test_zero_accel_duration_keeps_only_inertial(params, quad_cfg):
    corr = correlator_set(TrajectoryPlan(1.0, 3.0, 0.0), params, quad_cfg)
    for pair in ("AA", "IA", "AI"):
        for signs in SIGN_PAIRS:
            assert corr.plain[pair, signs] == 0.0
    assert all(corr.plain["II", signs] != 0.0 for signs in SIGN_PAIRS)


def test_opposite_sign_values_are_real(standard_corr):
    tol = standard_corr.tol_real
    for pair in ("II", "AA"):
        assert abs(standard_corr.plain[pair, (1, -1)].imag) < tol
        assert abs(standard_corr.plain[pair, (-1, 1)].imag) < tol


def test_time_ordered_real_part_equals_plain(standard_corr):
    tol = standard_corr.tol_real
    for pair in ("II", "AA"):
        for signs in ((1, -1), (-1, 1)):
            assert abs(standard_corr.time_ordered[pair, signs].real
                       - standard_corr.plain[pair, signs]) < tol


def test_cross_values_pair_under_conjugation(standard_corr):
    # plain[IA][(s1, s2)] == conj(plain[AI][(-s2, -s1)]); for the mixed
    # sign pairs the partner carries the same signs.
    tol = standard_corr.tol_real
    for signs in SIGN_PAIRS:
        mirror = (-signs[1], -signs[0])
        assert abs(standard_corr.plain["IA", signs]
                   - standard_corr.plain["AI", mirror].conjugate()) < tol


def test_all_checks_recorded_and_passing(standard_corr):
    assert standard_corr.converged
    assert standard_corr.checks
    assert standard_corr.checks_passed
    assert standard_corr.err > 0.0


def test_matches_midpoint_oracle(params):
    cfg = QuadConfig()
    plan = TrajectoryPlan(0.5, 2.0, 0.5)
    corr = correlator_set(plan, params, cfg)
    for pair in ("II", "AA", "IA", "AI"):
        for signs in SIGN_PAIRS:
            adaptive = corr.plain[pair, signs]
            oracle = oracle_value(pair, signs, plan, params, 600)
            assert abs(adaptive - oracle) < 1e-3 * (abs(adaptive) + 1.0)
    for pair in ("II", "AA"):
        for signs in ((1, -1), (-1, 1)):
            adaptive = corr.time_ordered[pair, signs]
            oracle = oracle_value(pair, signs, plan, params, 600, ordered=True)
            assert abs(adaptive - oracle) < 1e-3 * (abs(adaptive) + 1.0)


def test_oracle_error_shrinks_as_grid_doubles(params):
    plan = TrajectoryPlan(0.5, 2.0, 0.5)
    reference = correlator_value("II", (1, -1), plan, params)
    errors = [abs(oracle_value("II", (1, -1), plan, params, n) - reference)
              for n in (75, 150, 300, 600)]
    for coarse, fine in zip(errors, errors[1:]):
        assert fine < coarse


def test_domain_additivity_for_inertial_block(params, quad_cfg):
    # The II correlator over [-1.5, 0]^2 equals the sum over the four
    # sub-rectangles split at -0.5 on both axes.
    def f(t1, t2):
        return np.exp(1j * params.omega * (t1 - t2)) * wightman("II", t1, t2, 0.0, params)

    whole = integrate_2d(f, Region.rect(-1.5, 0, -1.5, 0), diag_eps=params.epsilon)
    total = 0.0 + 0.0j
    budget = whole.err_estimate
    for x0, x1 in ((-1.5, -0.5), (-0.5, 0.0)):
        for y0, y1 in ((-1.5, -0.5), (-0.5, 0.0)):
            part = integrate_2d(f, Region.rect(x0, x1, y0, y1), diag_eps=params.epsilon)
            total += part.value
            budget += part.err_estimate
    assert abs(whole.value - total) <= budget + 1e-12


def test_vanishing_acceleration_matches_inertial_kernel(params, quad_cfg):
    plan = TrajectoryPlan(1.0, 1e-4, 1.0)

    def ii_kernel(pair, t1, t2, a, p):
        return wightman("II", t1, t2, 0.0, p)

    actual = correlator_set(plan, params, quad_cfg)
    reference = correlator_set(plan, params, quad_cfg, kernel_fn=ii_kernel)
    for pair in ("AA", "IA", "AI"):
        for signs in SIGN_PAIRS:
            ref = reference.plain[pair, signs]
            assert abs(actual.plain[pair, signs] - ref) < 1e-4 * abs(ref)


def test_pair_domains(standard_plan):
    assert pair_domain("II", standard_plan) == ((-1.0, 0.0), (-1.0, 0.0))
    assert pair_domain("AA", standard_plan) == ((0.0, 1.0), (0.0, 1.0))
    assert pair_domain("IA", standard_plan) == ((-1.0, 0.0), (0.0, 1.0))
    assert pair_domain("AI", standard_plan) == ((0.0, 1.0), (-1.0, 0.0))


def test_inertial_block_matches_plan_based_values(params, quad_cfg):
    block = inertial_block(-1.0, 0.0, params, quad_cfg)
    plan = TrajectoryPlan(1.0, 3.0, 0.0)
    for signs in SIGN_PAIRS:
        assert block.plain[signs] == pytest.approx(
            correlator_value("II", signs, plan, params, quad_cfg), abs=1e-10)
    for signs in ((1, -1), (-1, 1)):
        assert block.time_ordered[signs] == pytest.approx(
            time_ordered_value("II", signs, plan, params, quad_cfg), abs=1e-10)


def test_time_ordered_rejects_cross_pairs_and_like_signs(params, standard_plan):
    with pytest.raises(ValueError):
        time_ordered_value("IA", (1, -1), standard_plan, params)
    with pytest.raises(ValueError):
        time_ordered_value("II", (1, 1), standard_plan, params)


def test_plan_and_config_validation():
    with pytest.raises(ValueError):
        TrajectoryPlan(-0.1, 1.0, 1.0)
    with pytest.raises(ValueError):
        TrajectoryPlan(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        TrajectoryPlan(1.0, 1.0, float("inf"))
    with pytest.raises(ValueError):
        QuadConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadConfig(max_depth=-1)

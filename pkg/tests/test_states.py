import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from detmaps import (
    BlochAngles,
    DetectorParams,
    PerturbativeValidityWarning,
    TrajectoryPlan,
    assemble_state,
    coefficients,
    density_checks,
    inertial_block,
    inertial_interval_coefficients,
    oracle_value,
)
from detmaps.states import INI_COEFFICIENTS, CoefficientSet


def test_switch_on_coefficients():
    c = coefficients("ini", None, None)
    assert (c.alpha, c.beta, c.gamma, c.eta) == (1.0, 0.0, 1.0, 0.0)
    assert c.kappa == 1.0 + 0.0j
    assert c.lam == 0.0 + 0.0j
    assert c.tag == "ini"


def test_zero_coupling_reproduces_switch_on(standard_corr, params):
    free = DetectorParams(params.omega, params.epsilon, 0.0)
    for tag in ("inertial", "accelerated", "combined"):
        c = coefficients(tag, standard_corr, free)
        assert (c.alpha, c.beta, c.gamma, c.eta) == (1.0, 0.0, 1.0, 0.0)
        assert c.kappa == 1.0 + 0.0j
        assert c.lam == 0.0 + 0.0j


def test_trace_identities(standard_corr, params):
    for tag in ("inertial", "accelerated", "combined"):
        assert coefficients(tag, standard_corr, params).trace_dev < 1e-8


def test_populations_nonnegative_and_perturbatively_small(standard_corr, params):
    for tag in ("inertial", "accelerated", "combined"):
        c = coefficients(tag, standard_corr, params)
        assert -1e-8 <= c.beta <= 0.05
        assert -1e-8 <= c.eta <= 0.05


def test_unknown_tag_and_missing_correlators(standard_corr, params):
    with pytest.raises(ValueError):
        coefficients("thermal", standard_corr, params)
    with pytest.raises(ValueError):
        coefficients("combined", None, params)


def test_perturbative_guard_warns(standard_corr, params):
    strong = DetectorParams(params.omega, params.epsilon, 5.0)
    with pytest.warns(PerturbativeValidityWarning):
        coefficients("combined", standard_corr, strong)


def test_excitation_probability_matches_oracle(standard_corr, standard_plan, params):
    eta = coefficients("accelerated", standard_corr, params).eta
    oracle = params.coupling_abs**2 * oracle_value("AA", (-1, 1), standard_plan, params, 600).real
    assert abs(eta - oracle) / abs(oracle) < 1e-3


def test_interval_coefficients_match_plan_coefficients(standard_corr, params, quad_cfg):
    # The inertial block over [-1, 0] must reproduce the inertial scenario.
    block = inertial_block(-1.0, 0.0, params, quad_cfg)
    from_block = inertial_interval_coefficients(block, params)
    from_plan = coefficients("inertial", standard_corr, params)
    assert from_block.alpha == pytest.approx(from_plan.alpha, abs=1e-12)
    assert from_block.beta == pytest.approx(from_plan.beta, abs=1e-12)
    assert from_block.kappa == pytest.approx(from_plan.kappa, abs=1e-12)
    assert from_block.lam == pytest.approx(from_plan.lam, abs=1e-12)


def test_assemble_reference_angles():
    ini = INI_COEFFICIENTS
    assert np.allclose(assemble_state(ini, BlochAngles(0.0, 0.0)), np.diag([1.0, 0.0]))
    assert np.allclose(assemble_state(ini, BlochAngles(math.pi, 0.0)), np.diag([0.0, 1.0]), atol=1e-16)
    rho = assemble_state(ini, BlochAngles(math.pi / 2.0, 0.0))
    assert np.allclose(rho, 0.5 * np.ones((2, 2)), atol=1e-15)


def test_assembled_states_are_density_matrices(standard_corr, params):
    for tag in ("inertial", "combined"):
        c = coefficients(tag, standard_corr, params)
        for theta in (0.4, 1.6, 2.8):
            for phi in (0.0, 2.1, 5.0):
                report = density_checks(assemble_state(c, BlochAngles(theta, phi)))
                assert report.trace_dev < 1e-8
                assert report.herm_dev < 1e-14
                assert report.min_eig > -1e-8


@given(st.floats(0.0, 1.0), st.floats(0.0, math.pi), st.floats(0.0, 6.28))
@settings(max_examples=60, deadline=None)
def test_assembly_linear_in_coefficients(weight, theta, phi):
    c1 = INI_COEFFICIENTS
    c2 = CoefficientSet(0.9, 0.1, 0.8, 0.2, 0.7 + 0.1j, 0.05 - 0.02j, "combined")
    mixed = CoefficientSet(
        weight * c1.alpha + (1 - weight) * c2.alpha,
        weight * c1.beta + (1 - weight) * c2.beta,
        weight * c1.gamma + (1 - weight) * c2.gamma,
        weight * c1.eta + (1 - weight) * c2.eta,
        weight * c1.kappa + (1 - weight) * c2.kappa,
        weight * c1.lam + (1 - weight) * c2.lam,
        "combined",
    )
    angles = BlochAngles(theta, phi)
    direct = assemble_state(mixed, angles)
    combined = weight * assemble_state(c1, angles) + (1 - weight) * assemble_state(c2, angles)
    assert np.max(np.abs(direct - combined)) < 1e-14


def test_density_checks_reference_values():
    report = density_checks(np.diag([1.0, 0.0]).astype(complex))
    assert (report.trace_dev, report.herm_dev, report.min_eig) == (0.0, 0.0, 0.0)

    rho = np.array([[0.6, 0.1j], [-0.1j, 0.4]], dtype=complex)
    report = density_checks(rho)
    assert report.trace_dev == 0.0
    assert report.herm_dev == 0.0
    # 2x2 closed form: 0.5 - sqrt(0.01 + 0.01), frozen.
    assert report.min_eig == pytest.approx(0.35857864376269049, abs=1e-15)

    report = density_checks(np.diag([1.1, -0.1]).astype(complex))
    assert report.trace_dev == pytest.approx(0.0, abs=1e-15)
    assert report.min_eig == pytest.approx(-0.1, abs=1e-15)


def test_bloch_angles_validation():
    with pytest.raises(ValueError):
        BlochAngles(-0.1, 0.0)
    with pytest.raises(ValueError):
        BlochAngles(0.1, 2.0 * math.pi)


def test_plan_requires_nonnegative_durations():
    with pytest.raises(ValueError):
        TrajectoryPlan(1.0, -3.0, 1.0)

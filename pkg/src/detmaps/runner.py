"""Scenario orchestration: pipeline runs, sweeps, scans, and verification.

Everything here is CLI-agnostic; the CLI binds these functions to
subcommands and exit codes. Output files follow a bit-exact contract:
CSV with a header row, comma separator, '.' decimal, floats printed with
17 significant digits, LF line endings.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import correlators as corrmod
from . import maps as mapsmod
from . import quadrature as quadmod
from . import states as statesmod
from . import trajectory as trajmod
from .config import ScenarioConfig
from .correlators import (
    ORDERED_SIGN_PAIRS,
    SIGN_PAIRS,
    CheckResult,
    QuadConfig,
    TrajectoryPlan,
    correlator_set,
    inertial_block,
    oracle_value,
)
from .states import BlochAngles, assemble_state, coefficients, density_checks, inertial_interval_coefficients
from .wightman import DetectorParams, coincidence_value, wightman

__all__ = [
    "ScenarioResult",
    "RunReport",
    "scenario_result",
    "sweep_rows",
    "bloch_scan",
    "oracle_rows",
    "verify",
    "format_float",
    "write_csv",
    "PARALLEL_ENV_VAR",
]

PARALLEL_ENV_VAR = "DETMAPS_JOBS"

ANGLE_GRID = [(theta, phi) for theta in np.linspace(0.0, math.pi, 13)
              for phi in np.linspace(0.0, 2.0 * math.pi, 12, endpoint=False)]


def format_float(x: float) -> str:
    return f"{x:.17g}"


def write_csv(path: Path, header, rows) -> None:
    """Write rows of already-stringified cells with the fixed CSV contract."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _matrix_json(m: np.ndarray) -> list:
    return [[_complex_json(complex(v)) for v in row] for row in np.asarray(m)]


@dataclass(frozen=True)
class ScenarioResult:
    """One scenario pushed through correlators -> coefficients -> map."""

    plan: TrajectoryPlan
    corr: corrmod.CorrelatorSet
    coeffs_from: statesmod.CoefficientSet
    coeffs_to: statesmod.CoefficientSet
    a_matrix: np.ndarray
    b_matrix: np.ndarray
    report: mapsmod.CPReport

    @property
    def map_endpoints(self) -> tuple:
        return (self.coeffs_from.tag, self.coeffs_to.tag)


def scenario_result(plan: TrajectoryPlan, params: DetectorParams, cfg: QuadConfig,
                    kernel_fn=wightman) -> ScenarioResult:
    """Map of interest for a scenario.

    With accel_duration > 0 this is the map from the state at acceleration
    switch-on to the final state (from-ini when there is no inertial phase).
    With accel_duration == 0 it is the map from switch-on across the
    inertial phase.
    """
    corr = correlator_set(plan, params, cfg, kernel_fn)
    if plan.accel_duration > 0.0:
        tag_from = "ini" if plan.inertial_duration == 0.0 else "inertial"
        tag_to = "accelerated" if plan.inertial_duration == 0.0 else "combined"
        coeffs_from = coefficients("ini", None, params) if tag_from == "ini" else coefficients("inertial", corr, params)
        coeffs_to = coefficients(tag_to, corr, params)
    else:
        coeffs_from = coefficients("ini", None, params)
        coeffs_to = coefficients("inertial", corr, params)
    a = mapsmod.solve_a_matrix(coeffs_to, coeffs_from)
    b = mapsmod.reshuffle(a)
    tol_cls = mapsmod.classification_tolerance(corr.err)
    report = mapsmod.cp_report(b, tol_cls)
    return ScenarioResult(plan, corr, coeffs_from, coeffs_to, a, b, report)


def _scenario_checks(result: ScenarioResult) -> list:
    """Invariants attached to a single scenario run."""
    checks = list(result.corr.checks)
    tol = 1e-8
    checks.append(CheckResult("trace identity (from coefficients)", result.coeffs_from.trace_dev, tol))
    checks.append(CheckResult("trace identity (to coefficients)", result.coeffs_to.trace_dev, tol))
    worst = 0.0
    for theta, phi in ANGLE_GRID[:: 6]:
        rho = assemble_state(result.coeffs_from, BlochAngles(float(theta), float(phi)))
        out = mapsmod.apply_map(result.a_matrix, rho)
        worst = max(worst, abs(out[0, 0] + out[1, 1] - 1.0))
    checks.append(CheckResult("trace preserved by map on angle grid", worst, tol))
    checks.append(CheckResult(
        "map reproduces target family on angle grid",
        mapsmod.map_for_angles_check(result.a_matrix, result.coeffs_to, result.coeffs_from),
        1e-10,
    ))
    return checks


# ---------------------------------------------------------------------------
# run


def run_scenario(config: ScenarioConfig, kernel_fn=wightman):
    """Full single-scenario pipeline; returns (files dict, exit code)."""
    started = time.perf_counter()
    result = scenario_result(config.plan, config.detector, config.quadrature, kernel_fn)
    checks = _scenario_checks(result)
    wall = time.perf_counter() - started

    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)

    map_payload = {
        "from": result.coeffs_from.tag,
        "to": result.coeffs_to.tag,
        "a_matrix": _matrix_json(result.a_matrix),
        "b_matrix": _matrix_json(result.b_matrix),
        "eigenvalues": list(result.report.eigs),
        "classification": result.report.classification,
        "tol_cls": result.report.tol_cls,
        "second_smallest": result.report.second_smallest,
    }

    state_rows = []
    for theta, phi in ANGLE_GRID:
        angles = BlochAngles(float(theta), float(phi))
        rho = mapsmod.apply_map(result.a_matrix, assemble_state(result.coeffs_from, angles))
        rep = density_checks(rho)
        state_rows.append(
            [format_float(v) for v in (
                theta, phi,
                rho[0, 0].real, rho[0, 0].imag, rho[0, 1].real, rho[0, 1].imag,
                rho[1, 0].real, rho[1, 0].imag, rho[1, 1].real, rho[1, 1].imag,
                rep.trace_dev, rep.min_eig,
            )]
        )

    report_payload = {
        "scenario": {
            "inertial_duration": config.plan.inertial_duration,
            "acceleration": config.plan.acceleration,
            "accel_duration": config.plan.accel_duration,
            "omega": config.detector.omega,
            "epsilon": config.detector.epsilon,
            "coupling_abs": config.detector.coupling_abs,
            "coupling_phase": config.detector.coupling_phase,
        },
        "correlator_err": result.corr.err,
        "correlator_converged": result.corr.converged,
        "correlator_failures": list(result.corr.failures),
        "checks": [
            {"name": c.name, "deviation": c.deviation, "tolerance": c.tolerance, "passed": c.passed}
            for c in checks
        ],
        "classification": result.report.classification,
        "eigenvalues": list(result.report.eigs),
        "tol_cls": result.report.tol_cls,
        "wall_time_s": wall,
        "passed": all(c.passed for c in checks),
    }

    files = {
        "map.json": map_payload,
        "state.csv": state_rows,
        "report.json": report_payload,
    }
    if not result.corr.converged:
        code = 3
    elif not report_payload["passed"]:
        code = 4
    else:
        code = 0
    return result, files, code


# ---------------------------------------------------------------------------
# sweeps


def _sweep_row(args):
    detector, base_plan, cfg, variable, value = args
    if variable == "T":
        plan = TrajectoryPlan(base_plan.inertial_duration, base_plan.acceleration, value)
    elif variable == "t":
        plan = TrajectoryPlan(value, base_plan.acceleration, base_plan.accel_duration)
    else:
        plan = TrajectoryPlan(base_plan.inertial_duration, value, base_plan.accel_duration)
    result = scenario_result(plan, detector, cfg)
    eigs = result.report.eigs
    status = "ok" if result.corr.converged else "quad_fail"
    return {
        "sweep_value": value,
        "eigs": eigs,
        "classification": result.report.classification,
        "tol_cls": result.report.tol_cls,
        "second_smallest": result.report.second_smallest,
        "status": status,
    }


def parallel_jobs() -> int:
    raw = os.environ.get(PARALLEL_ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def sweep_rows(config: ScenarioConfig) -> list:
    """One row per sweep value: ascending eigenvalues and classification."""
    if config.sweep is None:
        raise ValueError("config has no sweep block")
    tasks = [(config.detector, config.plan, config.quadrature, config.sweep.variable, v)
             for v in config.sweep.values]
    jobs = parallel_jobs()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_row, tasks))
    return [_sweep_row(t) for t in tasks]


def sweep_csv_rows(rows) -> list:
    out = []
    for row in rows:
        cells = [format_float(row["sweep_value"])]
        cells += [format_float(e) for e in row["eigs"]]
        cells += [row["classification"], row["status"]]
        out.append(cells)
    return out


SWEEP_HEADER = ["sweep_value", "eig1", "eig2", "eig3", "eig4", "classification", "status"]


# ---------------------------------------------------------------------------
# bloch scan


BLOCH_HEADER = ["in_x", "in_y", "in_z", "out_x", "out_y", "out_z", "min_eig", "outside"]


def bloch_scan(config: ScenarioConfig, kernel_fn=wightman):
    """Bloch image of the scenario map; returns (image, csv rows, summary)."""
    result = scenario_result(config.plan, config.detector, config.quadrature, kernel_fn)
    image = mapsmod.bloch_image(result.a_matrix, config.bloch_samples)
    rows = []
    for s in image.samples:
        cells = [format_float(v) for v in s.input_vec]
        cells += [format_float(v) for v in s.output_vec]
        cells += [format_float(s.min_eig), "true" if s.outside else "false"]
        rows.append(cells)
    summary = {
        "outside_fraction": image.outside_fraction,
        "max_excess": image.max_excess,
        "n_samples": len(image.samples),
        "classification": result.report.classification,
        "converged": result.corr.converged,
    }
    return image, rows, summary


# ---------------------------------------------------------------------------
# oracle comparison


ORACLE_HEADER = ["integral", "adaptive_re", "adaptive_im", "oracle_re", "oracle_im", "abs_diff"]


def oracle_rows(config: ScenarioConfig, kernel_fn=wightman):
    """Adaptive vs midpoint-oracle values for every correlator of the scenario."""
    corr = correlator_set(config.plan, config.detector, config.quadrature, kernel_fn)
    n = config.oracle_n
    rows = []
    max_scaled = 0.0
    for pair in ("II", "AA", "IA", "AI"):
        for signs in SIGN_PAIRS:
            adaptive = corr.plain[pair, signs]
            oracle = oracle_value(pair, signs, config.plan, config.detector, n, ordered=False, kernel_fn=kernel_fn)
            diff = abs(adaptive - oracle)
            max_scaled = max(max_scaled, diff / (abs(adaptive) + 1.0))
            label = f"{pair}{'+' if signs[0] > 0 else '-'}{'+' if signs[1] > 0 else '-'}"
            rows.append([label, format_float(adaptive.real), format_float(adaptive.imag),
                         format_float(oracle.real), format_float(oracle.imag), format_float(diff)])
    for pair in ("II", "AA"):
        for signs in ORDERED_SIGN_PAIRS:
            adaptive = corr.time_ordered[pair, signs]
            oracle = oracle_value(pair, signs, config.plan, config.detector, n, ordered=True, kernel_fn=kernel_fn)
            diff = abs(adaptive - oracle)
            max_scaled = max(max_scaled, diff / (abs(adaptive) + 1.0))
            label = f"ord:{pair}{'+' if signs[0] > 0 else '-'}{'+' if signs[1] > 0 else '-'}"
            rows.append([label, format_float(adaptive.real), format_float(adaptive.imag),
                         format_float(oracle.real), format_float(oracle.imag), format_float(diff)])
    return rows, max_scaled, corr


# ---------------------------------------------------------------------------
# verify


@dataclass(frozen=True)
class RunReport:
    checks: tuple
    wall_time_s: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]


def _trajectory_checks() -> list:
    checks = []
    # The absolute identity tdot^2 - xdot^2 = 1 is representable in doubles
    # only while cosh^2(a*tau)*eps stays below the tolerance, i.e. a*|tau|
    # up to about 4; beyond that the defect is tested relative to tdot^2.
    worst = 0.0
    worst_rel = 0.0
    for a in (0.5, 2.0, 4.0):
        seg = trajmod.Segment.accelerated(a)
        for tau in np.linspace(-4.0 / a, 4.0 / a, 25):
            worst = max(worst, trajmod.kinematics(seg, float(tau)).norm_defect)
        for tau in np.linspace(-12.0 / a, 12.0 / a, 9):
            kin = trajmod.kinematics(seg, float(tau))
            worst_rel = max(worst_rel, kin.norm_defect / max(1.0, kin.tdot**2))
    for tau in np.linspace(-3.0, 3.0, 7):
        worst = max(worst, trajmod.kinematics(trajmod.Segment.inertial(), float(tau)).norm_defect)
    checks.append(CheckResult("four-velocity unit norm", worst, 1e-12))
    checks.append(CheckResult("four-velocity unit norm (scaled, large rapidity)", worst_rel, 1e-12))

    acc0 = trajmod.kinematics(trajmod.Segment.accelerated(2.0), 0.0)
    iner0 = trajmod.kinematics(trajmod.Segment.inertial(), 0.0)
    junction = max(abs(acc0.t - iner0.t), abs(acc0.x - iner0.x),
                   abs(acc0.tdot - iner0.tdot), abs(acc0.xdot - iner0.xdot))
    checks.append(CheckResult("junction continuity at tau=0", junction, 1e-15))

    a = 1e-7
    worst = 0.0
    for tau in (0.25, 0.5, 1.0):
        kin = trajmod.kinematics(trajmod.Segment.accelerated(a), tau)
        worst = max(worst, abs(kin.x - a * tau * tau / 2.0), abs(kin.t - tau))
    checks.append(CheckResult("small-acceleration series limit", worst, 1e-14))
    return checks


def _wightman_checks(params: DetectorParams) -> list:
    checks = []
    target = coincidence_value(params.epsilon)
    worst = max(
        abs(wightman(pair, 0.0, 0.0, a, params) - target) / target
        for pair, a in (("II", 0.0), ("AA", 3.0), ("IA", 2.0), ("AI", 2.0))
    )
    checks.append(CheckResult("kernel coincidence value", worst, 1e-12))

    grid = np.linspace(-2.0, 2.0, 8)
    t1, t2 = np.meshgrid(grid, grid)
    worst = 0.0
    for a in (1.0, 3.0):
        ai = wightman("AI", t1, t2, a, params)
        ia = wightman("IA", t2, t1, a, params)
        worst = max(worst, float(np.max(np.abs(ai - np.conj(ia)))))
        for pair in ("II", "AA"):
            v = wightman(pair, t1, t2, a if pair == "AA" else 0.0, params)
            w = wightman(pair, t2, t1, a if pair == "AA" else 0.0, params)
            worst = max(worst, float(np.max(np.abs(v - np.conj(w)))))
    checks.append(CheckResult("kernel conjugation symmetry", worst, 1e-12))

    small = 1e-7
    ii = wightman("II", t1, t2, 0.0, params)
    worst = 0.0
    for pair in ("AA", "IA", "AI"):
        v = wightman(pair, t1, t2, small, params)
        worst = max(worst, float(np.max(np.abs(v - ii) / np.abs(ii))))
    checks.append(CheckResult("kernel a->0 reduction", worst, 1e-5))

    bound = target * (1.0 + 1e-9)
    worst = max(
        abs(wightman(pair, 0.0, 0.0, a, params)) - bound
        for pair, a in (("II", 0.0), ("AA", 3.0), ("IA", 2.0), ("AI", 2.0))
    )
    deltas = np.linspace(0.0, 3.0, 40)
    mags = np.abs(wightman("II", deltas, np.zeros_like(deltas), 0.0, params))
    monotone_defect = float(np.max(np.maximum(0.0, np.diff(mags))))
    checks.append(CheckResult("kernel bounded at coincidence", max(worst, 0.0), 1e-20))
    checks.append(CheckResult("II kernel decays along the diagonal offset", monotone_defect, 0.0))
    return checks


def _quadrature_checks(params: DetectorParams, cfg: QuadConfig) -> list:
    checks = []
    one = quadmod.integrate_2d(lambda x, y: np.ones_like(x, dtype=complex), quadmod.Region.rect(0, 1, 0, 1))
    checks.append(CheckResult("unit constant over unit square", abs(one.value - 1.0), 1e-12))
    half = quadmod.integrate_2d(lambda x, y: np.ones_like(x, dtype=complex), quadmod.Region.lower_triangle(0, 1))
    checks.append(CheckResult("unit constant over lower triangle", abs(half.value - 0.5), 1e-12))
    osc = quadmod.integrate_2d(lambda x, y: np.exp(1j * (x + y)), quadmod.Region.rect(0, math.pi, 0, math.pi))
    checks.append(CheckResult("oscillatory closed form (-4)", abs(osc.value + 4.0), 1e-8))

    def f(t1, t2):
        return np.exp(1j * params.omega * (t1 - t2)) * wightman("II", t1, t2, 0.0, params)

    whole = quadmod.integrate_2d(f, quadmod.Region.rect(-1, 0, -1, 0), diag_eps=params.epsilon)
    parts = []
    for x0, x1 in ((-1.0, -0.5), (-0.5, 0.0)):
        for y0, y1 in ((-1.0, -0.5), (-0.5, 0.0)):
            parts.append(quadmod.integrate_2d(f, quadmod.Region.rect(x0, x1, y0, y1), diag_eps=params.epsilon))
    additivity = abs(whole.value - sum(p.value for p in parts))
    budget = whole.err_estimate + sum(p.err_estimate for p in parts) + 1e-12
    checks.append(CheckResult("panel additivity over bisected quadrants", additivity, budget))

    conj_res = quadmod.integrate_2d(lambda x, y: np.conj(f(x, y)), quadmod.Region.rect(-1, 0, -1, 0),
                                    diag_eps=params.epsilon)
    checks.append(CheckResult("conjugation exactness", abs(conj_res.value - whole.value.conjugate()), 1e-12))

    orc = quadmod.riemann_oracle(lambda x, y: np.ones_like(x, dtype=complex), quadmod.Region.rect(0, 1, 0, 1), 10)
    checks.append(CheckResult("oracle unit constant", abs(orc - 1.0), 1e-12))
    orc = quadmod.riemann_oracle(lambda x, y: np.exp(1j * (x + y)), quadmod.Region.rect(0, math.pi, 0, math.pi), 400)
    checks.append(CheckResult("oracle oscillatory closed form", abs(orc + 4.0), 1e-4))
    return checks


def _correlator_checks(plan, params, cfg, kernel_fn) -> tuple:
    checks = []
    corr = correlator_set(plan, params, cfg, kernel_fn)
    checks.extend(corr.checks)
    checks.append(CheckResult("correlator quadrature converged", 0.0 if corr.converged else 1.0, 0.5))

    # Zero-width domains vanish identically.
    if plan.accel_duration > 0.0:
        empty = correlator_set(TrajectoryPlan(0.0, plan.acceleration, plan.accel_duration), params, cfg, kernel_fn)
        worst = max(
            abs(empty.plain[pair, signs])
            for pair in ("II", "IA", "AI") for signs in SIGN_PAIRS
        )
        checks.append(CheckResult("zero-width inertial domain vanishes", worst, 0.0))

    # Vanishing acceleration degenerates every block to the II kernel.
    small_a = 1e-4
    small_plan = TrajectoryPlan(max(plan.inertial_duration, 0.5), small_a, max(plan.accel_duration, 0.5))

    def ii_kernel(pair, t1, t2, a, p):
        return kernel_fn("II", t1, t2, 0.0, p)

    degenerate = correlator_set(small_plan, params, cfg, kernel_fn)
    reference = correlator_set(small_plan, params, cfg, ii_kernel)
    worst = 0.0
    for pair in ("AA", "IA", "AI"):
        for signs in SIGN_PAIRS:
            ref = reference.plain[pair, signs]
            if abs(ref) > 0:
                worst = max(worst, abs(degenerate.plain[pair, signs] - ref) / abs(ref))
    checks.append(CheckResult("correlators reduce to inertial at a->0", worst, 1e-4))
    return checks, corr


def _states_checks(corr, params, plan, cfg, kernel_fn) -> list:
    checks = []
    ini = coefficients("ini", None, params)
    dev = max(abs(ini.alpha - 1), abs(ini.beta), abs(ini.gamma - 1), abs(ini.eta),
              abs(ini.kappa - 1), abs(ini.lam))
    checks.append(CheckResult("switch-on coefficients are (1,0,1,0,1,0)", dev, 0.0))

    free = DetectorParams(params.omega, params.epsilon, 0.0, 0.0)
    for tag in ("inertial", "accelerated", "combined"):
        c = coefficients(tag, corr, free)
        dev = max(abs(c.alpha - 1), abs(c.beta), abs(c.gamma - 1), abs(c.eta),
                  abs(c.kappa - 1), abs(c.lam))
        checks.append(CheckResult(f"zero coupling keeps {tag} at switch-on values", dev, 0.0))

    worst = max(coefficients(tag, corr, params).trace_dev for tag in ("inertial", "accelerated", "combined"))
    checks.append(CheckResult("coefficient trace identities", worst, 1e-8))

    rho = assemble_state(ini, BlochAngles(0.0, 0.0))
    dev = float(np.max(np.abs(rho - np.diag([1.0, 0.0]))))
    rho = assemble_state(ini, BlochAngles(math.pi, 0.0))
    dev = max(dev, float(np.max(np.abs(rho - np.diag([0.0, 1.0])))))
    rho = assemble_state(ini, BlochAngles(math.pi / 2.0, 0.0))
    dev = max(dev, float(np.max(np.abs(rho - 0.5 * np.ones((2, 2))))))
    checks.append(CheckResult("assembled states at reference angles", dev, 1e-15))

    c1 = coefficients("inertial", corr, params)
    c2 = coefficients("combined", corr, params)
    mix = statesmod.CoefficientSet(
        (c1.alpha + c2.alpha) / 2, (c1.beta + c2.beta) / 2, (c1.gamma + c2.gamma) / 2,
        (c1.eta + c2.eta) / 2, (c1.kappa + c2.kappa) / 2, (c1.lam + c2.lam) / 2, c1.tag)
    angles = BlochAngles(1.1, 2.2)
    dev = float(np.max(np.abs(
        assemble_state(mix, angles)
        - (assemble_state(c1, angles) + assemble_state(c2, angles)) / 2.0)))
    checks.append(CheckResult("assembly is linear in the coefficients", dev, 1e-15))

    if plan.accel_duration > 0.0:
        eta_acc = coefficients("accelerated", corr, params).eta
        oracle = params.coupling_abs**2 * oracle_value(
            "AA", (-1, 1), plan, params, 400, ordered=False, kernel_fn=kernel_fn).real
        rel = abs(eta_acc - oracle) / max(abs(oracle), 1e-300)
        checks.append(CheckResult("accelerated excitation probability vs oracle", rel, 1e-3))
    return checks


def _maps_checks(corr, params, plan, cfg, kernel_fn) -> list:
    checks = []
    ini = coefficients("ini", None, params)
    identity = mapsmod.solve_a_matrix(ini, ini)
    checks.append(CheckResult("identity map matrix", float(np.max(np.abs(identity - np.eye(4)))), 1e-14))
    eigs = mapsmod.hermitian_eigs(mapsmod.reshuffle(identity))
    checks.append(CheckResult("identity map spectrum {0,0,0,2}",
                              float(np.max(np.abs(eigs - np.array([0.0, 0.0, 0.0, 2.0])))), 1e-12))

    inertial = coefficients("inertial", corr, params)
    combined = coefficients("combined", corr, params)
    accel = coefficients("accelerated", corr, params)

    from_ini = mapsmod.solve_a_matrix(inertial, ini)
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0] = inertial.alpha
    expected[0, 3] = inertial.beta
    expected[1, 1] = inertial.kappa
    expected[1, 2] = inertial.lam
    expected[2, 1] = inertial.lam.conjugate()
    expected[2, 2] = inertial.kappa.conjugate()
    expected[3, 0] = inertial.eta
    expected[3, 3] = inertial.gamma
    checks.append(CheckResult("from-switch-on map equals coefficient matrix",
                              float(np.max(np.abs(from_ini - expected))), 1e-14))

    b = mapsmod.reshuffle(from_ini)
    layout = np.zeros((4, 4), dtype=complex)
    layout[0, 0] = inertial.alpha
    layout[0, 3] = inertial.kappa
    layout[1, 1] = inertial.beta
    layout[1, 2] = inertial.lam
    layout[2, 1] = inertial.lam.conjugate()
    layout[2, 2] = inertial.eta
    layout[3, 0] = inertial.kappa.conjugate()
    layout[3, 3] = inertial.gamma
    checks.append(CheckResult("reshuffled inertial map layout",
                              float(np.max(np.abs(b - layout))), 1e-14))
    checks.append(CheckResult("reshuffle involution",
                              float(np.max(np.abs(mapsmod.reshuffle(b) - from_ini))), 0.0))

    a_map = mapsmod.solve_a_matrix(combined, inertial)
    checks.append(CheckResult("map matches target family over angle grid",
                              mapsmod.map_for_angles_check(a_map, combined, inertial), 1e-10))

    b_map = mapsmod.reshuffle(a_map)
    eigs = mapsmod.hermitian_eigs(b_map)
    trace_b = (a_map[0, 0] + a_map[0, 3] + a_map[3, 0] + a_map[3, 3]).real
    checks.append(CheckResult("spectrum sum equals reshuffled trace",
                              abs(float(np.sum(eigs)) - trace_b), 1e-10))

    tol_cls = mapsmod.classification_tolerance(corr.err)
    second = mapsmod.hermitian_eigs(mapsmod.reshuffle(mapsmod.solve_a_matrix(inertial, ini)))[1]
    dev = max(0.0, -second - tol_cls)
    checks.append(CheckResult("uncorrelated start (inertial) keeps eig2 above -tol", dev, 0.0))
    second = mapsmod.hermitian_eigs(mapsmod.reshuffle(mapsmod.solve_a_matrix(accel, ini)))[1]
    dev = max(0.0, -second - tol_cls)
    checks.append(CheckResult("uncorrelated start (accelerated) keeps eig2 above -tol", dev, 0.0))

    composed = mapsmod.solve_a_matrix(combined, inertial) @ mapsmod.solve_a_matrix(inertial, ini)
    direct = mapsmod.solve_a_matrix(combined, ini)
    checks.append(CheckResult("composition consistency",
                              float(np.max(np.abs(composed - direct))), 1e-8))

    # Vanishing acceleration: the combined map equals the split pure-inertial map.
    t_in = max(plan.inertial_duration, 0.5)
    t_acc = max(plan.accel_duration, 0.5)
    small_plan = TrajectoryPlan(t_in, 1e-3, t_acc)
    small = scenario_result(small_plan, params, cfg, kernel_fn)
    block = inertial_block(-t_in, t_acc, params, cfg, kernel_fn)
    total = inertial_interval_coefficients(block, params)
    half = coefficients("inertial", correlator_set(TrajectoryPlan(t_in, 1.0, 0.0), params, cfg, kernel_fn), params)
    split = mapsmod.solve_a_matrix(total, half)
    checks.append(CheckResult("combined map degenerates to split inertial map at a->0",
                              float(np.max(np.abs(small.a_matrix - split))), 1e-4))

    image = mapsmod.bloch_image(np.eye(4, dtype=complex), 200)
    worst = max(abs(np.linalg.norm(s.output_vec) - 1.0) for s in image.samples)
    checks.append(CheckResult("identity map keeps the sphere fixed",
                              max(worst, image.outside_fraction), 1e-9))
    return checks


def verify(config: ScenarioConfig, kernel_fn=wightman) -> RunReport:
    """Run every module's invariant suite on the configured scenario."""
    started = time.perf_counter()
    params = config.detector
    cfg = config.quadrature
    plan = config.plan

    checks = []
    checks += _trajectory_checks()
    checks += _wightman_checks(params)
    checks += _quadrature_checks(params, cfg)
    corr_checks, corr = _correlator_checks(plan, params, cfg, kernel_fn)
    checks += corr_checks
    checks += _states_checks(corr, params, plan, cfg, kernel_fn)
    checks += _maps_checks(corr, params, plan, cfg, kernel_fn)
    return RunReport(checks=tuple(checks), wall_time_s=time.perf_counter() - started)

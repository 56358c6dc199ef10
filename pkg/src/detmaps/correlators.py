"""Phased double integrals of the vacuum kernels over segment-pair domains.

For each segment pairing the plain correlator is the integral of
exp(i*omega*(s1*tau1 + s2*tau2)) times the pair kernel over the pair's
domain: the inertial argument ranges over [-t, 0] and the accelerated one
over [0, T]. The time-ordered variants (II and AA only) are twice the
lower-triangle integral with phase exp(+/- i*omega*(tau1 - tau2)); in the
cross quadrants the accelerated time always exceeds the inertial one, so
ordering is automatic and no time-ordered cross values exist.

Exact identities checked on every assembled set, with tolerance scaled by
the recorded quadrature error:

  * plain II/AA values with opposite signs (+- and -+) are real;
  * Re(time_ordered) equals the plain value for those sign pairs;
  * cross values pair up under conjugation as
    plain[IA][(s1, s2)] == conj(plain[AI][(-s2, -s1)]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .quadrature import QuadResult, Region, integrate_2d, riemann_oracle
from .wightman import DetectorParams, wightman

import numpy as np

__all__ = [
    "SIGN_PAIRS",
    "ORDERED_SIGN_PAIRS",
    "TrajectoryPlan",
    "QuadConfig",
    "CheckResult",
    "CorrelatorSet",
    "InertialBlock",
    "correlator_value",
    "time_ordered_value",
    "correlator_set",
    "inertial_block",
    "pair_domain",
    "oracle_value",
]

SIGN_PAIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
# Sign pairs that admit a time-ordered variant.
ORDERED_SIGN_PAIRS = ((1, -1), (-1, 1))


@dataclass(frozen=True)
class TrajectoryPlan:
    """Durations of the inertial and accelerated phases and the rate a.

    The detector is inertial on [-inertial_duration, 0] and accelerates at
    `acceleration` on [0, accel_duration].
    """

    inertial_duration: float
    acceleration: float
    accel_duration: float

    def __post_init__(self) -> None:
        t, a, T = self.inertial_duration, self.acceleration, self.accel_duration
        if not (math.isfinite(t) and t >= 0.0):
            raise ValueError(f"inertial_duration must be finite and >= 0, got {t!r}")
        if not (math.isfinite(T) and T >= 0.0):
            raise ValueError(f"accel_duration must be finite and >= 0, got {T!r}")
        if not (math.isfinite(a) and a > 0.0):
            raise ValueError(f"acceleration must be finite and > 0, got {a!r}")


@dataclass(frozen=True)
class QuadConfig:
    """Tolerances for the correlator pipeline.

    Tighter than the generic integrate_2d defaults: the classification
    threshold scales with the recorded quadrature error, and the genuine
    negative excursion of the second-smallest map eigenvalue is of order
    1e-7 at the default coupling, so the error floor must sit well below
    that for the sweeps to resolve it.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_depth: int = 18

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be > 0")
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "deviation", float(self.deviation))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def passed(self) -> bool:
        return bool(self.deviation <= self.tolerance)


def pair_domain(pair: str, plan: TrajectoryPlan):
    """(tau1 interval, tau2 interval) for the given segment pairing."""
    inertial = (-plan.inertial_duration, 0.0)
    accelerated = (0.0, plan.accel_duration)
    return {
        "II": (inertial, inertial),
        "AA": (accelerated, accelerated),
        "IA": (inertial, accelerated),
        "AI": (accelerated, inertial),
    }[pair]


def _phase_kernel(pair, signs, plan, params, kernel_fn):
    omega = params.omega
    a = plan.acceleration
    s1, s2 = signs

    def f(t1, t2):
        return np.exp(1j * omega * (s1 * t1 + s2 * t2)) * kernel_fn(pair, t1, t2, a, params)

    return f


def _integrate_plain(pair, signs, plan, params, cfg, kernel_fn) -> QuadResult:
    (lo1, hi1), (lo2, hi2) = pair_domain(pair, plan)
    if lo1 == hi1 or lo2 == hi2:
        return QuadResult(0.0 + 0.0j, 0.0, 0, True)
    f = _phase_kernel(pair, signs, plan, params, kernel_fn)
    region = Region.rect(lo1, hi1, lo2, hi2)
    return integrate_2d(f, region, cfg.rel_tol, cfg.abs_tol, cfg.max_depth, diag_eps=params.epsilon)


def _integrate_ordered(pair, signs, plan, params, cfg, kernel_fn) -> QuadResult:
    if pair not in ("II", "AA"):
        raise ValueError(f"time-ordered values exist only for II and AA, got {pair!r}")
    if signs not in ORDERED_SIGN_PAIRS:
        raise ValueError(f"time-ordered values exist only for sign pairs (+,-) and (-,+), got {signs!r}")
    (lo, hi), _ = pair_domain(pair, plan)
    if lo == hi:
        return QuadResult(0.0 + 0.0j, 0.0, 0, True)
    f = _phase_kernel(pair, signs, plan, params, kernel_fn)
    region = Region.lower_triangle(lo, hi)
    res = integrate_2d(f, region, cfg.rel_tol, cfg.abs_tol, cfg.max_depth, diag_eps=params.epsilon)
    return QuadResult(2.0 * res.value, 2.0 * res.err_estimate, res.n_evals, res.converged)


def correlator_value(pair, signs, plan: TrajectoryPlan, params: DetectorParams,
                     cfg: QuadConfig | None = None, kernel_fn=wightman) -> complex:
    """Plain phased correlator for one pairing and sign combination."""
    return _integrate_plain(pair, tuple(signs), plan, params, cfg or QuadConfig(), kernel_fn).value


def time_ordered_value(pair, signs, plan: TrajectoryPlan, params: DetectorParams,
                       cfg: QuadConfig | None = None, kernel_fn=wightman) -> complex:
    """Time-ordered correlator: twice the lower-triangle integral."""
    return _integrate_ordered(pair, tuple(signs), plan, params, cfg or QuadConfig(), kernel_fn).value


def oracle_value(pair, signs, plan: TrajectoryPlan, params: DetectorParams, n: int,
                 ordered: bool = False, kernel_fn=wightman) -> complex:
    """Midpoint-oracle counterpart of the plain or time-ordered correlator."""
    (lo1, hi1), (lo2, hi2) = pair_domain(pair, plan)
    if lo1 == hi1 or lo2 == hi2:
        return 0.0 + 0.0j
    f = _phase_kernel(pair, tuple(signs), plan, params, kernel_fn)
    if ordered:
        return 2.0 * riemann_oracle(f, Region.lower_triangle(lo1, hi1), n)
    return riemann_oracle(f, Region.rect(lo1, hi1, lo2, hi2), n)


def _sign_label(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


@dataclass(frozen=True)
class InertialBlock:
    """Plain and time-ordered II-kernel correlators over one interval [lo, hi].

    The combined scenario at vanishing acceleration degenerates to pure
    inertial motion over [-t, T]; this block provides that reference, and
    the whole-interval values backing the split-map consistency checks.
    """

    lo: float
    hi: float
    plain: dict
    time_ordered: dict
    err: float
    converged: bool

    def max_abs(self) -> float:
        values = list(self.plain.values()) + list(self.time_ordered.values())
        return max(abs(v) for v in values) if values else 0.0


def inertial_block(lo: float, hi: float, params: DetectorParams,
                   cfg: QuadConfig | None = None, kernel_fn=wightman) -> InertialBlock:
    """II-kernel correlators over an arbitrary square domain [lo, hi]^2."""
    if not (lo < hi):
        raise ValueError("inertial block requires lo < hi")
    cfg = cfg or QuadConfig()
    omega = params.omega
    plain = {}
    ordered = {}
    err = 0.0
    converged = True

    def phase_fn(s1, s2):
        def f(t1, t2):
            return np.exp(1j * omega * (s1 * t1 + s2 * t2)) * kernel_fn("II", t1, t2, 0.0, params)
        return f

    for signs in SIGN_PAIRS:
        res = integrate_2d(phase_fn(*signs), Region.rect(lo, hi, lo, hi),
                           cfg.rel_tol, cfg.abs_tol, cfg.max_depth, diag_eps=params.epsilon)
        plain[signs] = res.value
        err = max(err, res.err_estimate)
        converged &= res.converged
    for signs in ORDERED_SIGN_PAIRS:
        res = integrate_2d(phase_fn(*signs), Region.lower_triangle(lo, hi),
                           cfg.rel_tol, cfg.abs_tol, cfg.max_depth, diag_eps=params.epsilon)
        ordered[signs] = 2.0 * res.value
        err = max(err, 2.0 * res.err_estimate)
        converged &= res.converged
    return InertialBlock(lo=lo, hi=hi, plain=plain, time_ordered=ordered, err=err, converged=converged)


@dataclass(frozen=True)
class CorrelatorSet:
    """Every correlator a scenario needs, with identity checks attached.

    plain: complex value per (pair, signs) for all four pairings;
    time_ordered: per (pair, signs) for II/AA and the two mixed sign pairs;
    err: largest recorded quadrature error estimate;
    tol_real: tolerance used by the identity checks, max(1e-8, 10*err);
    failures: labels of integrals whose quadrature did not converge.
    """

    plan: TrajectoryPlan
    plain: dict
    time_ordered: dict
    err: float
    converged: bool
    failures: tuple = ()
    checks: tuple = field(default=(), compare=False)

    @property
    def tol_real(self) -> float:
        return max(1e-8, 10.0 * self.err)

    @property
    def checks_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def max_abs(self) -> float:
        """Largest correlator magnitude; scales the perturbative-validity guard."""
        values = list(self.plain.values()) + list(self.time_ordered.values())
        return max(abs(v) for v in values) if values else 0.0


def _run_checks(plain, time_ordered, tol_real) -> tuple:
    checks = []
    for pair in ("II", "AA"):
        for signs in ORDERED_SIGN_PAIRS:
            lbl = _sign_label(signs)
            checks.append(CheckResult(
                f"Im plain[{pair}][{lbl}]", abs(plain[pair, signs].imag), tol_real))
            checks.append(CheckResult(
                f"Re time_ordered[{pair}][{lbl}] == plain",
                abs(time_ordered[pair, signs].real - plain[pair, signs]), tol_real))
    for signs in SIGN_PAIRS:
        mirror = (-signs[1], -signs[0])
        checks.append(CheckResult(
            f"plain[IA][{_sign_label(signs)}] == conj(plain[AI][{_sign_label(mirror)}])",
            abs(plain["IA", signs] - plain["AI", mirror].conjugate()), tol_real))
    return tuple(checks)


def correlator_set(plan: TrajectoryPlan, params: DetectorParams,
                   cfg: QuadConfig | None = None, kernel_fn=wightman) -> CorrelatorSet:
    """Compute all plain and time-ordered correlators for one scenario.

    Entries over zero-width domains are exactly zero. Non-convergent
    integrals are recorded in `failures` and flip `converged`; values are
    still the best available estimates.
    """
    cfg = cfg or QuadConfig()
    plain = {}
    ordered = {}
    err = 0.0
    failures = []
    for pair in ("II", "AA", "IA", "AI"):
        for signs in SIGN_PAIRS:
            res = _integrate_plain(pair, signs, plan, params, cfg, kernel_fn)
            plain[pair, signs] = res.value
            err = max(err, res.err_estimate)
            if not res.converged:
                failures.append(f"plain[{pair}][{_sign_label(signs)}]")
    for pair in ("II", "AA"):
        for signs in ORDERED_SIGN_PAIRS:
            res = _integrate_ordered(pair, signs, plan, params, cfg, kernel_fn)
            ordered[pair, signs] = res.value
            err = max(err, res.err_estimate)
            if not res.converged:
                failures.append(f"time_ordered[{pair}][{_sign_label(signs)}]")
    tol_real = max(1e-8, 10.0 * err)
    checks = _run_checks(plain, ordered, tol_real)
    return CorrelatorSet(
        plan=plan,
        plain=plain,
        time_ordered=ordered,
        err=err,
        converged=not failures,
        failures=tuple(failures),
        checks=checks,
    )

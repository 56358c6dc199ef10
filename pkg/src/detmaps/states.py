"""Reduced detector states: coefficient sets and density matrices.

To second order in the coupling, the reduced state of the detector for any
initial Bloch angles (theta, phi) is fixed by six numbers: four reals
(alpha, beta, gamma, eta) weighting the populations and two complex numbers
(kappa, lam) weighting the coherences,

    rho = [[alpha*cos^2(theta/2) + beta*sin^2(theta/2),
            sin(theta)*(kappa*e^{-i phi} + lam*e^{i phi})/2],
           [h.c.,
            gamma*sin^2(theta/2) + eta*cos^2(theta/2)]].

The scenario tags are: "ini" (switch-on state, coefficients (1,0,1,0,1,0)),
"inertial" (II correlators), "accelerated" (AA correlators) and "combined"
(all four blocks including the cross terms). Trace preservation shows up as
alpha + eta = beta + gamma = 1 up to quadrature error.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .correlators import CorrelatorSet
from .wightman import DetectorParams

__all__ = [
    "SCENARIO_TAGS",
    "BlochAngles",
    "CoefficientSet",
    "DensityReport",
    "PerturbativeValidityWarning",
    "coefficients",
    "inertial_interval_coefficients",
    "assemble_state",
    "density_checks",
]

SCENARIO_TAGS = ("ini", "inertial", "accelerated", "combined")

# Largest admissible second-order correction before the weak-coupling
# expansion stops being trustworthy; exceeding it only warns.
PERTURBATIVE_LIMIT = 0.5


class PerturbativeValidityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class BlochAngles:
    """Polar/azimuthal angles of a pure initial state on the Bloch sphere."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi!r}")


@dataclass(frozen=True)
class CoefficientSet:
    """The six numbers defining a reduced-state family, plus its scenario tag."""

    alpha: float
    beta: float
    gamma: float
    eta: float
    kappa: complex
    lam: complex
    tag: str

    @property
    def trace_dev(self) -> float:
        """max(|alpha + eta - 1|, |beta + gamma - 1|)."""
        return max(abs(self.alpha + self.eta - 1.0), abs(self.beta + self.gamma - 1.0))


INI_COEFFICIENTS = CoefficientSet(1.0, 0.0, 1.0, 0.0, 1.0 + 0.0j, 0.0 + 0.0j, "ini")


def _guard_perturbative(params: DetectorParams, corr: CorrelatorSet) -> None:
    correction = params.coupling_abs**2 * corr.max_abs()
    if correction >= PERTURBATIVE_LIMIT:
        warnings.warn(
            f"second-order correction |m|^2*max|correlator| = {correction:.3g} "
            f"exceeds {PERTURBATIVE_LIMIT}; results are outside the weak-coupling regime",
            PerturbativeValidityWarning,
            stacklevel=3,
        )


def coefficients(tag: str, corr: CorrelatorSet | None, params: DetectorParams) -> CoefficientSet:
    """Build the coefficient set for a scenario from its correlators.

    "ini" needs no correlators. The real fields take the real part of the
    assembled combination; the identity checks on the CorrelatorSet bound
    the discarded imaginary residue by quadrature error.
    """
    if tag not in SCENARIO_TAGS:
        raise ValueError(f"unknown scenario tag {tag!r}")
    if tag == "ini":
        return INI_COEFFICIENTS
    if corr is None:
        raise ValueError(f"scenario {tag!r} requires a correlator set")
    _guard_perturbative(params, corr)

    m2 = params.coupling_abs**2
    mstar_sq = params.coupling.conjugate() ** 2
    plain = corr.plain
    ordered = corr.time_ordered

    if tag in ("inertial", "accelerated"):
        pair = "II" if tag == "inertial" else "AA"
        return _single_block_coefficients(
            {s: plain[pair, s] for s in plain_signs()},
            {s: ordered[pair, s] for s in ordered_signs()},
            params,
            tag,
        )

    # combined: II and AA blocks plus the four cross quadrant terms.
    def cross(signs):
        return plain["IA", signs] + plain["AI", signs]

    alpha = 1.0 - m2 * (ordered["II", (-1, 1)].real + ordered["AA", (-1, 1)].real + cross((-1, 1)).real)
    beta = m2 * (plain["II", (1, -1)] + plain["AA", (1, -1)] + cross((1, -1))).real
    gamma = 1.0 - m2 * (ordered["II", (1, -1)].real + ordered["AA", (1, -1)].real + cross((1, -1)).real)
    eta = m2 * (plain["II", (-1, 1)] + plain["AA", (-1, 1)] + cross((-1, 1))).real
    kappa = 1.0 - (m2 / 2.0) * (
        ordered["II", (-1, 1)]
        + ordered["II", (1, -1)].conjugate()
        + ordered["AA", (-1, 1)]
        + ordered["AA", (1, -1)].conjugate()
        + 2.0 * plain["AI", (-1, 1)]
        + 2.0 * plain["IA", (1, -1)]
    )
    lam = mstar_sq * (plain["II", (-1, -1)] + plain["AA", (-1, -1)] + cross((-1, -1)))
    return CoefficientSet(alpha, beta, gamma, eta, kappa, lam, "combined")


def plain_signs():
    return ((1, 1), (1, -1), (-1, 1), (-1, -1))


def ordered_signs():
    return ((1, -1), (-1, 1))


def _single_block_coefficients(plain, ordered, params, tag) -> CoefficientSet:
    """Coefficients when all motion lies on one segment kind."""
    m2 = params.coupling_abs**2
    mstar_sq = params.coupling.conjugate() ** 2
    alpha = 1.0 - m2 * ordered[(-1, 1)].real
    beta = m2 * plain[(1, -1)].real
    gamma = 1.0 - m2 * ordered[(1, -1)].real
    eta = m2 * plain[(-1, 1)].real
    kappa = 1.0 - (m2 / 2.0) * (ordered[(-1, 1)] + ordered[(1, -1)].conjugate())
    lam = mstar_sq * plain[(-1, -1)]
    return CoefficientSet(alpha, beta, gamma, eta, kappa, lam, tag)


def inertial_interval_coefficients(block, params: DetectorParams) -> CoefficientSet:
    """Inertial-scenario coefficients from correlators over one interval.

    Used where the motion is inertial over an interval other than [-t, 0],
    e.g. the whole-trajectory reference [-t, T] that the combined scenario
    degenerates to as the acceleration vanishes.
    """
    return _single_block_coefficients(block.plain, block.time_ordered, params, "inertial")


def assemble_state(coeffs: CoefficientSet, angles: BlochAngles) -> np.ndarray:
    """2x2 density matrix of the family member at the given Bloch angles."""
    c2 = math.cos(angles.theta / 2.0) ** 2
    s2 = math.sin(angles.theta / 2.0) ** 2
    sin_t = math.sin(angles.theta)
    phase = complex(math.cos(angles.phi), math.sin(angles.phi))
    off = sin_t * (coeffs.kappa * phase.conjugate() + coeffs.lam * phase) / 2.0
    return np.array(
        [
            [coeffs.alpha * c2 + coeffs.beta * s2, off],
            [off.conjugate(), coeffs.gamma * s2 + coeffs.eta * c2],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class DensityReport:
    trace_dev: float
    herm_dev: float
    min_eig: float


def density_checks(rho: np.ndarray) -> DensityReport:
    """Trace and Hermiticity deviations plus the smallest eigenvalue.

    The eigenvalue comes from the 2x2 closed form applied to the Hermitian
    part; a negative value witnesses a nonphysical output state (possible
    under a map that is not positive) and is reported, never raised.
    """
    rho = np.asarray(rho, dtype=complex)
    trace_dev = abs(rho[0, 0] + rho[1, 1] - 1.0)
    herm_dev = abs(rho[1, 0] - rho[0, 1].conjugate())
    a = rho[0, 0].real
    d = rho[1, 1].real
    off = (rho[0, 1] + rho[1, 0].conjugate()) / 2.0
    half_span = math.sqrt(((a - d) / 2.0) ** 2 + abs(off) ** 2)
    min_eig = (a + d) / 2.0 - half_span
    return DensityReport(trace_dev=float(trace_dev), herm_dev=float(herm_dev), min_eig=float(min_eig))

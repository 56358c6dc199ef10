"""Dynamical maps between reduced-state families and their positivity.

With the density matrix vectorized row-major as (rho00, rho01, rho10,
rho11), the map taking one coefficient set to another is a 4x4 matrix with
eight potentially nonzero entries in closed form; the populations block
{(1,1), (1,4), (4,1), (4,4)} and the coherences block {(2,2), (2,3), (3,2),
(3,3)} decouple. Re-shuffling the indices yields the Hermitian dynamical
matrix whose spectrum decides complete positivity: all eigenvalues
nonnegative means completely positive; a single slightly negative one is an
artifact of the second-order truncation; two or more negatives mean the map
is genuinely not completely positive.

The Bloch image scans the map over a deterministic Fibonacci sample of
pure states (plus the six axis poles) and flags outputs that leave the
Bloch ball, witnessing failure of positivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import BlochAngles, CoefficientSet, assemble_state, density_checks

__all__ = [
    "SingularMapError",
    "InconsistentMatrixError",
    "CPReport",
    "BlochSample",
    "BlochImage",
    "solve_a_matrix",
    "reshuffle",
    "hermitian_eigs",
    "classify",
    "cp_report",
    "classification_tolerance",
    "apply_map",
    "bloch_vector",
    "state_from_bloch",
    "bloch_image",
]

CP = "CP"
NCP_ARTIFACT = "NCP_truncation_artifact"
NCP = "NCP"

_SINGULAR_TOL = 1e-12
_HERM_TOL = 1e-8


class SingularMapError(ArithmeticError):
    """A coefficient denominator is numerically singular."""


class InconsistentMatrixError(ValueError):
    """Matrix violates Hermiticity beyond tolerance; upstream quadrature failed."""


def solve_a_matrix(coeffs_out: CoefficientSet, coeffs_in: CoefficientSet) -> np.ndarray:
    """Closed-form map matrix sending the `coeffs_in` family to `coeffs_out`.

    Independent of the Bloch angles by construction. Raises SingularMapError
    when either closed-form denominator of the input set is smaller than
    1e-12 in modulus (cannot happen at weak coupling).
    """
    j, k = coeffs_out, coeffs_in
    den_pop = k.alpha * k.gamma - k.beta * k.eta
    den_coh = abs(k.kappa) ** 2 - abs(k.lam) ** 2
    if abs(den_pop) < _SINGULAR_TOL:
        raise SingularMapError(
            f"population denominator alpha*gamma - beta*eta = {den_pop!r} is singular")
    if abs(den_coh) < _SINGULAR_TOL:
        raise SingularMapError(
            f"coherence denominator |kappa|^2 - |lam|^2 = {den_coh!r} is singular")
    a = np.zeros((4, 4), dtype=complex)
    a[0, 0] = (j.alpha * k.gamma - j.beta * k.eta) / den_pop
    a[0, 3] = (j.beta * k.alpha - j.alpha * k.beta) / den_pop
    a[1, 1] = (j.kappa * k.kappa.conjugate() - j.lam * k.lam.conjugate()) / den_coh
    a[1, 2] = (j.lam * k.kappa - j.kappa * k.lam) / den_coh
    a[2, 1] = a[1, 2].conjugate()
    a[2, 2] = a[1, 1].conjugate()
    a[3, 0] = (j.eta * k.gamma - j.gamma * k.eta) / den_pop
    a[3, 3] = (j.gamma * k.alpha - j.eta * k.beta) / den_pop
    return a


def reshuffle(matrix: np.ndarray) -> np.ndarray:
    """Index reshuffle B[(r,r'),(s,s')] = A[(r,s),(r',s')]; an involution."""
    m = np.asarray(matrix, dtype=complex).reshape(2, 2, 2, 2)
    return m.transpose(0, 2, 1, 3).reshape(4, 4)


def hermitian_eigs(matrix: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a (near-)Hermitian 4x4 by cyclic Jacobi.

    The input is symmetrized after checking that its Hermiticity defect is
    below 1e-8; a larger defect signals a broken upstream computation and
    raises InconsistentMatrixError.
    """
    b = np.asarray(matrix, dtype=complex)
    defect = float(np.max(np.abs(b - b.conj().T)))
    if defect >= _HERM_TOL:
        raise InconsistentMatrixError(
            f"Hermiticity defect {defect:.3e} >= {_HERM_TOL}; upstream quadrature inconsistent")
    h = (b + b.conj().T) / 2.0
    n = h.shape[0]
    scale = float(np.max(np.abs(h))) or 1.0
    for _ in range(60):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(h[p, q]))
        if off <= 1e-16 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                hpq = h[p, q]
                mag = abs(hpq)
                if mag <= 1e-18 * scale:
                    continue
                phase = hpq / mag
                app = h[p, p].real
                aqq = h[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = 1.0 / (tau + math.copysign(math.sqrt(tau * tau + 1.0), tau)) if tau != 0.0 else 1.0
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n, dtype=complex)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s * phase
                rot[q, p] = -s * phase.conjugate()
                h = rot.conj().T @ h @ rot
    return np.sort(np.real(np.diag(h)))


def classify(eigs, tol_cls: float) -> str:
    """CP / single-negative truncation artifact / genuinely NCP."""
    eigs = np.asarray(eigs, dtype=float)
    negatives = int(np.sum(eigs < -tol_cls))
    if negatives == 0:
        return CP
    if negatives == 1:
        return NCP_ARTIFACT
    return NCP


def classification_tolerance(quad_err: float) -> float:
    """Eigenvalue noise floor set by the recorded quadrature error."""
    return max(1e-8, 10.0 * quad_err)


@dataclass(frozen=True)
class CPReport:
    """Spectrum of the dynamical matrix and the verdict it implies."""

    eigs: tuple
    classification: str
    tol_cls: float

    @property
    def second_smallest(self) -> float:
        return self.eigs[1]


def cp_report(b_matrix: np.ndarray, tol_cls: float) -> CPReport:
    eigs = hermitian_eigs(b_matrix)
    return CPReport(eigs=tuple(float(e) for e in eigs), classification=classify(eigs, tol_cls), tol_cls=tol_cls)


def apply_map(a_matrix: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Vectorize rho row-major, apply the map matrix, unvectorize."""
    vec = np.asarray(rho, dtype=complex).reshape(4)
    return (np.asarray(a_matrix, dtype=complex) @ vec).reshape(2, 2)


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """(x, y, z) components of 2*rho - trace(rho)*I in the Pauli basis."""
    rho = np.asarray(rho, dtype=complex)
    x = float((rho[0, 1] + rho[1, 0]).real)
    y = float((1j * (rho[0, 1] - rho[1, 0])).real)
    z = float((rho[0, 0] - rho[1, 1]).real)
    return np.array([x, y, z])


def state_from_bloch(vec) -> np.ndarray:
    """Density matrix (I + vec . sigma)/2."""
    x, y, z = (float(v) for v in vec)
    return 0.5 * np.array([[1.0 + z, x - 1j * y], [x + 1j * y, 1.0 - z]], dtype=complex)


def _fibonacci_sphere(n: int) -> np.ndarray:
    """Deterministic, roughly uniform sample of n unit vectors."""
    i = np.arange(n)
    z = 1.0 - 2.0 * (i + 0.5) / n
    radius = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    golden = math.pi * (3.0 - math.sqrt(5.0))
    angle = golden * i
    return np.column_stack([radius * np.cos(angle), radius * np.sin(angle), z])


_POLES = np.array([
    [1.0, 0.0, 0.0], [-1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0], [0.0, -1.0, 0.0],
    [0.0, 0.0, 1.0], [0.0, 0.0, -1.0],
])

_OUTSIDE_TOL = 1e-9


@dataclass(frozen=True)
class BlochSample:
    input_vec: tuple
    output_vec: tuple
    min_eig: float
    outside: bool


@dataclass(frozen=True)
class BlochImage:
    samples: tuple
    outside_fraction: float
    max_excess: float


def bloch_image(a_matrix: np.ndarray, n_samples: int = 2000) -> BlochImage:
    """Image of the pure-state sphere under the map.

    A sample is flagged outside when its output Bloch vector exceeds unit
    norm or its output state has a negative eigenvalue (tolerance 1e-9).
    max_excess is the largest output norm minus one (negative if the whole
    image is strictly inside).
    """
    if n_samples < 6:
        raise ValueError(f"n_samples must be >= 6, got {n_samples}")
    inputs = np.vstack([_fibonacci_sphere(n_samples), _POLES])
    samples = []
    n_outside = 0
    max_excess = -np.inf
    for vec in inputs:
        rho_out = apply_map(a_matrix, state_from_bloch(vec))
        out_vec = bloch_vector(rho_out)
        norm = float(np.linalg.norm(out_vec))
        min_eig = density_checks(rho_out).min_eig
        outside = (norm > 1.0 + _OUTSIDE_TOL) or (min_eig < -_OUTSIDE_TOL)
        n_outside += outside
        max_excess = max(max_excess, norm - 1.0)
        samples.append(BlochSample(tuple(vec), tuple(out_vec), min_eig, outside))
    return BlochImage(
        samples=tuple(samples),
        outside_fraction=n_outside / len(inputs),
        max_excess=float(max_excess),
    )


def map_for_angles_check(a_matrix: np.ndarray, coeffs_out: CoefficientSet,
                         coeffs_in: CoefficientSet, n_theta: int = 12, n_phi: int = 12) -> float:
    """Largest defect of the defining property over an angle grid.

    apply_map(A, state(coeffs_in, angles)) must reproduce
    state(coeffs_out, angles) for every angle pair.
    """
    worst = 0.0
    for theta in np.linspace(0.0, math.pi, n_theta):
        for phi in np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False):
            angles = BlochAngles(float(theta), float(phi))
            got = apply_map(a_matrix, assemble_state(coeffs_in, angles))
            want = assemble_state(coeffs_out, angles)
            worst = max(worst, float(np.max(np.abs(got - want))))
    return worst

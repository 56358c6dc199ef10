"""Regularized vacuum two-point kernels along the detector worldline.

A detector of finite size epsilon smears the field, which turns the vacuum
two-point function into a smooth, bounded complex function of the two proper
times: the pole is pushed off the real axis by the i*epsilon terms built
from the four-velocities. Four segment pairings occur:

  II  both arguments on the inertial branch,
  AA  both on the accelerated branch,
  IA  first argument inertial, second accelerated,
  AI  first accelerated, second inertial.

All four are evaluated directly in complex arithmetic; no principal-value
or distributional limit is ever taken. At coincident arguments every kernel
equals 1/(16 pi^2 epsilon^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .trajectory import coshm1_scaled, sinh_scaled

__all__ = ["DetectorParams", "PAIR_KINDS", "wightman", "coincidence_value", "SingularKernelError"]

PAIR_KINDS = ("II", "AA", "IA", "AI")

FOUR_PI_SQ = 4.0 * math.pi**2

# |denominator| below this is treated as a genuine singularity. It cannot be
# reached for epsilon > 0 and finite arguments; the check guards against
# misuse with epsilon = 0.
_SINGULAR_FLOOR = 1e-300


class SingularKernelError(ZeroDivisionError):
    """Raised when a kernel denominator underflows to (numerically) zero."""


@dataclass(frozen=True)
class DetectorParams:
    """Two-level detector: energy gap, size, and complex coupling.

    omega: level gap (1/time), > 0.
    epsilon: detector size (time), > 0; regularizes every kernel.
    coupling_abs / coupling_phase: modulus and argument of the coupling m.
    """

    omega: float
    epsilon: float
    coupling_abs: float = 0.05
    coupling_phase: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise ValueError(f"omega must be finite and > 0, got {self.omega!r}")
        if not (math.isfinite(self.epsilon) and self.epsilon > 0.0):
            raise ValueError(f"epsilon must be finite and > 0, got {self.epsilon!r}")
        if not (math.isfinite(self.coupling_abs) and self.coupling_abs >= 0.0):
            raise ValueError(f"coupling_abs must be finite and >= 0, got {self.coupling_abs!r}")
        if not math.isfinite(self.coupling_phase):
            raise ValueError("coupling_phase must be finite")

    @property
    def coupling(self) -> complex:
        """m = coupling_abs * exp(i * coupling_phase)."""
        return self.coupling_abs * complex(math.cos(self.coupling_phase), math.sin(self.coupling_phase))


def coincidence_value(epsilon: float) -> float:
    """Common value 1/(16 pi^2 epsilon^2) of all kernels at equal arguments."""
    return 1.0 / (16.0 * math.pi**2 * epsilon**2)


def _check_denominator(den) -> None:
    mod = np.abs(den)
    if np.min(mod) < _SINGULAR_FLOOR:
        idx = np.unravel_index(int(np.argmin(mod)), np.shape(mod)) if np.ndim(mod) else ()
        raise SingularKernelError(f"kernel denominator underflow at sample index {idx}")


def wightman(pair: str, tau1, tau2, a: float, params: DetectorParams):
    """Evaluate the regularized kernel for the given segment pairing.

    tau1, tau2 may be scalars or broadcastable arrays; the acceleration `a`
    must be > 0 for the AA/IA/AI pairings and is ignored for II. Returns a
    complex scalar or array.
    """
    if pair not in PAIR_KINDS:
        raise ValueError(f"unknown pair kind {pair!r}")
    if pair != "II" and not (math.isfinite(a) and a > 0.0):
        raise ValueError(f"pair {pair} requires acceleration > 0, got {a!r}")
    eps = params.epsilon
    t1 = np.asarray(tau1, dtype=float)
    t2 = np.asarray(tau2, dtype=float)

    if pair == "II":
        den = (t1 - t2 - 2j * eps) ** 2
        _check_denominator(den)
        out = -1.0 / (FOUR_PI_SQ * den)
    elif pair == "AA":
        half = (t1 - t2) / 2.0
        bracket = sinh_scaled(a, half) - 1j * eps * np.cosh(a * half)
        den = bracket**2
        _check_denominator(den)
        out = -1.0 / (4.0 * FOUR_PI_SQ * den)
    elif pair == "IA":
        # First argument on the inertial branch, second accelerated.
        time_part = t1 - sinh_scaled(a, t2) - 1j * eps * (1.0 + np.cosh(a * t2))
        space_part = coshm1_scaled(a, t2) + 1j * eps * np.sinh(a * t2)
        den = time_part**2 - space_part**2
        _check_denominator(den)
        out = -1.0 / (FOUR_PI_SQ * den)
    else:  # AI
        time_part = sinh_scaled(a, t1) - t2 - 1j * eps * (1.0 + np.cosh(a * t1))
        space_part = coshm1_scaled(a, t1) - 1j * eps * np.sinh(a * t1)
        den = time_part**2 - space_part**2
        _check_denominator(den)
        out = -1.0 / (FOUR_PI_SQ * den)

    return out if np.ndim(out) else complex(out)

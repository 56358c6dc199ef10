"""Detector worldlines: events and four-velocities along proper-time segments.

Two segment kinds are supported. An inertial segment sits at rest at the
spatial origin, so coordinate time equals proper time. A uniformly
accelerated segment follows the standard 1+1 dimensional hyperbolic
trajectory, shifted so that it starts from the origin at tau = 0 with unit
time-like velocity. Both branches therefore join smoothly at tau = 0,
which is where acceleration is switched on in the combined scenario.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Segment",
    "Kinematics",
    "kinematics",
    "sinh_scaled",
    "coshm1_scaled",
]

# Below this value of |a*tau| the scaled hyperbolics switch to truncated
# Taylor series; (cosh(a tau) - 1)/a loses all significant digits to
# cancellation long before this point.
SERIES_THRESHOLD = 1e-6


@dataclass(frozen=True)
class Segment:
    """A worldline branch: either inertial or uniformly accelerated."""

    kind: str  # "inertial" | "accelerated"
    acceleration: float | None = None

    def __post_init__(self) -> None:
        if self.kind == "inertial":
            if self.acceleration is not None:
                raise ValueError("inertial segment carries no acceleration")
        elif self.kind == "accelerated":
            a = self.acceleration
            if a is None or not math.isfinite(a) or a <= 0.0:
                raise ValueError(f"accelerated segment requires finite acceleration > 0, got {a!r}")
        else:
            raise ValueError(f"unknown segment kind {self.kind!r}")

    @staticmethod
    def inertial() -> "Segment":
        return Segment("inertial")

    @staticmethod
    def accelerated(acceleration: float) -> "Segment":
        return Segment("accelerated", acceleration)


@dataclass(frozen=True)
class Kinematics:
    """Worldline event (t, x) and four-velocity (tdot, xdot) at fixed proper time."""

    t: float
    x: float
    tdot: float
    xdot: float

    @property
    def norm_defect(self) -> float:
        """Deviation of tdot**2 - xdot**2 from 1 (metric signature (-1, 1))."""
        return abs(self.tdot**2 - self.xdot**2 - 1.0)


def sinh_scaled(a, tau):
    """sinh(a*tau)/a, series-expanded for small |a*tau|.

    Accepts scalars or arrays; a > 0. The series branch is
    tau*(1 + u**2/6 + u**4/120) with u = a*tau, accurate to O(u**6).
    """
    a = np.asarray(a, dtype=float)
    tau = np.asarray(tau, dtype=float)
    u = a * tau
    small = np.abs(u) < SERIES_THRESHOLD
    u2 = u * u
    series = tau * (1.0 + u2 / 6.0 + u2 * u2 / 120.0)
    direct = np.sinh(u) / a
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def coshm1_scaled(a, tau):
    """(cosh(a*tau) - 1)/a, series-expanded for small |a*tau|.

    The series branch is a*tau**2/2*(1 + u**2/12 + u**4/360) with u = a*tau.
    """
    a = np.asarray(a, dtype=float)
    tau = np.asarray(tau, dtype=float)
    u = a * tau
    small = np.abs(u) < SERIES_THRESHOLD
    u2 = u * u
    series = a * tau * tau / 2.0 * (1.0 + u2 / 12.0 + u2 * u2 / 360.0)
    direct = (np.cosh(u) - 1.0) / a
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def kinematics(segment: Segment, tau: float) -> Kinematics:
    """Evaluate the worldline of `segment` at proper time `tau`.

    Inertial: (t, x, tdot, xdot) = (tau, 0, 1, 0) exactly.
    Accelerated with rate a: t = sinh(a tau)/a, x = (cosh(a tau) - 1)/a,
    tdot = cosh(a tau), xdot = sinh(a tau).
    """
    if not math.isfinite(tau):
        raise ValueError(f"proper time must be finite, got {tau!r}")
    if segment.kind == "inertial":
        return Kinematics(t=float(tau), x=0.0, tdot=1.0, xdot=0.0)
    a = segment.acceleration
    return Kinematics(
        t=float(sinh_scaled(a, tau)),
        x=float(coshm1_scaled(a, tau)),
        tdot=math.cosh(a * tau),
        xdot=math.sinh(a * tau),
    )

"""Adaptive 2-D complex quadrature over rectangles and lower triangles.

The adaptive scheme tiles the region with tensor-product Gauss-Kronrod 7/15
panels and bisects the panel with the dominant error along its worse axis
until the summed error estimate meets the tolerance. Integrands peak in a
band |tau1 - tau2| of width a few detector sizes around the diagonal, so
panels near the diagonal are pre-split into bands at |tau1 - tau2| of
roughly {2, 10, 50} detector sizes before adaptivity starts.

Lower triangles (tau2 <= tau1 of a square) are mapped to a rectangle by the
Duffy-style substitution tau2 = lo + (tau1 - lo)*s, s in [0, 1], which turns
the diagonal into the axis-aligned edge s = 1 and concentrates nodes there.

`riemann_oracle` is a deliberately naive midpoint rule kept free of any
panel machinery; it exists solely to cross-check the adaptive results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Region",
    "QuadResult",
    "integrate_2d",
    "riemann_oracle",
    "QuadratureEvalError",
]

RECT = "rect"
LOWER_TRIANGLE = "lower_triangle"

# 15-point Kronrod nodes (ascending) with embedded 7-point Gauss rule.
_KRONROD_NODES_HALF = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
)
_KRONROD_WEIGHTS_HALF = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
)
_KRONROD_WEIGHT_CENTER = 0.209482141084728
_GAUSS_WEIGHTS_HALF = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
)
_GAUSS_WEIGHT_CENTER = 0.417959183673469

_NODES = np.array([-x for x in _KRONROD_NODES_HALF] + [0.0] + list(reversed(_KRONROD_NODES_HALF)))
_WK = np.array(list(_KRONROD_WEIGHTS_HALF) + [_KRONROD_WEIGHT_CENTER] + list(reversed(_KRONROD_WEIGHTS_HALF)))
# Gauss-7 weights on the Kronrod grid: zero on pure Kronrod nodes.
_WG = np.zeros(15)
_WG[1] = _WG[13] = _GAUSS_WEIGHTS_HALF[0]
_WG[3] = _WG[11] = _GAUSS_WEIGHTS_HALF[1]
_WG[5] = _WG[9] = _GAUSS_WEIGHTS_HALF[2]
_WG[7] = _GAUSS_WEIGHT_CENTER

_N_NODES = 15
_EVALS_PER_PANEL = _N_NODES * _N_NODES

_MAX_PANELS = 60_000


class QuadratureEvalError(ValueError):
    """Integrand returned a non-finite value; carries the offending point."""

    def __init__(self, tau1: float, tau2: float):
        self.point = (tau1, tau2)
        super().__init__(f"integrand is not finite at (tau1, tau2) = ({tau1!r}, {tau2!r})")


@dataclass(frozen=True)
class Region:
    """Integration domain: a rectangle or the lower triangle of a square.

    Lower triangle means the subset tau2 <= tau1; it requires identical
    bounds on both axes.
    """

    shape: str
    t1_lo: float
    t1_hi: float
    t2_lo: float
    t2_hi: float

    def __post_init__(self) -> None:
        if self.shape not in (RECT, LOWER_TRIANGLE):
            raise ValueError(f"unknown region shape {self.shape!r}")
        if not (self.t1_lo < self.t1_hi and self.t2_lo < self.t2_hi):
            raise ValueError("region bounds must satisfy lo < hi on both axes")
        if self.shape == LOWER_TRIANGLE and (self.t1_lo != self.t2_lo or self.t1_hi != self.t2_hi):
            raise ValueError("lower triangle requires identical bounds on both axes")

    @staticmethod
    def rect(t1_lo: float, t1_hi: float, t2_lo: float, t2_hi: float) -> "Region":
        return Region(RECT, t1_lo, t1_hi, t2_lo, t2_hi)

    @staticmethod
    def lower_triangle(lo: float, hi: float) -> "Region":
        return Region(LOWER_TRIANGLE, lo, hi, lo, hi)


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    n_evals: int
    converged: bool


def _check_finite(values, tau1, tau2) -> None:
    finite = np.isfinite(values.real) & np.isfinite(values.imag)
    if not finite.all():
        idx = int(np.argmin(finite.ravel()))
        t1 = np.broadcast_to(tau1, values.shape).ravel()[idx]
        t2 = np.broadcast_to(tau2, values.shape).ravel()[idx]
        raise QuadratureEvalError(float(t1), float(t2))


class _Panel:
    """One tensor-product GK panel in engine coordinates (x, y)."""

    __slots__ = ("x_lo", "x_hi", "y_lo", "y_hi", "depth", "value", "err", "err_x", "err_y")

    def __init__(self, x_lo, x_hi, y_lo, y_hi, depth=0):
        self.x_lo = x_lo
        self.x_hi = x_hi
        self.y_lo = y_lo
        self.y_hi = y_hi
        self.depth = depth
        self.value = 0.0 + 0.0j
        self.err = np.inf
        self.err_x = np.inf
        self.err_y = np.inf


def _evaluate_panels(g, panels) -> None:
    """Fill value/err fields of `panels` with one batched integrand call."""
    if not panels:
        return
    n = len(panels)
    cx = np.array([(p.x_lo + p.x_hi) / 2.0 for p in panels])
    hx = np.array([(p.x_hi - p.x_lo) / 2.0 for p in panels])
    cy = np.array([(p.y_lo + p.y_hi) / 2.0 for p in panels])
    hy = np.array([(p.y_hi - p.y_lo) / 2.0 for p in panels])
    xs = cx[:, None, None] + hx[:, None, None] * _NODES[None, :, None]
    ys = cy[:, None, None] + hy[:, None, None] * _NODES[None, None, :]
    xs = np.broadcast_to(xs, (n, _N_NODES, _N_NODES))
    ys = np.broadcast_to(ys, (n, _N_NODES, _N_NODES))
    vals = np.asarray(g(xs, ys), dtype=complex)

    jac = hx * hy
    kk = np.einsum("i,j,pij->p", _WK, _WK, vals) * jac
    gk = np.einsum("i,j,pij->p", _WG, _WK, vals) * jac
    kg = np.einsum("i,j,pij->p", _WK, _WG, vals) * jac
    err_x = np.abs(kk - gk)
    err_y = np.abs(kk - kg)
    for i, p in enumerate(panels):
        p.value = complex(kk[i])
        p.err_x = float(err_x[i])
        p.err_y = float(err_y[i])
        p.err = p.err_x + p.err_y


def _split(panel: _Panel):
    """Bisect along the axis with the larger error estimate."""
    d = panel.depth + 1
    if panel.err_x >= panel.err_y:
        mid = (panel.x_lo + panel.x_hi) / 2.0
        return (
            _Panel(panel.x_lo, mid, panel.y_lo, panel.y_hi, d),
            _Panel(mid, panel.x_hi, panel.y_lo, panel.y_hi, d),
        )
    mid = (panel.y_lo + panel.y_hi) / 2.0
    return (
        _Panel(panel.x_lo, panel.x_hi, mid, panel.y_hi, d),
        _Panel(panel.x_lo, panel.x_hi, panel.y_lo, mid, d),
    )


def _band_cap(dist: float, eps: float) -> float:
    """Target panel size for a panel at distance `dist` from the peak band."""
    if dist < 2.0 * eps:
        return 4.0 * eps
    if dist < 10.0 * eps:
        return 20.0 * eps
    if dist < 50.0 * eps:
        return 100.0 * eps
    return np.inf


def _preseed(panels, dist_fn, size_fn, split_fn, eps):
    """Pre-split panels near the diagonal band down to band-dependent sizes."""
    out = []
    work = list(panels)
    while work:
        p = work.pop()
        cap = _band_cap(dist_fn(p), eps)
        if size_fn(p) > cap and len(out) + len(work) < _MAX_PANELS // 4:
            work.extend(split_fn(p))
        else:
            out.append(p)
    out.sort(key=lambda q: (q.x_lo, q.y_lo, q.x_hi, q.y_hi))
    return out


def _bisect_longer(p: _Panel):
    if (p.x_hi - p.x_lo) >= (p.y_hi - p.y_lo):
        mid = (p.x_lo + p.x_hi) / 2.0
        return (_Panel(p.x_lo, mid, p.y_lo, p.y_hi), _Panel(mid, p.x_hi, p.y_lo, p.y_hi))
    mid = (p.y_lo + p.y_hi) / 2.0
    return (_Panel(p.x_lo, p.x_hi, p.y_lo, mid), _Panel(p.x_lo, p.x_hi, mid, p.y_hi))


def _initial_panels_rect(region: Region, diag_eps):
    whole = _Panel(region.t1_lo, region.t1_hi, region.t2_lo, region.t2_hi)
    if diag_eps is None:
        return [whole]

    def dist(p):
        # Distance between the panel and the line tau1 = tau2: zero if the
        # intervals overlap, otherwise the gap between them.
        return max(p.y_lo - p.x_hi, p.x_lo - p.y_hi, 0.0)

    def size(p):
        return max(p.x_hi - p.x_lo, p.y_hi - p.y_lo)

    return _preseed([whole], dist, size, _bisect_longer, diag_eps)


def _initial_panels_triangle(region: Region, diag_eps):
    lo, hi = region.t1_lo, region.t1_hi
    if diag_eps is None:
        return [_Panel(lo, hi, 0.0, 1.0)]
    # Band cuts in the Duffy coordinate: tau1 - tau2 = (tau1 - lo)*(1 - s),
    # so s = 1 - c/(hi - lo) bounds the band |tau1 - tau2| <= c at tau1 = hi.
    cuts = sorted(
        {0.0, 1.0}
        | {1.0 - c * diag_eps / (hi - lo) for c in (50.0, 10.0, 2.0) if 0.0 < 1.0 - c * diag_eps / (hi - lo) < 1.0}
    )
    seeds = [_Panel(lo, hi, s0, s1) for s0, s1 in zip(cuts[:-1], cuts[1:])]

    def dist(p):
        return (p.x_lo - lo) * (1.0 - p.y_hi)

    def size(p):
        # Extent in tau1 and in actual diagonal distance across the panel.
        return max(p.x_hi - p.x_lo, (p.x_hi - lo) * (p.y_hi - p.y_lo))

    return _preseed(seeds, dist, size, _bisect_longer, diag_eps)


def integrate_2d(
    f,
    region: Region,
    rel_tol: float = 1e-6,
    abs_tol: float = 1e-10,
    max_depth: int = 18,
    diag_eps: float | None = None,
) -> QuadResult:
    """Adaptively integrate the complex-valued integrand f(tau1, tau2).

    `f` must accept array arguments and evaluate elementwise. `diag_eps`,
    when given, is the detector size used to pre-split panels around the
    near-diagonal peak. Returns the estimate with converged=False instead of
    raising when max_depth (or the panel budget) is exhausted.
    """
    if rel_tol <= 0.0 or abs_tol <= 0.0:
        raise ValueError("tolerances must be > 0")

    if region.shape == RECT:
        def g(x, y):
            vals = np.asarray(f(x, y), dtype=complex)
            _check_finite(vals, x, y)
            return vals

        panels = _initial_panels_rect(region, diag_eps)
    else:
        lo = region.t1_lo

        def g(x, s):
            tau2 = lo + (x - lo) * s
            vals = np.asarray(f(x, tau2), dtype=complex)
            _check_finite(vals, x, tau2)
            return vals * (x - lo)

        panels = _initial_panels_triangle(region, diag_eps)

    _evaluate_panels(g, panels)
    n_evals = len(panels) * _EVALS_PER_PANEL

    converged = True
    while True:
        total = sum(p.value for p in panels)
        total_err = sum(p.err for p in panels)
        target = max(abs_tol, rel_tol * abs(total))
        if total_err <= target:
            break
        splittable = [p for p in panels if p.depth < max_depth]
        if not splittable or len(panels) >= _MAX_PANELS:
            converged = False
            break
        # Refine every panel holding more than its fair share of the error
        # budget; fall back to the single worst panel.
        share = target / (2.0 * len(panels))
        chosen = [p for p in splittable if p.err > share]
        if not chosen:
            chosen = [max(splittable, key=lambda p: p.err)]
        fresh = []
        chosen_ids = set(map(id, chosen))
        for p in chosen:
            fresh.extend(_split(p))
        _evaluate_panels(g, fresh)
        n_evals += len(fresh) * _EVALS_PER_PANEL
        panels = [p for p in panels if id(p) not in chosen_ids] + fresh

    total = sum(p.value for p in panels)
    total_err = sum(p.err for p in panels)
    return QuadResult(value=complex(total), err_estimate=float(total_err), n_evals=n_evals, converged=converged)


def riemann_oracle(f, region: Region, n: int) -> complex:
    """Midpoint-rule tensor sum with n x n cells; no adaptivity, no shared code.

    Triangle regions keep cells whose midpoint satisfies tau2 < tau1 at full
    weight and count cells whose midpoint lies exactly on the diagonal at
    half weight (the midpoint grid puts the (i, i) cells exactly on it).
    """
    if n < 2:
        raise ValueError(f"oracle needs n >= 2, got {n}")
    h1 = (region.t1_hi - region.t1_lo) / n
    h2 = (region.t2_hi - region.t2_lo) / n
    x = region.t1_lo + (np.arange(n) + 0.5) * h1
    y = region.t2_lo + (np.arange(n) + 0.5) * h2
    X, Y = np.meshgrid(x, y, indexing="ij")
    vals = np.asarray(f(X, Y), dtype=complex)
    _check_finite(vals, X, Y)
    if region.shape == LOWER_TRIANGLE:
        i = np.arange(n)
        weight = (i[:, None] > i[None, :]).astype(float)
        weight[i, i] = 0.5
        vals = vals * weight
    return complex(vals.sum() * h1 * h2)

"""Shared numerical kernels: central differences, adaptive Simpson
quadrature, a classical fourth-order one-step integrator, and piecewise
cubic Hermite evaluation.

The step sizes and tolerances used package-wide live here so that every
module differentiates and integrates the same way.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

# Central differences: 1e-5 balances truncation against round-off for first
# derivatives in double precision.  The curvature cross-check nests two
# derivative levels and needs a coarser step.
DEFAULT_FD_STEP = 1e-5
CURVATURE_FD_STEP = 1e-4

# Default absolute tolerance for adaptive Simpson quadrature.
SIMPSON_TOL = 1e-10


def central_diff(func: Callable[[float], object], x: float,
                 step: float = DEFAULT_FD_STEP) -> np.ndarray:
    """Central first derivative of ``func`` at ``x``.

    ``func`` may return a scalar or an array; the result has the same shape.
    """
    hi = np.asarray(func(x + step), dtype=float)
    lo = np.asarray(func(x - step), dtype=float)
    return (hi - lo) / (2.0 * step)


def central_diff2(func: Callable[[float], object], x: float,
                  step: float = CURVATURE_FD_STEP) -> np.ndarray:
    """Central second derivative of ``func`` at ``x``.

    The default step is coarser than for first derivatives: the round-off
    floor of the second-difference quotient scales like eps / step**2.
    """
    hi = np.asarray(func(x + step), dtype=float)
    mid = np.asarray(func(x), dtype=float)
    lo = np.asarray(func(x - step), dtype=float)
    return (hi - 2.0 * mid + lo) / (step * step)


def mixed_diff(func: Callable[[float, float], object], x: float, y: float,
               step: float = CURVATURE_FD_STEP) -> np.ndarray:
    """Central mixed second derivative d2/dxdy of a two-argument function."""
    pp = np.asarray(func(x + step, y + step), dtype=float)
    pm = np.asarray(func(x + step, y - step), dtype=float)
    mp = np.asarray(func(x - step, y + step), dtype=float)
    mm = np.asarray(func(x - step, y - step), dtype=float)
    return (pp - pm - mp + mm) / (4.0 * step * step)


def _simpson_recurse(func, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = func(lm)
    frm = func(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    err = left + right - whole
    # Factor 15 from the order-4 error model of Simpson halving.
    if depth <= 0 or abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    half = 0.5 * tol
    return (_simpson_recurse(func, a, fa, m, fm, lm, flm, left, half, depth - 1)
            + _simpson_recurse(func, m, fm, b, fb, rm, frm, right, half, depth - 1))


def adaptive_simpson(func: Callable[[float], float], a: float, b: float,
                     tol: float = SIMPSON_TOL, max_depth: int = 48) -> float:
    """Integrate ``func`` over [a, b] to absolute tolerance ``tol``.

    Standard adaptive Simpson with Richardson correction on accepted
    panels.  ``a > b`` integrates backwards with the usual sign.
    """
    if a == b:
        return 0.0
    fa = func(a)
    fb = func(b)
    m = 0.5 * (a + b)
    fm = func(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_recurse(func, a, fa, b, fb, m, fm, whole, tol, max_depth)


def rk4_step(rhs: Callable[[float, np.ndarray], np.ndarray], u: float,
             state: np.ndarray, h: float) -> np.ndarray:
    """One classical Runge-Kutta step of size ``h``."""
    k1 = np.asarray(rhs(u, state), dtype=float)
    k2 = np.asarray(rhs(u + 0.5 * h, state + 0.5 * h * k1), dtype=float)
    k3 = np.asarray(rhs(u + 0.5 * h, state + 0.5 * h * k2), dtype=float)
    k4 = np.asarray(rhs(u + h, state + h * k3), dtype=float)
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def hermite_eval(u: float, nodes: np.ndarray, values: np.ndarray,
                 slopes: np.ndarray) -> float:
    """Piecewise cubic Hermite evaluation at ``u``.

    ``nodes`` must be strictly increasing; ``values`` and ``slopes`` hold
    the node values and node derivatives.  Outside the node range the first
    or last cubic is extrapolated.
    """
    i = int(np.searchsorted(nodes, u, side="right")) - 1
    i = min(max(i, 0), len(nodes) - 2)
    h = nodes[i + 1] - nodes[i]
    t = (u - nodes[i]) / h
    omt = 1.0 - t
    h00 = (1.0 + 2.0 * t) * omt * omt
    h10 = t * omt * omt
    h01 = t * t * (3.0 - 2.0 * t)
    h11 = t * t * (t - 1.0)
    return (h00 * values[i] + h10 * h * slopes[i]
            + h01 * values[i + 1] + h11 * h * slopes[i + 1])

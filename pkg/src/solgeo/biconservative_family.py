"""The non-CMC biconservative surfaces.

These are constant-angle-type surfaces with one horizontal frame direction
tangent; the tangential fourth-order equation closes into the scalar ODE
3 f f' + f' sin(theta) + f sin(2 theta) = 0 for the mean curvature f and
the vertical angle theta, with theta' = -2 f.  Two kinds of profile are
implemented:

* ``explicit``: theta(u) = 2 arctan(e^{-2 a1 u}) on u < 0, where a1 is the
  positive root of 3 a^2 + a - 1 = 0; here f = a1 sin(theta).
* ``implicit``: a one-parameter family where f solves
  (f - a1 sin theta)^{6 a2} = c (f - a2 sin theta)^{6 a1} at every angle;
  the profile is integrated numerically from theta' = -2 f.

From a profile the quadratures Psi = int cos(theta), Phi1 = -int sin(theta)
e^{Psi} and Phi2 = int sin(theta) e^{-Psi} build the two immersion
variants: one with the first horizontal direction tangent, one with the
second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import brentq

from .numerics import SIMPSON_TOL, adaptive_simpson, hermite_eval, rk4_step
from .patch import SurfacePatch

__all__ = [
    "EXPLICIT",
    "IMPLICIT",
    "FamilyConstants",
    "CONSTANTS",
    "ProfileSolution",
    "SurfaceSelector",
    "theta_explicit",
    "theta_prime_explicit",
    "f_explicit",
    "f_prime_explicit",
    "f_second_explicit",
    "psi_explicit",
    "psi_anchor",
    "gaussian_curvature_closed_form",
    "solve_f",
    "f_prime_implicit",
    "integrate_implicit_profile",
    "build_profile",
    "family_surface",
    "profile_to_csv",
]

EXPLICIT = "explicit"
IMPLICIT = "implicit"

_SQRT13 = math.sqrt(13.0)


@dataclass(frozen=True)
class FamilyConstants:
    """Roots of 3 a^2 + a - 1 = 0 and the derived exponent constants."""

    a1: float = (-1.0 + _SQRT13) / 6.0
    a2: float = (-1.0 - _SQRT13) / 6.0
    b1: float = (-1.0 + _SQRT13) / _SQRT13
    b2: float = (-1.0 - _SQRT13) / _SQRT13


CONSTANTS = FamilyConstants()


def _require_negative(u: float) -> None:
    if u >= 0.0:
        raise ValueError(f"explicit profile requires u < 0, got u = {u:g}")


def theta_explicit(u: float) -> float:
    """Vertical angle theta(u) = 2 arctan(e^{-2 a1 u}) for u < 0.

    Decreases from pi (u -> -inf) to pi/2 (u -> 0-).  Large arguments are
    routed through the reflection 2 arctan(w) = pi - 2 arctan(1/w).
    """
    _require_negative(u)
    t = -2.0 * CONSTANTS.a1 * u
    if t > 350.0:
        return math.pi - 2.0 * math.atan(math.exp(-t))
    return 2.0 * math.atan(math.exp(t))


def theta_prime_explicit(u: float) -> float:
    """Derivative of the explicit angle profile, -4 a1 e^{-2 a1 u} / (1 + e^{-4 a1 u}).

    Evaluated on its own rational form rather than through -2 f, so profile
    consistency checks do not test a formula against itself.
    """
    _require_negative(u)
    t = -2.0 * CONSTANTS.a1 * u
    if t > 350.0:
        return -4.0 * CONSTANTS.a1 * math.exp(-t)
    w = math.exp(t)
    return -4.0 * CONSTANTS.a1 * w / (1.0 + w * w)


def _sech(w: float) -> float:
    if abs(w) > 700.0:
        return 2.0 * math.exp(-abs(w))
    return 1.0 / math.cosh(w)


def f_explicit(u: float) -> float:
    """Mean curvature f(u) = 2 a1 e^{-2 a1 u} / (1 + e^{-4 a1 u}) = a1 sech(2 a1 u)."""
    _require_negative(u)
    return CONSTANTS.a1 * _sech(2.0 * CONSTANTS.a1 * u)


def f_prime_explicit(u: float) -> float:
    """f'(u) = -2 a1^2 sech(2 a1 u) tanh(2 a1 u); positive on u < 0."""
    _require_negative(u)
    w = 2.0 * CONSTANTS.a1 * u
    return -2.0 * CONSTANTS.a1 ** 2 * _sech(w) * math.tanh(w)


def f_second_explicit(u: float) -> float:
    """f''(u) = 4 a1^2 f (1 - 2 sin^2 theta)."""
    _require_negative(u)
    s = _sech(2.0 * CONSTANTS.a1 * u)
    return 4.0 * CONSTANTS.a1 ** 3 * s * (1.0 - 2.0 * s * s)


def psi_explicit(u: float, c0: float = 0.0) -> float:
    """Height quadrature Psi(u) = ln(e^{-4 a1 u} + 1) / (2 a1) + u + c0.

    Evaluated as -u + log1p(e^{4 a1 u}) / (2 a1) + c0, which is exact for
    arbitrarily negative u.
    """
    _require_negative(u)
    a = CONSTANTS.a1
    return -u + math.log1p(math.exp(4.0 * a * u)) / (2.0 * a) + c0


def psi_anchor(u0: float) -> float:
    """The constant c0 that anchors Psi(u0) = 0."""
    _require_negative(u0)
    a = CONSTANTS.a1
    return u0 - math.log1p(math.exp(4.0 * a * u0)) / (2.0 * a)


def gaussian_curvature_closed_form(u: float) -> float:
    """Gaussian curvature of the explicit family, K = -cos^2 theta - 2 f sin theta.

    Equals -tanh^2(2 a1 u) - 2 a1 sech^2(2 a1 u); strictly negative on
    u < 0, with limits -1 (u -> -inf) and -2 a1 (u -> 0-).
    """
    _require_negative(u)
    w = 2.0 * CONSTANTS.a1 * u
    s = _sech(w)
    return -math.tanh(w) ** 2 - 2.0 * CONSTANTS.a1 * s * s


def solve_f(theta: float, c: float) -> float:
    """Mean curvature at angle theta on the implicit-family branch.

    Solves 6 a2 ln(f - a1 y) - 6 a1 ln(f - a2 y) = ln c with y = sin(theta)
    on the branch f > a1 y > 0, where the left side decreases strictly from
    +inf to -inf, so the root exists and is unique for every c > 0.  The
    logarithmic form keeps the non-integer powers real.
    """
    if c <= 0.0:
        raise ValueError("the family constant c must be positive")
    y = math.sin(theta)
    if y <= 0.0:
        raise ValueError("sin(theta) must be positive on the solution branch")
    a1, a2 = CONSTANTS.a1, CONSTANTS.a2
    log_c = math.log(c)

    def relation(fv: float) -> float:
        return (6.0 * a2 * math.log(fv - a1 * y)
                - 6.0 * a1 * math.log(fv - a2 * y) - log_c)

    lo = a1 * y * (1.0 + 1e-14)
    if relation(lo) <= 0.0:
        raise ValueError(f"no bracketing root at theta = {theta:g}, c = {c:g}")
    hi = a1 * y + max(1.0, y)
    doublings = 0
    while relation(hi) > 0.0:
        hi *= 2.0
        doublings += 1
        if doublings > 500:
            raise ValueError(f"root bracket for c = {c:g} did not close")
    return float(brentq(relation, lo, hi, xtol=1e-300, rtol=8.9e-16,
                        maxiter=200))


def f_prime_implicit(theta: float, f: float) -> float:
    """f' along an implicit profile: -f sin(2 theta) / (3 f + sin theta)."""
    return -f * math.sin(2.0 * theta) / (3.0 * f + math.sin(theta))


@dataclass(frozen=True)
class ProfileSolution:
    """Sampled profile (u, theta, f, Psi, Phi1, Phi2) of one family member.

    ``u`` is strictly increasing; Psi and both Phi quadratures vanish at
    the anchor ``u0``.  For the explicit kind the dense evaluators below
    use the closed forms; for the implicit kind they use cubic Hermite
    interpolation through the stored samples, whose slopes are known
    exactly from the ODE, so dense accuracy is O(spacing^4).
    """

    kind: str
    u: np.ndarray
    theta: np.ndarray
    f: np.ndarray
    psi: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    u0: float
    c0: float = 0.0
    c: Optional[float] = None
    halt_reason: Optional[str] = None
    theta_error_estimate: Optional[float] = None

    def __post_init__(self):
        if self.kind not in (EXPLICIT, IMPLICIT):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        for name in ("u", "theta", "f", "psi", "phi1", "phi2"):
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=float))
        if not np.all(np.diff(self.u) > 0.0):
            raise ValueError("profile samples must have strictly increasing u")
        if self.kind == EXPLICIT and np.any(self.u >= 0.0):
            raise ValueError("explicit profiles live on u < 0")
        if np.any(self.f <= 0.0):
            raise ValueError("profile mean curvature must stay positive")
        if not np.all(np.diff(self.theta) < 0.0):
            raise ValueError("profile angle must decrease strictly")
        if self.kind == IMPLICIT and not np.all(np.diff(self.f) > 0.0):
            raise ValueError("implicit profile requires increasing f "
                             "(theta'' < 0)")
        if self.kind == IMPLICIT:
            slopes = np.array([f_prime_implicit(t, fv)
                               for t, fv in zip(self.theta, self.f)])
            object.__setattr__(self, "_f_slopes", slopes)

    # -- dense evaluation ------------------------------------------------

    def _hermite(self, u: float, values: np.ndarray,
                 slopes: np.ndarray) -> float:
        if len(self.u) < 2:
            raise ValueError("need at least two samples for dense evaluation")
        return float(hermite_eval(u, self.u, values, slopes))

    def theta_at(self, u: float) -> float:
        if self.kind == EXPLICIT:
            return theta_explicit(u)
        return self._hermite(u, self.theta, -2.0 * self.f)

    def f_at(self, u: float) -> float:
        if self.kind == EXPLICIT:
            return f_explicit(u)
        return self._hermite(u, self.f, self._f_slopes)

    def f_prime_at(self, u: float) -> float:
        if self.kind == EXPLICIT:
            return f_prime_explicit(u)
        return f_prime_implicit(self.theta_at(u), self.f_at(u))

    def f_second_at(self, u: float) -> float:
        if self.kind == EXPLICIT:
            return f_second_explicit(u)
        raise NotImplementedError("no closed second derivative for the "
                                  "implicit kind; difference f_prime_at")

    def psi_at(self, u: float) -> float:
        if self.kind == EXPLICIT:
            return psi_explicit(u, self.c0)
        return self._hermite(u, self.psi, np.cos(self.theta))

    def psi_prime_at(self, u: float) -> float:
        return math.cos(self.theta_at(u))

    def psi_second_at(self, u: float) -> float:
        return 2.0 * self.f_at(u) * math.sin(self.theta_at(u))

    def phi1_at(self, u: float) -> float:
        if self.kind == EXPLICIT:
            return _phi1_explicit_quad(u, self.u0, self.c0)
        return self._hermite(u, self.phi1, -np.sin(self.theta) * np.exp(self.psi))

    def phi1_prime_at(self, u: float) -> float:
        return -math.sin(self.theta_at(u)) * math.exp(self.psi_at(u))

    def phi1_second_at(self, u: float) -> float:
        theta = self.theta_at(u)
        return (math.exp(self.psi_at(u)) * math.cos(theta)
                * (2.0 * self.f_at(u) - math.sin(theta)))

    def phi2_at(self, u: float) -> float:
        if self.kind == EXPLICIT:
            return _phi2_explicit_quad(u, self.u0, self.c0)
        return self._hermite(u, self.phi2, np.sin(self.theta) * np.exp(-self.psi))

    def phi2_prime_at(self, u: float) -> float:
        return math.sin(self.theta_at(u)) * math.exp(-self.psi_at(u))

    def phi2_second_at(self, u: float) -> float:
        theta = self.theta_at(u)
        return (-math.exp(-self.psi_at(u)) * math.cos(theta)
                * (2.0 * self.f_at(u) + math.sin(theta)))

    # -- derived columns -------------------------------------------------

    def gaussian_curvature(self) -> np.ndarray:
        """K = -cos^2 theta - 2 f sin theta at the samples; negative along
        every valid profile."""
        return -np.cos(self.theta) ** 2 - 2.0 * self.f * np.sin(self.theta)

    @property
    def samples(self) -> np.ndarray:
        """Array of rows (u, theta, f, Psi, Phi) with Phi the first-variant
        quadrature Phi1."""
        return np.column_stack((self.u, self.theta, self.f, self.psi,
                                self.phi1))


@dataclass(frozen=True)
class SurfaceSelector:
    """Which immersion variant to build from a profile."""

    variant: str

    def __post_init__(self):
        if self.variant not in ("x1", "x2"):
            raise ValueError(f"unknown surface variant {self.variant!r}")


@lru_cache(maxsize=None)
def _phi1_explicit_quad(u: float, u0: float, c0: float) -> float:
    a = CONSTANTS.a1
    return -adaptive_simpson(
        lambda s: _sech(2.0 * a * s) * math.exp(psi_explicit(s, c0)),
        u0, u, tol=SIMPSON_TOL)


@lru_cache(maxsize=None)
def _phi2_explicit_quad(u: float, u0: float, c0: float) -> float:
    a = CONSTANTS.a1
    return adaptive_simpson(
        lambda s: _sech(2.0 * a * s) * math.exp(-psi_explicit(s, c0)),
        u0, u, tol=SIMPSON_TOL)


def _march_theta(c: float, theta_start: float, u_span: float, step: float):
    """Fixed-step fourth-order march of theta' = -2 f(theta; c).

    Returns node lists and the halt reason.  Constraint monitors run on
    every accepted state, in this order: the angle leaving the quadrant
    (sin theta cos theta reaching 0), the slope constraint theta' < 0
    (f > 0), and the concavity constraint theta'' < 0 (f' > 0).
    """

    def rhs(_u: float, state: np.ndarray) -> np.ndarray:
        return np.array([-2.0 * solve_f(float(state[0]), c)])

    def violates(theta: float):
        if math.sin(theta) <= 0.0 or math.cos(theta) >= 0.0:
            return "angle_degenerate"
        f = solve_f(theta, c)
        if f <= 0.0:
            return "theta_prime_nonnegative"
        if f_prime_implicit(theta, f) <= 0.0:
            return "theta_second_nonnegative"
        return None

    us = [0.0]
    thetas = [theta_start]
    fs = [solve_f(theta_start, c)]
    reason = violates(theta_start)
    if reason is not None:
        return us, thetas, fs, reason

    n_full = int(math.floor(u_span / step + 1e-9))
    remainder = u_span - n_full * step
    sizes = [step] * n_full + ([remainder] if remainder > 1e-10 * step else [])
    state = np.array([theta_start])
    u = 0.0
    reason = "span_exhausted"
    for h in sizes:
        state_new = rk4_step(rhs, u, state, h)
        theta_new = float(state_new[0])
        found = violates(theta_new)
        if found is not None:
            reason = found
            break
        u += h
        state = state_new
        us.append(u)
        thetas.append(theta_new)
        fs.append(solve_f(theta_new, c))
    return us, thetas, fs, reason


def integrate_implicit_profile(c: float, theta_start: float, u_span: float,
                               step: float = 1e-3) -> ProfileSolution:
    """Integrate one implicit-family profile from theta(0) = theta_start.

    The angle obeys theta' = -2 f with f recovered at every stage by the
    logarithmic root solve of the implicit relation, so each returned
    sample satisfies the relation to solver precision.  A second march at
    twice the step provides a Richardson error estimate for theta
    (``theta_error_estimate``).  Integration stops at ``u_span`` or at the
    first constraint violation, whichever comes first; the reason is
    recorded in ``halt_reason``.

    Quadratures Psi, Phi1, Phi2 are accumulated per step with adaptive
    Simpson on Hermite-dense theta, anchored to zero at u = 0.
    """
    if u_span <= 0.0:
        raise ValueError("u_span must be positive")
    if step <= 0.0:
        raise ValueError("step must be positive")
    us, thetas, fs, reason = _march_theta(c, theta_start, u_span, step)
    u = np.array(us)
    theta = np.array(thetas)
    f = np.array(fs)

    estimate = None
    if len(u) > 2:
        coarse = _march_theta(c, theta_start, u_span, 2.0 * step)[1]
        shared = min(len(coarse), (len(theta) + 1) // 2)
        if shared >= 2:
            diffs = [abs(coarse[k] - theta[2 * k]) for k in range(shared)]
            # Order-4 halving: the coarse-run error is about diff * 16/15.
            estimate = max(diffs) / 15.0

    theta_slope = -2.0 * f
    f_slope = np.array([f_prime_implicit(t, fv) for t, fv in zip(theta, f)])

    def theta_dense(s: float) -> float:
        return float(hermite_eval(s, u, theta, theta_slope))

    def f_dense(s: float) -> float:
        return float(hermite_eval(s, u, f, f_slope))

    def accumulate(integrand) -> np.ndarray:
        out = np.zeros(len(u))
        for k in range(len(u) - 1):
            out[k + 1] = out[k] + adaptive_simpson(integrand, u[k], u[k + 1],
                                                   tol=1e-13)
        return out

    psi = accumulate(lambda s: math.cos(theta_dense(s)))
    psi_slope = np.cos(theta)

    def psi_dense(s: float) -> float:
        return float(hermite_eval(s, u, psi, psi_slope))

    phi1 = accumulate(lambda s: -math.sin(theta_dense(s))
                      * math.exp(psi_dense(s)))
    phi2 = accumulate(lambda s: math.sin(theta_dense(s))
                      * math.exp(-psi_dense(s)))

    return ProfileSolution(kind=IMPLICIT, u=u, theta=theta, f=f, psi=psi,
                           phi1=phi1, phi2=phi2, u0=0.0, c0=0.0, c=c,
                           halt_reason=reason, theta_error_estimate=estimate)


def build_profile(kind: str, c: Optional[float] = None,
                  u_grid: Optional[Sequence[float]] = None,
                  u0: Optional[float] = None,
                  theta_start: Optional[float] = None,
                  step: float = 1e-3) -> ProfileSolution:
    """Sample a profile of either kind on a parameter grid.

    Parameters
    ----------
    kind:
        ``"explicit"`` or ``"implicit"``.
    c, theta_start, step:
        Implicit-kind inputs (ignored for the explicit kind).
    u_grid:
        Strictly increasing sample points; negative for the explicit kind,
        nonnegative for the implicit one.
    u0:
        Quadrature anchor with Psi(u0) = Phi(u0) = 0.  Defaults to -1 for
        the explicit kind and to the first grid point for the implicit
        kind.

    The quadratures are evaluated by adaptive Simpson straight from the
    anchor to each grid point, so no error accumulates across the grid.
    """
    if u_grid is None:
        raise ValueError("u_grid is required")
    grid = np.asarray(u_grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 2:
        raise ValueError("u_grid must contain at least two points")
    if not np.all(np.diff(grid) > 0.0):
        raise ValueError("u_grid must be strictly increasing")

    if kind == EXPLICIT:
        anchor = -1.0 if u0 is None else float(u0)
        _require_negative(anchor)
        if grid[-1] >= 0.0:
            raise ValueError("explicit profiles live on u < 0")
        c0 = psi_anchor(anchor)
        a = CONSTANTS.a1
        theta = np.array([theta_explicit(x) for x in grid])
        f = np.array([f_explicit(x) for x in grid])
        psi = np.array([adaptive_simpson(lambda s: math.tanh(2.0 * a * s),
                                         anchor, x, tol=SIMPSON_TOL)
                        for x in grid])
        phi1 = np.array([_phi1_explicit_quad(x, anchor, c0) for x in grid])
        phi2 = np.array([_phi2_explicit_quad(x, anchor, c0) for x in grid])
        return ProfileSolution(kind=EXPLICIT, u=grid, theta=theta, f=f,
                               psi=psi, phi1=phi1, phi2=phi2, u0=anchor,
                               c0=c0)

    if kind == IMPLICIT:
        if c is None or theta_start is None:
            raise ValueError("implicit profiles need c and theta_start")
        if grid[0] < 0.0:
            raise ValueError("implicit profiles are integrated forward "
                             "from u = 0")
        full = integrate_implicit_profile(c, theta_start, float(grid[-1]),
                                          step)
        usable = grid[grid <= full.u[-1] + 1e-12]
        if len(usable) < 2:
            raise ValueError(
                f"integration halted at u = {full.u[-1]:g} "
                f"({full.halt_reason}); grid not covered")
        anchor = float(usable[0]) if u0 is None else float(u0)
        if not full.u[0] <= anchor <= full.u[-1]:
            raise ValueError("anchor u0 outside the integrated span")
        theta = np.array([full.theta_at(x) for x in usable])
        f = np.array([full.f_at(x) for x in usable])
        psi_anchor_val = full.psi_at(anchor)
        phi1_anchor_val = full.phi1_at(anchor)
        phi2_anchor_val = full.phi2_at(anchor)
        psi = np.array([full.psi_at(x) - psi_anchor_val for x in usable])
        phi1 = np.array([full.phi1_at(x) - phi1_anchor_val for x in usable])
        phi2 = np.array([full.phi2_at(x) - phi2_anchor_val for x in usable])
        return ProfileSolution(kind=IMPLICIT, u=usable, theta=theta, f=f,
                               psi=psi, phi1=phi1, phi2=phi2, u0=anchor,
                               c0=0.0, c=c, halt_reason=full.halt_reason,
                               theta_error_estimate=full.theta_error_estimate)

    raise ValueError(f"unknown profile kind {kind!r}")


def family_surface(profile: ProfileSolution,
                   selector: Union[SurfaceSelector, str],
                   v_range=(-1.0, 1.0)) -> SurfacePatch:
    """Build one immersion variant over ``profile.u`` x ``v_range``.

    Variant ``x1`` is (u, v) -> (v, Phi1(u), Psi(u)); its tangent frame
    contains the first horizontal frame field.  Variant ``x2`` is the
    image of x1 under the ambient isometry (x, y, z) -> (y, x, -z), i.e.
    (u, v) -> (Phi1(u), v, -Psi(u)); the swap also flips the sign case of
    the scalar profile ODE, which is why x2 is generated from the
    reflected data rather than from the Phi2 quadrature of this profile
    (that literal substitution does not satisfy the tangential equation).

    All first and second partials and the mean curvature f(u) come from
    the profile's closed derivative relations, so downstream curvature
    computations are finite-difference-free unless explicitly stripped.
    """
    variant = selector.variant if isinstance(selector, SurfaceSelector) \
        else SurfaceSelector(str(selector)).variant
    v_lo, v_hi = float(v_range[0]), float(v_range[1])
    domain = ((float(profile.u[0]), float(profile.u[-1])), (v_lo, v_hi))
    zero = np.zeros(3)

    if variant == "x1":
        patch = SurfacePatch(
            immersion=lambda u, v: np.array([v, profile.phi1_at(u),
                                             profile.psi_at(u)]),
            d_u=lambda u, v: np.array([0.0, profile.phi1_prime_at(u),
                                       profile.psi_prime_at(u)]),
            d_v=lambda u, v: np.array([1.0, 0.0, 0.0]),
            d_uu=lambda u, v: np.array([0.0, profile.phi1_second_at(u),
                                        profile.psi_second_at(u)]),
            d_uv=lambda u, v: zero,
            d_vv=lambda u, v: zero,
            mean_curvature=lambda u, v: profile.f_at(u),
            mean_curvature_du=lambda u, v: profile.f_prime_at(u),
            mean_curvature_dv=lambda u, v: 0.0,
            domain=domain, name=f"family_x1_{profile.kind}")
        return patch

    return SurfacePatch(
        immersion=lambda u, v: np.array([profile.phi1_at(u), v,
                                         -profile.psi_at(u)]),
        d_u=lambda u, v: np.array([profile.phi1_prime_at(u), 0.0,
                                   -profile.psi_prime_at(u)]),
        d_v=lambda u, v: np.array([0.0, 1.0, 0.0]),
        d_uu=lambda u, v: np.array([profile.phi1_second_at(u), 0.0,
                                    -profile.psi_second_at(u)]),
        d_uv=lambda u, v: zero,
        d_vv=lambda u, v: zero,
        mean_curvature=lambda u, v: profile.f_at(u),
        mean_curvature_du=lambda u, v: profile.f_prime_at(u),
        mean_curvature_dv=lambda u, v: 0.0,
        domain=domain, name=f"family_x2_{profile.kind}")


def profile_to_csv(profile: ProfileSolution, path: Optional[str] = None) -> str:
    """Serialize a profile as CSV with columns u, theta, f, Psi, Phi, K.

    Phi is the first-variant quadrature Phi1; K is the closed-form
    Gaussian curvature.  Values are written with 12 fixed decimals, so
    identical inputs give byte-identical files.  Implicit profiles append
    footer comments recording the halt reason and the step-halving error
    estimate for theta.
    """
    K = profile.gaussian_curvature()
    lines = ["u,theta,f,Psi,Phi,K"]
    for row, k in zip(profile.samples, K):
        lines.append(",".join(f"{val + 0.0:.12f}" for val in (*row, k)))
    if profile.kind == IMPLICIT:
        lines.append(f"# halt_reason: {profile.halt_reason}")
        if profile.theta_error_estimate is not None:
            lines.append(f"# theta_error_estimate: "
                         f"{profile.theta_error_estimate:.3e}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", newline="") as handle:
            handle.write(text)
    return text

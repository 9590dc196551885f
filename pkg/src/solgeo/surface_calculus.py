"""Extrinsic geometry of immersed surface patches.

Fundamental forms, shape operator, mean and Gaussian curvature, the adapted
frame (X1 along the mean-curvature gradient, X2 tangent, xi normal, with
the vertical angle theta and horizontal angle beta), and the residuals of
the two fourth-order surface equations:

* tangential residual A(grad f) + f grad f + f (trace R(., xi) .)^T -- zero
  exactly on biconservative surfaces;
* normal residual Delta f - f |A|^2 - f <trace R(., xi) ., xi> -- zero
  exactly on biharmonic ones.

Sign conventions: the shape operator is A = -(nabla xi)^T, the second
fundamental form satisfies II(X, Y) = <AX, Y> = <nabla_X Y, xi>, and the
mean curvature is f = trace(A) / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np
import scipy.linalg

from .numerics import central_diff, central_diff2, mixed_diff
from .patch import SurfacePatch
from .sol_space import (FRAME, Point, TangentVector, curvature_components,
                        christoffel, sectional_curvature)

__all__ = [
    "DegenerateParametrizationError",
    "CmcDegenerateError",
    "GRADIENT_THRESHOLD",
    "FundamentalForms",
    "ShapeData",
    "AdaptedFrameSample",
    "ScalarField",
    "SurfacePatch",
    "fundamental_forms",
    "shape_data",
    "adapted_frame",
    "biconservative_residual",
    "biharmonic_normal_residual",
    "laplace_beltrami",
    "codazzi_residual",
]

# Below this ambient gradient norm a point counts as CMC-degenerate: the
# adapted frame direction X1 = grad f / |grad f| is no longer trustworthy.
GRADIENT_THRESHOLD = 1e-8


class DegenerateParametrizationError(ValueError):
    """The parameter map fails to be an immersion at the requested point."""


class CmcDegenerateError(RuntimeError):
    """|grad f| is below threshold, so the adapted frame is undefined."""


@dataclass(frozen=True)
class FundamentalForms:
    """First and second fundamental form plus the oriented unit normal."""

    first: np.ndarray
    second: np.ndarray
    normal: TangentVector


@dataclass(frozen=True)
class ShapeData:
    """Shape operator and derived curvature scalars at one parameter point.

    ``A`` and ``gradient_h`` are expressed in the parameter basis
    (d/du, d/dv); ``gradient_h`` is the metric gradient of the mean
    curvature, i.e. the differential raised by the inverse first form.
    ``principal_curvatures`` holds the eigenvalues of ``A`` in ascending
    order.
    """

    A: np.ndarray
    h: float
    K: float
    gradient_h: np.ndarray
    principal_curvatures: np.ndarray


@dataclass(frozen=True)
class AdaptedFrameSample:
    """Adapted orthonormal frame {X1, X2, xi} and its angle functions.

    theta is the vertical angle: sin(theta) = <E3, xi>, cos(theta) =
    <E3, X1>.  beta is the horizontal angle of X2 against (E1, E2).
    ``e3_defect`` is <X2, E3>; it vanishes exactly when the frame has the
    adapted structure, and measures the obstruction otherwise.
    """

    x1: TangentVector
    x2: TangentVector
    xi: TangentVector
    theta: float
    beta: float
    h: float
    lambda1: float
    lambda2: float
    e3_defect: float


@dataclass(frozen=True)
class ScalarField:
    """A scalar function of the surface parameters with optional analytic
    derivative handles; missing handles fall back to finite differences."""

    value: Callable[[float, float], float]
    du: Optional[Callable[[float, float], float]] = None
    dv: Optional[Callable[[float, float], float]] = None
    duu: Optional[Callable[[float, float], float]] = None
    duv: Optional[Callable[[float, float], float]] = None
    dvv: Optional[Callable[[float, float], float]] = None


@dataclass(frozen=True)
class _PointData:
    point: Point
    du_c: np.ndarray
    dv_c: np.ndarray
    du_f: np.ndarray
    dv_f: np.ndarray
    xi_f: np.ndarray
    first: np.ndarray


def _to_frame(point_arr: np.ndarray, coords: np.ndarray) -> np.ndarray:
    ez = math.exp(point_arr[2])
    return np.array([ez * coords[0], coords[1] / ez, coords[2]])


def _point_data(patch: SurfacePatch, u: float, v: float) -> _PointData:
    pos = patch.position(u, v)
    du_c = patch.du(u, v)
    dv_c = patch.dv(u, v)
    du_f = _to_frame(pos, du_c)
    dv_f = _to_frame(pos, dv_c)
    cross = np.cross(du_f, dv_f)
    norm = np.linalg.norm(cross)
    scale = np.linalg.norm(du_f) * np.linalg.norm(dv_f)
    if norm <= 1e-10 * max(scale, 1e-30):
        raise DegenerateParametrizationError(
            f"parametrization of {patch.name!r} degenerates at "
            f"(u, v) = ({u:g}, {v:g})")
    xi_f = patch.orientation * cross / norm
    first = np.array([[np.dot(du_f, du_f), np.dot(du_f, dv_f)],
                      [np.dot(du_f, dv_f), np.dot(dv_f, dv_f)]])
    return _PointData(Point.from_array(pos), du_c, dv_c, du_f, dv_f, xi_f,
                      first)


def _second_form(patch: SurfacePatch, u: float, v: float,
                 data: _PointData) -> np.ndarray:
    gamma = christoffel(data.point)
    pos = data.point.as_array()
    firsts = (data.du_c, data.dv_c)
    seconds = ((patch.duu(u, v), patch.duv(u, v)),
               (patch.duv(u, v), patch.dvv(u, v)))
    second = np.empty((2, 2))
    for i in range(2):
        for j in range(2):
            # Coordinate components of the ambient derivative of d_j along d_i.
            nab = seconds[i][j] + np.einsum("kab,a,b->k", gamma, firsts[i],
                                            firsts[j])
            second[i, j] = float(np.dot(_to_frame(pos, nab), data.xi_f))
    # Enforce exact symmetry; the two mixed entries differ only by round-off.
    second[0, 1] = second[1, 0] = 0.5 * (second[0, 1] + second[1, 0])
    return second


def fundamental_forms(patch: SurfacePatch, u: float,
                      v: float) -> FundamentalForms:
    """First and second fundamental forms of ``patch`` at ``(u, v)``.

    Raises
    ------
    DegenerateParametrizationError
        If the partials fail to span a plane at the point.
    """
    data = _point_data(patch, u, v)
    second = _second_form(patch, u, v, data)
    normal = TangentVector(data.point, data.xi_f, FRAME)
    return FundamentalForms(data.first, second, normal)


def _mean_curvature_value(patch: SurfacePatch, u: float, v: float) -> float:
    if patch.mean_curvature is not None:
        return float(patch.mean_curvature(u, v))
    data = _point_data(patch, u, v)
    second = _second_form(patch, u, v, data)
    return 0.5 * float(np.trace(np.linalg.solve(data.first, second)))


def _mean_curvature_differential(patch: SurfacePatch, u: float,
                                 v: float) -> np.ndarray:
    if patch.mean_curvature_du is not None and patch.mean_curvature_dv is not None:
        return np.array([float(patch.mean_curvature_du(u, v)),
                         float(patch.mean_curvature_dv(u, v))])
    return np.array([
        float(central_diff(lambda s: _mean_curvature_value(patch, s, v), u,
                           patch.fd_step)),
        float(central_diff(lambda t: _mean_curvature_value(patch, u, t), v,
                           patch.fd_step)),
    ])


def shape_data(patch: SurfacePatch, u: float, v: float) -> ShapeData:
    """Shape operator, mean and Gaussian curvature, and grad f at a point.

    The Gaussian curvature combines the ambient sectional curvature of the
    tangent plane with det A (the Gauss equation).  ``gradient_h`` prefers
    the patch's analytic mean-curvature handles; without them it costs a
    finite-difference pass over neighbouring shape computations.
    """
    data = _point_data(patch, u, v)
    second = _second_form(patch, u, v, data)
    A = np.linalg.solve(data.first, second)
    h = 0.5 * float(np.trace(A))
    ambient = sectional_curvature(
        TangentVector(data.point, data.du_f, FRAME),
        TangentVector(data.point, data.dv_f, FRAME))
    K = ambient + float(np.linalg.det(A))
    dh = _mean_curvature_differential(patch, u, v)
    gradient = np.linalg.solve(data.first, dh)
    principal = scipy.linalg.eigh(second, data.first, eigvals_only=True)
    return ShapeData(A, h, K, gradient, principal)


def _x1_coefficients(patch: SurfacePatch, u: float, v: float,
                     shape: ShapeData, data: _PointData,
                     override) -> np.ndarray:
    if override is not None:
        raw = np.asarray(override(u, v) if callable(override) else override,
                         dtype=float)
    else:
        raw = shape.gradient_h
        if math.sqrt(float(raw @ data.first @ raw)) <= GRADIENT_THRESHOLD:
            raise CmcDegenerateError(
                f"|grad f| below {GRADIENT_THRESHOLD:g} on {patch.name!r} at "
                f"(u, v) = ({u:g}, {v:g}); supply x1_coefficients explicitly")
    norm = math.sqrt(float(raw @ data.first @ raw))
    if norm == 0.0:
        raise ValueError("explicit X1 coefficients are zero")
    return raw / norm


def adapted_frame(patch: SurfacePatch, u: float, v: float,
                  x1_coefficients=None) -> AdaptedFrameSample:
    """The adapted frame {X1, X2, xi} with angles theta and beta.

    X1 defaults to the normalized mean-curvature gradient; below the
    gradient threshold the point is CMC-degenerate and the caller must pass
    ``x1_coefficients`` (parameter-basis components, constant or callable)
    to fix the direction, as fixture tests do on CMC leaves.

    X2 completes the tangent basis as the cross product xi x X1, which
    orients beta consistently with the two immersion variants of the
    biconservative family.
    """
    data = _point_data(patch, u, v)
    second = _second_form(patch, u, v, data)
    A = np.linalg.solve(data.first, second)
    h = 0.5 * float(np.trace(A))
    dh = _mean_curvature_differential(patch, u, v)
    gradient = np.linalg.solve(data.first, dh)
    ambient = sectional_curvature(
        TangentVector(data.point, data.du_f, FRAME),
        TangentVector(data.point, data.dv_f, FRAME))
    shape = ShapeData(A, h, ambient + float(np.linalg.det(A)), gradient,
                      scipy.linalg.eigh(second, data.first, eigvals_only=True))

    c1 = _x1_coefficients(patch, u, v, shape, data, x1_coefficients)
    x1_f = c1[0] * data.du_f + c1[1] * data.dv_f
    x2_f = np.cross(data.xi_f, x1_f)
    theta = math.atan2(data.xi_f[2], x1_f[2])
    beta = math.atan2(x2_f[1], x2_f[0])

    lambda1 = float((A @ c1) @ data.first @ c1)
    c2 = np.linalg.solve(data.first,
                         np.array([np.dot(x2_f, data.du_f),
                                   np.dot(x2_f, data.dv_f)]))
    lambda2 = float((A @ c2) @ data.first @ c2)

    return AdaptedFrameSample(
        x1=TangentVector(data.point, x1_f, FRAME),
        x2=TangentVector(data.point, x2_f, FRAME),
        xi=TangentVector(data.point, data.xi_f, FRAME),
        theta=theta, beta=beta, h=h,
        lambda1=lambda1, lambda2=lambda2,
        e3_defect=float(x2_f[2]))


def _curvature_trace(data: _PointData) -> np.ndarray:
    """Frame components of trace R(., xi) . over an orthonormal tangent
    basis obtained by Gram-Schmidt on the parameter partials."""
    t1 = data.du_f / np.linalg.norm(data.du_f)
    w = data.dv_f - np.dot(data.dv_f, t1) * t1
    t2 = w / np.linalg.norm(w)
    return (curvature_components(t1, data.xi_f, t1)
            + curvature_components(t2, data.xi_f, t2))


def biconservative_residual(patch: SurfacePatch, u: float,
                            v: float) -> np.ndarray:
    """Tangential residual A(grad f) + f grad f + f (trace R(., xi) .)^T.

    Returned in the parameter basis; the metric norm of the result is
    ``sqrt(r @ I @ r)`` with the first form ``I`` at the same point.  Zero
    (to discretization error) exactly on biconservative patches.
    """
    data = _point_data(patch, u, v)
    second = _second_form(patch, u, v, data)
    A = np.linalg.solve(data.first, second)
    h = 0.5 * float(np.trace(A))
    dh = _mean_curvature_differential(patch, u, v)
    gradient = np.linalg.solve(data.first, dh)

    trace = _curvature_trace(data)
    tangential = trace - np.dot(trace, data.xi_f) * data.xi_f
    trace_coeffs = np.linalg.solve(data.first,
                                   np.array([np.dot(tangential, data.du_f),
                                             np.dot(tangential, data.dv_f)]))
    return A @ gradient + h * gradient + h * trace_coeffs


def _first_form_at(patch: SurfacePatch, u: float, v: float) -> np.ndarray:
    return _point_data(patch, u, v).first


def _surface_christoffel(patch: SurfacePatch, u: float,
                         v: float) -> np.ndarray:
    """Christoffel symbols of the induced metric, Gamma[k, i, j]."""
    first = _first_form_at(patch, u, v)
    d_first = np.stack([
        central_diff(lambda s: _first_form_at(patch, s, v), u, patch.fd_step),
        central_diff(lambda t: _first_form_at(patch, u, t), v, patch.fd_step),
    ])
    inv = np.linalg.inv(first)
    gamma = np.zeros((2, 2, 2))
    for k in range(2):
        for i in range(2):
            for j in range(2):
                acc = 0.0
                for l in range(2):
                    acc += inv[k, l] * (d_first[i, l, j] + d_first[j, l, i]
                                        - d_first[l, i, j])
                gamma[k, i, j] = 0.5 * acc
    return gamma


def _as_scalar_field(field) -> ScalarField:
    if isinstance(field, ScalarField):
        return field
    return ScalarField(value=field)


def laplace_beltrami(patch: SurfacePatch,
                     field: Union[ScalarField, Callable[[float, float], float]],
                     u: float, v: float) -> float:
    """Surface Laplacian (trace of the intrinsic Hessian) of a scalar field.

    Analytic derivative handles on a :class:`ScalarField` are used where
    present; anything missing is filled by central differences, which makes
    the result second-order accurate in the patch's difference steps.
    """
    fld = _as_scalar_field(field)
    phi_u = (fld.du(u, v) if fld.du is not None else
             float(central_diff(lambda s: fld.value(s, v), u, patch.fd_step)))
    phi_v = (fld.dv(u, v) if fld.dv is not None else
             float(central_diff(lambda t: fld.value(u, t), v, patch.fd_step)))
    phi_uu = (fld.duu(u, v) if fld.duu is not None else
              float(central_diff2(lambda s: fld.value(s, v), u,
                                  patch.fd_step2)))
    phi_vv = (fld.dvv(u, v) if fld.dvv is not None else
              float(central_diff2(lambda t: fld.value(u, t), v,
                                  patch.fd_step2)))
    phi_uv = (fld.duv(u, v) if fld.duv is not None else
              float(mixed_diff(fld.value, u, v, patch.fd_step2)))

    grad = (phi_u, phi_v)
    hess = np.array([[phi_uu, phi_uv], [phi_uv, phi_vv]])
    gamma = _surface_christoffel(patch, u, v)
    inv = np.linalg.inv(_first_form_at(patch, u, v))
    total = 0.0
    for i in range(2):
        for j in range(2):
            correction = gamma[0, i, j] * grad[0] + gamma[1, i, j] * grad[1]
            total += inv[i, j] * (hess[i, j] - correction)
    return float(total)


def biharmonic_normal_residual(patch: SurfacePatch, u: float, v: float,
                               field=None) -> float:
    """Normal residual Delta f - f |A|^2 - f <trace R(., xi) ., xi>.

    ``field`` optionally supplies the mean curvature as a
    :class:`ScalarField` with analytic derivatives (the family profiles
    provide one); otherwise the patch handles or finite differences are
    used.  A biharmonic immersion makes this vanish; for the
    biconservative family it is strictly negative, which is the
    obstruction.
    """
    if field is None:
        field = ScalarField(
            value=(patch.mean_curvature if patch.mean_curvature is not None
                   else (lambda s, t: _mean_curvature_value(patch, s, t))),
            du=patch.mean_curvature_du, dv=patch.mean_curvature_dv)
    fld = _as_scalar_field(field)

    data = _point_data(patch, u, v)
    second = _second_form(patch, u, v, data)
    A = np.linalg.solve(data.first, second)
    h = 0.5 * float(np.trace(A))
    norm_A_sq = float(np.trace(A @ A))
    normal_trace = float(np.dot(_curvature_trace(data), data.xi_f))
    lap = laplace_beltrami(patch, fld, u, v)
    return lap - h * norm_A_sq - h * normal_trace


def codazzi_residual(patch: SurfacePatch, u: float, v: float,
                     z_coeffs: Sequence[float]) -> float:
    """Residual of the Codazzi equation for the tangent direction Z.

    Z is given by constant parameter-basis coefficients.  Evaluates
    <R(d_u, d_v)Z, xi> - [(nabla_u sigma)(d_v, Z) - (nabla_v sigma)(d_u, Z)]
    with the covariant derivative of the (scalar-valued) second form taken
    with the induced-metric Christoffel symbols.
    """
    z = np.asarray(z_coeffs, dtype=float)
    data = _point_data(patch, u, v)
    second = _second_form(patch, u, v, data)
    gamma = _surface_christoffel(patch, u, v)

    def sigma_at(s: float, t: float) -> np.ndarray:
        d = _point_data(patch, s, t)
        return _second_form(patch, s, t, d)

    basis = np.eye(2)
    d_sigma = [
        central_diff(lambda s: sigma_at(s, v), u, patch.fd_step),
        central_diff(lambda t: sigma_at(u, t), v, patch.fd_step),
    ]

    def nabla_sigma(i: int, y: np.ndarray) -> float:
        # (nabla_{d_i} sigma)(Y, Z) for constant-coefficient Y, Z.
        lead = float(y @ d_sigma[i] @ z)
        dy = gamma[:, i, :] @ y
        dz = gamma[:, i, :] @ z
        return lead - float(dy @ second @ z) - float(y @ second @ dz)

    z_f = z[0] * data.du_f + z[1] * data.dv_f
    lhs = float(np.dot(curvature_components(data.du_f, data.dv_f, z_f),
                       data.xi_f))
    return lhs - (nabla_sigma(0, basis[1]) - nabla_sigma(1, basis[0]))

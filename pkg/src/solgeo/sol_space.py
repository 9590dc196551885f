"""The ambient solvable 3-space.

The space is R^3 with the left-invariant metric

    e^{2z} dx^2 + e^{-2z} dy^2 + dz^2.

The orthonormal frame E1 = e^{-z} d/dx, E2 = e^{z} d/dy, E3 = d/dz
trivializes most computations, so every operation accepts tangent vectors
in either the coordinate or the frame basis and converts internally.

Conventions: the curvature tensor is R(X,Y)Z = [nabla_X, nabla_Y]Z
- nabla_{[X,Y]}Z, and sectional curvature of the coordinate 2-planes is
K(E1,E3) = K(E2,E3) = -1, K(E1,E2) = +1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import CURVATURE_FD_STEP, DEFAULT_FD_STEP, central_diff
from .patch import SurfacePatch

__all__ = [
    "Point",
    "TangentVector",
    "MetricAtPoint",
    "DegeneratePlaneError",
    "metric_at",
    "inner",
    "frame_vector",
    "frame_connection",
    "christoffel",
    "covariant_derivative",
    "curvature_components",
    "curvature_tensor",
    "curvature_tensor_fd",
    "sectional_curvature",
    "canonical_leaf",
]

COORDINATE = "coordinate"
FRAME = "frame"


class DegeneratePlaneError(ValueError):
    """The two vectors supposed to span a tangent plane are parallel."""


@dataclass(frozen=True)
class Point:
    """A position in canonical coordinates."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)
                and math.isfinite(self.z)):
            raise ValueError("point coordinates must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @staticmethod
    def from_array(arr) -> "Point":
        a = np.asarray(arr, dtype=float)
        return Point(float(a[0]), float(a[1]), float(a[2]))


@dataclass(frozen=True)
class TangentVector:
    """A tangent vector at a base point, tagged with its basis.

    Frame components c and coordinate components v are related by
    v = (e^{-z} c1, e^{z} c2, c3) at height z.
    """

    base: Point
    components: np.ndarray
    basis: str = COORDINATE

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=float)
        if comps.shape != (3,):
            raise ValueError("components must be a length-3 vector")
        object.__setattr__(self, "components", comps)
        if self.basis not in (COORDINATE, FRAME):
            raise ValueError(f"unknown basis {self.basis!r}")

    def in_frame(self) -> "TangentVector":
        if self.basis == FRAME:
            return self
        ez = math.exp(self.base.z)
        v = self.components
        return TangentVector(self.base, np.array([ez * v[0], v[1] / ez, v[2]]),
                             FRAME)

    def in_coordinates(self) -> "TangentVector":
        if self.basis == COORDINATE:
            return self
        ez = math.exp(self.base.z)
        c = self.components
        return TangentVector(self.base, np.array([c[0] / ez, ez * c[1], c[2]]),
                             COORDINATE)


@dataclass(frozen=True)
class MetricAtPoint:
    """The metric tensor at a fixed point; diagonal (e^{2z}, e^{-2z}, 1)."""

    diagonal: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)

    @property
    def determinant(self) -> float:
        return float(np.prod(self.diagonal))


def metric_at(p: Point) -> MetricAtPoint:
    e2z = math.exp(2.0 * p.z)
    return MetricAtPoint(np.array([e2z, 1.0 / e2z, 1.0]))


def _require_same_base(*vectors: TangentVector) -> Point:
    base = vectors[0].base
    for v in vectors[1:]:
        if v.base != base:
            raise ValueError("tangent vectors have different base points")
    return base


def inner(u: TangentVector, v: TangentVector) -> float:
    """Metric pairing of two tangent vectors at a common base point."""
    _require_same_base(u, v)
    return float(np.dot(u.in_frame().components, v.in_frame().components))


def frame_vector(p: Point, i: int) -> TangentVector:
    """The i-th frame field (1-based) as a tangent vector at p."""
    if i not in (1, 2, 3):
        raise ValueError("frame index must be 1, 2 or 3")
    comps = np.zeros(3)
    comps[i - 1] = 1.0
    return TangentVector(p, comps, FRAME)


# Connection table in the orthonormal frame; row i, column j holds the frame
# components of the derivative of E_j along E_i.  Only four entries are
# nonzero:  (1,1) -> -E3, (1,3) -> E1, (2,2) -> E3, (2,3) -> -E2.
_FRAME_CONNECTION = np.zeros((3, 3, 3))
_FRAME_CONNECTION[0, 0] = (0.0, 0.0, -1.0)
_FRAME_CONNECTION[0, 2] = (1.0, 0.0, 0.0)
_FRAME_CONNECTION[1, 1] = (0.0, 0.0, 1.0)
_FRAME_CONNECTION[1, 2] = (0.0, -1.0, 0.0)


def frame_connection(i: int, j: int) -> np.ndarray:
    """Frame components of the connection applied to frame fields.

    Both indices are 1-based.  The result is constant over the space.
    """
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError("frame indices must be 1, 2 or 3")
    return _FRAME_CONNECTION[i - 1, j - 1].copy()


def christoffel(p: Point) -> np.ndarray:
    """Coordinate Christoffel symbols Gamma[k, i, j] at p.

    Hard-coded closed forms of the diagonal metric; the frame table above
    serves as the cross-check.
    """
    gamma = np.zeros((3, 3, 3))
    e2z = math.exp(2.0 * p.z)
    gamma[0, 0, 2] = gamma[0, 2, 0] = 1.0
    gamma[1, 1, 2] = gamma[1, 2, 1] = -1.0
    gamma[2, 0, 0] = -e2z
    gamma[2, 1, 1] = 1.0 / e2z
    return gamma


def covariant_derivative(field: Callable[[Point], TangentVector],
                         direction: TangentVector,
                         step: float = DEFAULT_FD_STEP) -> TangentVector:
    """Ambient covariant derivative of a vector field along a direction.

    Parameters
    ----------
    field:
        Maps a point to a tangent vector there, in either basis.
    direction:
        Direction (and base point) of differentiation.
    step:
        Central-difference step for the directional derivative of the
        field's coordinate components.

    Returns
    -------
    TangentVector in the coordinate basis at ``direction.base``.
    """
    p = direction.base
    x = direction.in_coordinates().components

    def coords_along(t: float) -> np.ndarray:
        q = Point(p.x + t * x[0], p.y + t * x[1], p.z + t * x[2])
        return field(q).in_coordinates().components

    y0 = coords_along(0.0)
    dy = central_diff(coords_along, 0.0, step)
    if not (np.all(np.isfinite(y0)) and np.all(np.isfinite(dy))):
        raise ValueError("vector field evaluated to a non-finite value")
    gamma = christoffel(p)
    out = dy + np.einsum("kij,i,j->k", gamma, x, y0)
    return TangentVector(p, out, COORDINATE)


def curvature_components(x: np.ndarray, y: np.ndarray,
                         z: np.ndarray) -> np.ndarray:
    """Closed-form curvature R(X,Y)Z on frame components.

    The formula is algebraic in the pairings with the vertical direction:

        R(X,Y)Z = <Y,Z>X - <X,Z>Y + 2<Z,E3>(<X,E3>Y - <Y,E3>X)
                  + 2(<X,Z><Y,E3> - <Y,Z><X,E3>)E3

    with all products Euclidean on frame components.
    """
    yz = float(np.dot(y, z))
    xz = float(np.dot(x, z))
    out = yz * x - xz * y + 2.0 * z[2] * (x[2] * y - y[2] * x)
    out[2] += 2.0 * (xz * y[2] - yz * x[2])
    return out


def curvature_tensor(x: TangentVector, y: TangentVector,
                     z: TangentVector) -> TangentVector:
    """Evaluate the closed-form curvature tensor on three vectors."""
    base = _require_same_base(x, y, z)
    out = curvature_components(x.in_frame().components,
                               y.in_frame().components,
                               z.in_frame().components)
    return TangentVector(base, out, FRAME)


def curvature_tensor_fd(x: TangentVector, y: TangentVector, z: TangentVector,
                        step: float = CURVATURE_FD_STEP) -> TangentVector:
    """Curvature from first principles, as an oracle for the closed form.

    Extends the three vectors to coordinate-constant fields (whose Lie
    bracket vanishes) and evaluates nabla_X nabla_Y Z - nabla_Y nabla_X Z
    with nested finite differences on the Christoffel expression.
    """
    base = _require_same_base(x, y, z)
    xc = x.in_coordinates().components
    yc = y.in_coordinates().components
    zc = z.in_coordinates().components

    def zfield(q: Point) -> TangentVector:
        return TangentVector(q, zc, COORDINATE)

    def nabla_z_along(const_dir: np.ndarray) -> Callable[[Point], TangentVector]:
        def field(q: Point) -> TangentVector:
            return covariant_derivative(zfield, TangentVector(q, const_dir,
                                                              COORDINATE), step)
        return field

    a = covariant_derivative(nabla_z_along(yc),
                             TangentVector(base, xc, COORDINATE), step)
    b = covariant_derivative(nabla_z_along(xc),
                             TangentVector(base, yc, COORDINATE), step)
    return TangentVector(base, a.components - b.components, COORDINATE)


def sectional_curvature(x: TangentVector, y: TangentVector) -> float:
    """Sectional curvature of the plane spanned by two tangent vectors."""
    _require_same_base(x, y)
    xf = x.in_frame().components
    yf = y.in_frame().components
    xx = float(np.dot(xf, xf))
    yy = float(np.dot(yf, yf))
    xy = float(np.dot(xf, yf))
    gram = xx * yy - xy * xy
    if gram <= 1e-14 * max(1.0, xx * yy):
        raise DegeneratePlaneError("spanning vectors are linearly dependent")
    num = float(np.dot(curvature_components(xf, yf, yf), xf))
    return num / gram


def canonical_leaf(kind: str, level: float) -> SurfacePatch:
    """One leaf of the three coordinate foliations, as a test fixture.

    ``x_const`` and ``y_const`` leaves are totally geodesic hyperbolic
    planes; ``z_const`` leaves are flat and minimal.  The ``z_const``
    parametrization is orthonormal: (u, v) -> (u e^{-level}, v e^{level}).
    """
    zero = np.zeros(3)
    square = ((-1.0, 1.0), (-1.0, 1.0))
    if kind == "x_const":
        return SurfacePatch(
            immersion=lambda u, v: np.array([level, u, v]),
            d_u=lambda u, v: np.array([0.0, 1.0, 0.0]),
            d_v=lambda u, v: np.array([0.0, 0.0, 1.0]),
            d_uu=lambda u, v: zero, d_uv=lambda u, v: zero,
            d_vv=lambda u, v: zero,
            domain=square, name=f"leaf_x={level:g}")
    if kind == "y_const":
        return SurfacePatch(
            immersion=lambda u, v: np.array([u, level, v]),
            d_u=lambda u, v: np.array([1.0, 0.0, 0.0]),
            d_v=lambda u, v: np.array([0.0, 0.0, 1.0]),
            d_uu=lambda u, v: zero, d_uv=lambda u, v: zero,
            d_vv=lambda u, v: zero,
            domain=square, name=f"leaf_y={level:g}")
    if kind == "z_const":
        eminus = math.exp(-level)
        eplus = math.exp(level)
        return SurfacePatch(
            immersion=lambda u, v: np.array([u * eminus, v * eplus, level]),
            d_u=lambda u, v: np.array([eminus, 0.0, 0.0]),
            d_v=lambda u, v: np.array([0.0, eplus, 0.0]),
            d_uu=lambda u, v: zero, d_uv=lambda u, v: zero,
            d_vv=lambda u, v: zero,
            domain=square, name=f"leaf_z={level:g}")
    raise ValueError(f"unknown foliation kind {kind!r}")

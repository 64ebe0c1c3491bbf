"""Closed-form geometric sphere fit.

The fit minimises

    J(x0, y0, z0, R) = sum_i [R^2 - |p_i - c|^2]^2

whose stationarity conditions reduce to a symmetric 3x3 linear system in the
center once the data are summarised by their power sums up to third order.
Everything here is a pure function of its inputs.

Moments are always taken about the data centroid. Far from the origin the
raw third-order sums cancel catastrophically; the fit is translation
equivariant, so solving in the centroid frame and shifting back is exact up
to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from math import comb
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .errors import (
    DegenerateGeometryError,
    InsufficientPointsError,
    InvalidInputError,
    NumericalDegeneracyError,
)

MIN_POINTS = 4
DEGENERACY_RTOL = 1e-9
NEGATIVE_R2_RTOL = 1e-9


class Point3(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class SphereParams:
    """Sphere center ``(x0, y0, z0)`` and radius ``r``."""

    x0: float
    y0: float
    z0: float
    r: float

    def __post_init__(self):
        vals = (self.x0, self.y0, self.z0, self.r)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidInputError(f"non-finite sphere parameters {vals}")
        if not self.r > 0:
            raise InvalidInputError(f"sphere radius must be positive, got {self.r}")

    def __iter__(self):
        return iter((self.x0, self.y0, self.z0, self.r))

    @property
    def center(self) -> np.ndarray:
        return np.array([self.x0, self.y0, self.z0])

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.y0, self.z0, self.r])

    def as_dict(self) -> dict:
        return {"x0": self.x0, "y0": self.y0, "z0": self.z0, "r": self.r}


PointsLike = Union[np.ndarray, Sequence[Point3], Sequence[Sequence[float]]]


def as_points(points: PointsLike) -> np.ndarray:
    """Coerce ``points`` to a finite float64 array of shape (N, 3)."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.size == 0:
        return np.empty((0, 3))
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise InvalidInputError(f"expected an (N, 3) array of points, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        bad = int(np.flatnonzero(~np.isfinite(arr).all(axis=1))[0])
        raise InvalidInputError(f"point {bad} has a non-finite coordinate: {arr[bad].tolist()}")
    return arr


# exponent triple (i, j, k) of x^i y^j z^k for every stored sum
_EXPONENTS = {
    "s_x": (1, 0, 0), "s_y": (0, 1, 0), "s_z": (0, 0, 1),
    "s_xx": (2, 0, 0), "s_yy": (0, 2, 0), "s_zz": (0, 0, 2),
    "s_xy": (1, 1, 0), "s_xz": (1, 0, 1), "s_yz": (0, 1, 1),
    "s_xxx": (3, 0, 0), "s_yyy": (0, 3, 0), "s_zzz": (0, 0, 3),
    "s_xyy": (1, 2, 0), "s_xzz": (1, 0, 2), "s_xxy": (2, 1, 0),
    "s_xxz": (2, 0, 1), "s_yzz": (0, 1, 2), "s_yyz": (0, 2, 1),
}
_NAME_OF = {exp: name for name, exp in _EXPONENTS.items()}


@dataclass(frozen=True)
class MomentSums:
    """Power sums of point coordinates up to third order.

    The sums are taken about ``origin`` (the centroid when produced by
    :func:`accumulate`), so ``s_x`` is sum(x_i - origin_x) and so on.
    Together with ``n`` these 19 numbers determine the fit completely.
    """

    n: int = 0
    s_x: float = 0.0
    s_y: float = 0.0
    s_z: float = 0.0
    s_xx: float = 0.0
    s_yy: float = 0.0
    s_zz: float = 0.0
    s_xy: float = 0.0
    s_xz: float = 0.0
    s_yz: float = 0.0
    s_xxx: float = 0.0
    s_yyy: float = 0.0
    s_zzz: float = 0.0
    s_xyy: float = 0.0
    s_xzz: float = 0.0
    s_xxy: float = 0.0
    s_xxz: float = 0.0
    s_yzz: float = 0.0
    s_yyz: float = 0.0
    origin: tuple = (0.0, 0.0, 0.0)

    def _sum(self, exp):
        if exp == (0, 0, 0):
            return float(self.n)
        return getattr(self, _NAME_OF[exp])

    @property
    def centroid(self) -> np.ndarray:
        if self.n == 0:
            return np.asarray(self.origin, dtype=float)
        return np.asarray(self.origin) + np.array([self.s_x, self.s_y, self.s_z]) / self.n

    def shifted(self, origin) -> "MomentSums":
        """Re-express the same sums about a different origin."""
        origin = tuple(float(v) for v in origin)
        t = np.asarray(origin) - np.asarray(self.origin)
        if self.n == 0 or not t.any():
            return MomentSums(**{**self._values(), "origin": origin})
        # (q - t)^e expanded binomially; every lower monomial is also stored
        pw = [[(-t[ax]) ** p for p in range(4)] for ax in range(3)]
        out = {}
        for name, (i, j, k) in _EXPONENTS.items():
            total = 0.0
            for a in range(i + 1):
                for b in range(j + 1):
                    for c in range(k + 1):
                        coef = comb(i, a) * comb(j, b) * comb(k, c)
                        total += (coef * pw[0][i - a] * pw[1][j - b] * pw[2][k - c]
                                  * self._sum((a, b, c)))
            out[name] = total
        return MomentSums(n=self.n, origin=origin, **out)

    def _values(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "origin"}

    def __add__(self, other: "MomentSums") -> "MomentSums":
        return merge(self, other)


@dataclass(frozen=True)
class LinearSystem3:
    """Center equations ``a x + b y + c z = d``, ``e x + f y + g z = h``,
    ``j x + k y + l z = m``, posed in coordinates relative to ``origin``."""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    g: float
    h: float
    j: float
    k: float
    l: float  # noqa: E741
    m: float
    origin: tuple = (0.0, 0.0, 0.0)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b, self.c],
                         [self.e, self.f, self.g],
                         [self.j, self.k, self.l]])

    @property
    def rhs(self) -> np.ndarray:
        return np.array([self.d, self.h, self.m])

    @property
    def determinant(self) -> float:
        a, b, c, e, f, g, j, k, l = (self.a, self.b, self.c, self.e, self.f,
                                     self.g, self.j, self.k, self.l)
        return a * (f * l - g * k) - e * (b * l - c * k) + j * (b * g - c * f)


def accumulate(points: PointsLike) -> MomentSums:
    """Accumulate the coordinate power sums of ``points`` about their centroid."""
    pts = as_points(points)
    n = len(pts)
    if n == 0:
        return MomentSums()
    centroid = pts.mean(axis=0)
    q = np.ascontiguousarray((pts - centroid).T)
    # rows x, y, z against columns x, y, z, x^2, y^2, z^2
    prods = (q @ np.vstack([q, q * q]).T).tolist()
    (s_xx, s_xy, s_xz, s_xxx, s_xyy, s_xzz), \
        (_, s_yy, s_yz, s_xxy, s_yyy, s_yzz), \
        (_, _, s_zz, s_xxz, s_yyz, s_zzz) = prods
    s_x, s_y, s_z = q.sum(axis=1).tolist()
    return MomentSums(
        n, s_x, s_y, s_z, s_xx, s_yy, s_zz, s_xy, s_xz, s_yz,
        s_xxx, s_yyy, s_zzz, s_xyy, s_xzz, s_xxy, s_xxz, s_yzz, s_yyz,
        origin=tuple(centroid.tolist()),
    )


def merge(a: MomentSums, b: MomentSums) -> MomentSums:
    """Combine sums of two disjoint point sets, as if accumulated together."""
    if b.n == 0:
        return a
    if a.n == 0:
        return b
    n = a.n + b.n
    origin = (a.n * a.centroid + b.n * b.centroid) / n
    sa, sb = a.shifted(origin), b.shifted(origin)
    return MomentSums(
        n=n,
        origin=tuple(float(v) for v in origin),
        **{name: getattr(sa, name) + getattr(sb, name) for name in _EXPONENTS},
    )


def build_system(moments: MomentSums) -> LinearSystem3:
    """Arrange the center stationarity conditions as a 3x3 linear system.

    Raises:
        InsufficientPointsError: fewer than four points were accumulated.
    """
    s = moments
    if s.n < MIN_POINTS:
        raise InsufficientPointsError(
            f"a sphere needs at least {MIN_POINTS} points, got {s.n}")
    n = float(s.n)
    sq = s.s_xx + s.s_yy + s.s_zz

    a = 2 * s.s_x * s.s_x - 2 * n * s.s_xx
    b = 2 * s.s_x * s.s_y - 2 * n * s.s_xy
    c = 2 * s.s_x * s.s_z - 2 * n * s.s_xz
    f = 2 * s.s_y * s.s_y - 2 * n * s.s_yy
    g = 2 * s.s_y * s.s_z - 2 * n * s.s_yz
    l = 2 * s.s_z * s.s_z - 2 * n * s.s_zz  # noqa: E741

    d = -n * (s.s_xxx + s.s_xyy + s.s_xzz) + sq * s.s_x
    h = -n * (s.s_xxy + s.s_yyy + s.s_yzz) + sq * s.s_y
    m = -n * (s.s_xxz + s.s_yyz + s.s_zzz) + sq * s.s_z

    return LinearSystem3(a=a, b=b, c=c, d=d,
                         e=b, f=f, g=g, h=h,
                         j=c, k=g, l=l, m=m,
                         origin=s.origin)


def solve_center(system: LinearSystem3) -> tuple:
    """Solve the center system by Cramer's rule; returns absolute (x0, y0, z0).

    Raises:
        DegenerateGeometryError: the determinant is negligible relative to the
            product of the row norms (Hadamard's bound), as for coplanar data.
    """
    s = system
    delta = s.determinant
    scale = (math.hypot(s.a, s.b, s.c) * math.hypot(s.e, s.f, s.g)
             * math.hypot(s.j, s.k, s.l))
    if not scale > 0 or abs(delta) < DEGENERACY_RTOL * scale:
        raise DegenerateGeometryError(
            "center system is singular; points are coplanar or collinear "
            f"(|det| / row-norm product = {abs(delta) / scale if scale else 0.0:.3g})")
    a, b, c, d, e, f, g, h, j, k, l, m = (s.a, s.b, s.c, s.d, s.e, s.f,
                                          s.g, s.h, s.j, s.k, s.l, s.m)
    x0 = (d * (f * l - g * k) - h * (b * l - c * k) + m * (b * g - c * f)) / delta
    y0 = (a * (h * l - m * g) - e * (d * l - m * c) + j * (d * g - h * c)) / delta
    z0 = (a * (f * m - h * k) - e * (b * m - d * k) + j * (b * h - d * f)) / delta
    ox, oy, oz = s.origin
    return (x0 + ox, y0 + oy, z0 + oz)


def radius(moments: MomentSums, center) -> float:
    """Radius that makes the fit stationary in R: the RMS distance to ``center``."""
    s = moments
    if s.n < 1:
        raise InsufficientPointsError("radius needs at least one point")
    tx, ty, tz = (float(c) - o for c, o in zip(center, s.origin))
    n = float(s.n)
    spread = (s.s_xx + s.s_yy + s.s_zz) / n
    offset = tx * tx + ty * ty + tz * tz
    r2 = spread - 2.0 * (tx * s.s_x + ty * s.s_y + tz * s.s_z) / n + offset
    if r2 < -NEGATIVE_R2_RTOL * (spread + offset):
        raise NumericalDegeneracyError(f"negative squared radius {r2:.6g}")
    if r2 <= 0.0:
        raise NumericalDegeneracyError("fitted sphere has zero radius")
    return math.sqrt(r2)


def fit_moments(moments: MomentSums) -> SphereParams:
    """Fit a sphere from pre-accumulated (possibly merged) moments."""
    center = solve_center(build_system(moments))
    return SphereParams(*center, radius(moments, center))


def fit_exact(points: PointsLike) -> SphereParams:
    """Non-iterative geometric sphere fit.

    One pass to accumulate moments, then a closed-form 3x3 solve and the
    radius. Needs at least four non-coplanar points.

    Example:
        >>> fit_exact([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1)])
        SphereParams(x0=0.0, y0=0.0, z0=0.0, r=1.0)
    """
    return fit_moments(accumulate(points))


def objective_j(points: PointsLike, params: Iterable[float]) -> float:
    """Sum over points of (R^2 - squared distance to center)^2."""
    pts = as_points(points)
    x0, y0, z0, r = params
    d2 = ((pts - np.array([x0, y0, z0])) ** 2).sum(axis=1)
    return float(((r * r - d2) ** 2).sum())

"""Basic 3d primitives: points, lines, planes, isometries, tolerances.

Points and vectors are plain float64 numpy arrays of shape (3,).  Everything
downstream (meshes, linkages, surgery) builds on the handful of exact
geometric operations collected here.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "GeometryError",
    "Line3",
    "Plane3",
    "Isometry3",
    "point",
    "norm",
    "unit",
    "pairwise_scale",
    "half_rotation",
    "reflect_in_plane",
    "trilaterate",
    "signed_volume_tetra",
]


class GeometryError(ValueError):
    """Degenerate or infeasible geometric input."""


@dataclass(frozen=True)
class Tolerance:
    """Numeric slack used throughout.

    eps_len   relative tolerance on lengths (scaled by the extent of the data)
    eps_rank  relative singular value cutoff for rank decisions
    eps_geom  absolute slack for contact/intersection predicates
    """

    eps_len: float = 1e-9
    eps_rank: float = 1e-8
    eps_geom: float = 1e-12


DEFAULT_TOL = Tolerance()


def point(x: float, y: float, z: float) -> np.ndarray:
    return np.array([x, y, z], dtype=float)


def norm(v: np.ndarray) -> float:
    return float(np.linalg.norm(v))


def unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0.0:
        raise GeometryError("cannot normalize zero vector")
    return v / n


def pairwise_scale(points: np.ndarray) -> float:
    """Largest pairwise distance of a point set, used to scale tolerances."""
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(pts) < 2:
        return 0.0
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=2).max()))


@dataclass(frozen=True)
class Line3:
    """Line through `anchor` with unit `direction`."""

    anchor: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "anchor", np.asarray(self.anchor, dtype=float))
        d = np.asarray(self.direction, dtype=float)
        n = np.linalg.norm(d)
        if n < 1e-300:
            raise GeometryError("line direction must be nonzero")
        object.__setattr__(self, "direction", d / n)

    def project(self, p: np.ndarray) -> np.ndarray:
        """Foot of the perpendicular from p onto the line."""
        w = np.asarray(p, dtype=float) - self.anchor
        return self.anchor + (w @ self.direction) * self.direction

    def distance(self, p: np.ndarray) -> float:
        return norm(np.asarray(p, dtype=float) - self.project(p))


@dataclass(frozen=True)
class Plane3:
    """Plane through `anchor` with unit `normal`."""

    anchor: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "anchor", np.asarray(self.anchor, dtype=float))
        n = np.asarray(self.normal, dtype=float)
        ln = np.linalg.norm(n)
        if ln < 1e-300:
            raise GeometryError("plane normal must be nonzero")
        object.__setattr__(self, "normal", n / ln)

    def signed_distance(self, p: np.ndarray) -> float:
        return float((np.asarray(p, dtype=float) - self.anchor) @ self.normal)


@dataclass(frozen=True)
class Isometry3:
    """Rigid or reflective motion p -> rot @ p + trans."""

    rot: np.ndarray = field(default_factory=lambda: np.eye(3))
    trans: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        r = np.asarray(self.rot, dtype=float).reshape(3, 3)
        t = np.asarray(self.trans, dtype=float).reshape(3)
        if not np.allclose(r @ r.T, np.eye(3), atol=1e-12):
            raise GeometryError("isometry linear part must be orthogonal")
        object.__setattr__(self, "rot", r)
        object.__setattr__(self, "trans", t)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.rot))

    def apply(self, p: np.ndarray) -> np.ndarray:
        """Apply to one point (3,) or a stack of points (..., 3)."""
        p = np.asarray(p, dtype=float)
        return p @ self.rot.T + self.trans

    def compose(self, other: "Isometry3") -> "Isometry3":
        """self after other: (self.compose(other)).apply(p) == self(other(p))."""
        return Isometry3(self.rot @ other.rot, self.rot @ other.trans + self.trans)

    def inverse(self) -> "Isometry3":
        rt = self.rot.T
        return Isometry3(rt, -rt @ self.trans)


def half_rotation(line: Line3) -> Isometry3:
    """Rotation by pi about a line.  An involution with det +1."""
    n = line.direction
    rot = 2.0 * np.outer(n, n) - np.eye(3)
    a = line.anchor
    return Isometry3(rot, a - rot @ a)


def reflect_in_plane(plane: Plane3) -> Isometry3:
    """Mirror image in a plane.  An involution with det -1."""
    n = plane.normal
    rot = np.eye(3) - 2.0 * np.outer(n, n)
    # p - 2((p - o).n)n  ==  rot @ p + 2(o.n)n
    trans = 2.0 * (plane.anchor @ n) * n
    return Isometry3(rot, trans)


def trilaterate(
    p1: np.ndarray,
    p2: np.ndarray,
    p3: np.ndarray,
    d1: float,
    d2: float,
    d3: float,
    tol: Tolerance = DEFAULT_TOL,
) -> list[np.ndarray]:
    """Points at given distances from three base points.

    Returns 0, 1 or 2 solutions; 1 means the spheres meet tangentially in
    the base plane.  The two-solution case is ordered with the point on the
    positive side of the base triangle's normal first.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    p3 = np.asarray(p3, dtype=float)
    if min(d1, d2, d3) < 0:
        raise GeometryError("trilateration distances must be nonnegative")
    scale = max(pairwise_scale(np.array([p1, p2, p3])), d1, d2, d3, 1e-300)

    ex = p2 - p1
    dx = np.linalg.norm(ex)
    if dx <= tol.eps_len * scale:
        raise GeometryError("trilateration base points coincide")
    ex = ex / dx
    w = p3 - p1
    i = float(w @ ex)
    ey = w - i * ex
    j = np.linalg.norm(ey)
    if j <= tol.eps_len * scale:
        raise GeometryError("trilateration base points are collinear")
    ey = ey / j
    ez = np.cross(ex, ey)

    x = (d1 * d1 - d2 * d2 + dx * dx) / (2.0 * dx)
    y = (d1 * d1 - d3 * d3 + i * i + j * j - 2.0 * i * x) / (2.0 * j)
    z2 = d1 * d1 - x * x - y * y

    base = p1 + x * ex + y * ey
    slack = tol.eps_len * scale * scale
    if z2 > slack:
        z = float(np.sqrt(z2))
        return [base + z * ez, base - z * ez]
    if z2 >= -slack:
        return [base]
    return []


def signed_volume_tetra(
    a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray
) -> float:
    """Signed volume of the tetrahedron abcd (positive when d sees abc ccw)."""
    a = np.asarray(a, dtype=float)
    m = np.array([np.asarray(b, float) - a, np.asarray(c, float) - a, np.asarray(d, float) - a])
    return float(np.linalg.det(m)) / 6.0

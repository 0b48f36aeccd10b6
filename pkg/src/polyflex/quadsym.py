"""Symmetries of spatial quadrilaterals.

A quadrilateral A B A' B' (cyclic order, generally skew) can carry two kinds
of symmetry that matter for surgery on flexible polyhedra:

* rotational: |AB| = |A'B'| and |AB'| = |A'B|.  There is a line L so that the
  half-rotation about L swaps A with A' and B with B'.
* reflective: |AB| = |AB'| and |A'B| = |A'B'|.  There is a plane through A
  and A' whose mirror swaps B with B'.

Both constructions are exact up to rounding; callers use them to twist or
reflect one side of a cut polyhedron onto the other.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    GeometryError,
    Isometry3,
    Line3,
    Plane3,
    Tolerance,
    half_rotation,
    norm,
    pairwise_scale,
    reflect_in_plane,
    unit,
)

__all__ = [
    "QuadSymmetryKind",
    "QuadSymmetry",
    "symmetry_line",
    "symmetry_plane",
    "classify_quad",
]


class QuadSymmetryKind(enum.Enum):
    ROTATIONAL = "rotational"
    REFLECTIVE = "reflective"
    NONE = "none"


@dataclass(frozen=True)
class QuadSymmetry:
    kind: QuadSymmetryKind
    line: Line3 | None = None
    plane: Plane3 | None = None

    @property
    def isometry(self) -> Isometry3 | None:
        if self.kind is QuadSymmetryKind.ROTATIONAL:
            return half_rotation(self.line)
        if self.kind is QuadSymmetryKind.REFLECTIVE:
            return reflect_in_plane(self.plane)
        return None


def _as_quad(a, b, a2, b2) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, float]:
    pts = [np.asarray(p, dtype=float) for p in (a, b, a2, b2)]
    scale = pairwise_scale(np.array(pts))
    if scale == 0.0:
        raise GeometryError("quadrilateral points all coincide")
    for i in range(4):
        for j in range(i + 1, 4):
            if norm(pts[i] - pts[j]) <= 1e-12 * scale:
                raise GeometryError("quadrilateral has coincident points")
    return pts[0], pts[1], pts[2], pts[3], scale


def symmetry_line(a, b, a2, b2, tol: Tolerance = DEFAULT_TOL) -> Line3:
    """Axis whose half-rotation swaps a<->a2 and b<->b2.

    Requires |ab| = |a2 b2| and |a b2| = |a2 b|.  The axis passes through the
    midpoints of both diagonals; when those coincide (planar parallelogram)
    it is the perpendicular to the plane through the common midpoint.
    """
    a, b, a2, b2, scale = _as_quad(a, b, a2, b2)
    if abs(norm(a - b) - norm(a2 - b2)) > tol.eps_len * scale or abs(
        norm(a - b2) - norm(a2 - b)
    ) > tol.eps_len * scale:
        raise GeometryError("opposite side lengths differ; no rotational symmetry")

    x = 0.5 * (a + a2)
    y = 0.5 * (b + b2)
    if norm(x - y) > tol.eps_len * scale:
        line = Line3(x, y - x)
    else:
        # Diagonals bisect each other: planar parallelogram.  The axis is the
        # perpendicular to the plane spanned by the diagonals.
        n = np.cross(a2 - a, b2 - b)
        if norm(n) <= tol.eps_len * scale * scale:
            raise GeometryError("degenerate quadrilateral")
        line = Line3(x, n)

    rot = half_rotation(line)
    err = max(norm(rot.apply(a) - a2), norm(rot.apply(b) - b2))
    if err > 1e-6 * scale:
        raise GeometryError("no half-rotation maps the quadrilateral to itself")
    return line


def symmetry_plane(a, b, a2, b2, tol: Tolerance = DEFAULT_TOL) -> Plane3:
    """Plane through a and a2 whose mirror swaps b<->b2.

    Requires |ab| = |ab2| and |a2 b| = |a2 b2|.  Generically the plane passes
    through a, a2 and the midpoint of b b2; if those are collinear (planar
    kite) the normal is the b->b2 direction instead.
    """
    a, b, a2, b2, scale = _as_quad(a, b, a2, b2)
    if abs(norm(a - b) - norm(a - b2)) > tol.eps_len * scale or abs(
        norm(a2 - b) - norm(a2 - b2)
    ) > tol.eps_len * scale:
        raise GeometryError("side lengths at a and a2 differ; no mirror symmetry")

    m = 0.5 * (b + b2)
    n = np.cross(a2 - a, m - a)
    if norm(n) > tol.eps_len * scale * scale:
        plane = Plane3(a, n)
    else:
        # a, a2, m collinear; the mirror must send b straight to b2.
        if norm(b - b2) <= tol.eps_len * scale:
            raise GeometryError("degenerate quadrilateral")
        plane = Plane3(a, unit(b2 - b))

    refl = reflect_in_plane(plane)
    err = max(norm(refl.apply(b) - b2), norm(refl.apply(a) - a), norm(refl.apply(a2) - a2))
    if err > 1e-6 * scale:
        raise GeometryError("no mirror maps the quadrilateral to itself")
    return plane


def classify_quad(a, b, a2, b2, tol: Tolerance = DEFAULT_TOL) -> QuadSymmetry:
    """Detect the symmetry of quadrilateral a b a2 b2.

    Rotational symmetry is preferred when both kinds are present (rhombic
    quadrilaterals).  Returns kind NONE when neither construction succeeds.
    """
    try:
        line = symmetry_line(a, b, a2, b2, tol)
        return QuadSymmetry(QuadSymmetryKind.ROTATIONAL, line=line)
    except GeometryError:
        pass
    try:
        plane = symmetry_plane(a, b, a2, b2, tol)
        return QuadSymmetry(QuadSymmetryKind.REFLECTIVE, plane=plane)
    except GeometryError:
        pass
    return QuadSymmetry(QuadSymmetryKind.NONE)

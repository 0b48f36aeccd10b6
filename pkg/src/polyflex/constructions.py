"""Parametric builders for the flexible polyhedra this package studies.

The chain octahedron -> decahedron -> dodecahedron works like this: a
rotationally symmetric (type I) octahedron is built from five lengths, a
helper vertex D is placed on edge AC' so that the quad B D B' A' becomes
plane-symmetric, cutting and reflecting along that quad turns the octahedron
into a ten-faced pentagonal bipyramid, and a tent erected over the face
responsible for all remaining self-intersections yields an embedded flexible
dodecahedron on eight vertices.  A cut-and-twist variant produces the
7-vertex flexible pentagonal bipyramid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .geometry import DEFAULT_TOL, GeometryError, Tolerance, norm, signed_volume_tetra, trilaterate
from .mesh import (
    Configuration,
    Face,
    TriMesh,
    SurfaceQuad,
    cut_and_reflect,
    cut_and_twist,
    mesh_scale,
    self_intersections,
    split_edge,
    validate,
)
from .flex import FlexTrajectory, continue_flex

__all__ = [
    "ConstructionError",
    "DodecParams",
    "DerivedLengths",
    "Min8Params",
    "DEFAULT_PARAMS",
    "FOOTNOTE_PARAMS",
    "derive_xy",
    "octahedron_edge_table",
    "decahedron_edge_table",
    "check_edge_table",
    "build_bricard1",
    "build_bricard2",
    "locate_D",
    "cut_reflect_to_decahedron",
    "select_tent_face",
    "erect_tent",
    "build_dodecahedron",
    "build_dodecahedron_detail",
    "DodecBuild",
    "build_min8_twist",
    "OCTA_FACES",
]


class ConstructionError(RuntimeError):
    """A builder stage cannot produce its object; message carries the stage."""


def _stage(stage: str, msg: str) -> ConstructionError:
    return ConstructionError(f"{stage}: {msg}")


# Faces of the labeled octahedron with equator A, B, A', B' and apices C
# (north) and C' (south).  Orientation is outward for the convex labeling;
# the flexible realizations are immersed, so the signed volume is 0.
OCTA_FACES: tuple[Face, ...] = (
    ("A", "B", "C"),
    ("B", "A'", "C"),
    ("A'", "B'", "C"),
    ("B'", "A", "C"),
    ("B", "A", "C'"),
    ("A'", "B", "C'"),
    ("B'", "A'", "C'"),
    ("A", "B'", "C'"),
)


@dataclass(frozen=True)
class DerivedLengths:
    x: float
    y: float


@dataclass(frozen=True)
class DodecParams:
    """Lengths for the octahedron-to-dodecahedron chain.

    l1..l5 shape the octahedron, h1..h3 are the tent altitudes, and
    base_shape is the twist angle of the base quadrilateral used to seed the
    construction (the flex explores the rest)."""

    l1: float = 3.6
    l2: float = 3.9
    l3: float = 1.0
    l4: float = 3.9
    l5: float = 2.9
    h1: float = 6.5
    h2: float = 6.5
    h3: float = 6.1
    base_shape: float = 0.75

    @property
    def lengths(self) -> tuple[float, float, float, float, float]:
        return (self.l1, self.l2, self.l3, self.l4, self.l5)

    @property
    def heights(self) -> tuple[float, float, float]:
        return (self.h1, self.h2, self.h3)

    def validated(self) -> "DodecParams":
        for name in ("l1", "l2", "l3", "l4", "l5", "h1", "h2", "h3"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConstructionError(f"params: {name} must be a positive length, got {v!r}")
        l1, l2, l3, l4, l5 = self.lengths
        if not (l1 + l2 > l3 and l2 + l3 > l1 and l3 + l1 > l2):
            raise ConstructionError("params: triangle inequality fails for (l1, l2, l3)")
        xy = derive_xy(l1, l2, l3, l4, l5)
        L = l3 + l4
        if not (l2 + L > xy.x and L + xy.x > l2 and xy.x + l2 > L):
            raise ConstructionError("params: triangle inequality fails for (l2, l3+l4, x)")
        if not (l1 + L > xy.y and L + xy.y > l1 and xy.y + l1 > L):
            raise ConstructionError("params: triangle inequality fails for (l1, l3+l4, y)")
        return self


DEFAULT_PARAMS = DodecParams()
# Alternative set quoted for a larger range of motion, at the price of
# thinner triangles.
FOOTNOTE_PARAMS = DodecParams(l1=4.2, l2=4.3, l3=1.0, l4=4.8, l5=3.05, h1=7.9, h2=4.0, h3=6.4)


def derive_xy(l1, l2=None, l3=None, l4=None, l5=None) -> DerivedLengths:
    """Apex distances x = BC' and y = B'C' forced by the D construction.

    Law of cosines in the triangles ABC' and AB'C' sharing the angle at A,
    using that D sits on AC' with AD = l3 and DB = A'B, DB' = A'B'."""
    if isinstance(l1, DodecParams):
        l1, l2, l3, l4, l5 = l1.lengths
    if l3 <= 0:
        raise ConstructionError("derive_xy: l3 must be positive")
    L = l3 + l4
    x2 = l2 * l2 + L * L - (L / l3) * (l2 * l2 + l3 * l3 - l1 * l1)
    y2 = l1 * l1 + L * L - (L / l3) * (l1 * l1 + l3 * l3 - l2 * l2)
    if x2 <= 0 or y2 <= 0:
        raise ConstructionError("derive_xy: infeasible lengths (negative radicand)")
    return DerivedLengths(math.sqrt(x2), math.sqrt(y2))


def octahedron_edge_table(params: DodecParams) -> dict[tuple[str, str], float]:
    l1, l2, l3, l4, l5 = params.lengths
    L = l3 + l4
    xy = derive_xy(params)
    return {
        ("A", "B"): l2, ("A'", "B'"): l2, ("A'", "B"): l1, ("A", "B'"): l1,
        ("A", "C"): l5, ("A'", "C"): L, ("B", "C"): xy.y, ("B'", "C"): xy.x,
        ("A", "C'"): L, ("A'", "C'"): l5, ("B", "C'"): xy.x, ("B'", "C'"): xy.y,
    }


def decahedron_edge_table(params: DodecParams) -> dict[tuple[str, str], float]:
    l1, l2, l3, l4, l5 = params.lengths
    L = l3 + l4
    xy = derive_xy(params)
    return {
        # equatorial pentagon A - C - A' - C'' - D
        ("A", "C"): l5, ("A'", "C"): L, ("A'", "C''"): l4, ("C''", "D"): l5, ("A", "D"): l3,
        # apex B
        ("A", "B"): l2, ("B", "C"): xy.y, ("A'", "B"): l1, ("B", "C''"): xy.x, ("B", "D"): l1,
        # apex B'
        ("A", "B'"): l1, ("B'", "C"): xy.x, ("A'", "B'"): l2, ("B'", "C''"): xy.y, ("B'", "D"): l2,
    }


def check_edge_table(
    mesh: TriMesh,
    config: Configuration,
    table: dict[tuple[str, str], float],
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Max absolute length error; raises if the table misses a mesh edge."""
    lookup = {tuple(sorted(k)): v for k, v in table.items()}
    if len(lookup) != len(table):
        raise ConstructionError("edge table: duplicate edge entries")
    worst = 0.0
    for (u, v) in mesh.edges:
        target = lookup.get((u, v))
        if target is None:
            raise ConstructionError(f"edge table: no target for mesh edge ({u}, {v})")
        if target <= 0:
            raise ConstructionError(f"edge table: nonpositive length for ({u}, {v})")
        worst = max(worst, abs(norm(config[u] - config[v]) - target))
    return worst


def _sigma_z(p: np.ndarray) -> np.ndarray:
    """Half-rotation about the z-axis."""
    return np.array([-p[0], -p[1], p[2]])


def _bricard1_config(
    a: float, params: DodecParams, xy: DerivedLengths, branch: int
) -> Configuration | None:
    """Symmetric octahedron candidate with |AA'| = 2a, or None if infeasible."""
    l1, l2, l3, l4, l5 = params.lengths
    L = l3 + l4
    bx = (l1 * l1 - l2 * l2) / (4.0 * a)
    r2 = l2 * l2 - (bx - a) ** 2
    if r2 <= 0.0:
        return None
    r = math.sqrt(r2)
    A = np.array([a, 0.0, 0.0])
    B = np.array([bx, r * math.cos(params.base_shape), r * math.sin(params.base_shape)])
    try:
        sols = trilaterate(A, _sigma_z(A), B, l5, L, xy.y)
    except GeometryError:
        return None
    if len(sols) <= branch:
        return None
    C = sols[branch]
    return {"A": A, "B": B, "A'": _sigma_z(A), "B'": _sigma_z(B), "C": C, "C'": _sigma_z(C)}


def build_bricard1(params: DodecParams, tol: Tolerance = DEFAULT_TOL) -> tuple[TriMesh, Configuration]:
    """Rotationally symmetric flexible octahedron with the target edge table.

    The symmetry line is placed on the z-axis, so A', B', C' are the images
    of A, B, C under (x, y, z) -> (-x, -y, z).  The diagonal half-length a is
    the unknown: the apex C is trilaterated from A, A', B and a is solved so
    that the remaining distance CB' comes out right.  Roots are scanned over
    both trilateration branches; the smallest-a valid root wins."""
    params = params.validated()
    xy = derive_xy(params)

    def gap(a: float, branch: int) -> float | None:
        cfg = _bricard1_config(a, params, xy, branch)
        if cfg is None:
            return None
        return float(norm(cfg["C"] - cfg["B'"]) - xy.x)

    a_hi = (params.l1 + params.l2) / 2.0  # diagonal AA' caps at l1+l2
    grid = np.linspace(1e-3 * a_hi, a_hi * (1 - 1e-9), 1200)
    roots: list[tuple[float, int]] = []
    for branch in (0, 1):
        prev: tuple[float, float] | None = None
        for a in grid:
            g = gap(a, branch)
            if g is not None and prev is not None and prev[1] * g < 0.0:
                roots.append(
                    (brentq(lambda t: gap(t, branch), prev[0], a, xtol=1e-15), branch)  # noqa: B023
                )
            prev = (a, g) if g is not None else None
    roots.sort()
    for a_root, branch in roots:
        cfg = _bricard1_config(a_root, params, xy, branch)
        if cfg is None:
            continue
        if norm(cfg["C"] - cfg["C'"]) < 1e-9 * a_hi:  # apex on the symmetry line
            continue
        mesh = TriMesh(tuple(cfg), OCTA_FACES)
        try:
            validate(mesh)
        except Exception:
            continue
        err = check_edge_table(mesh, cfg, octahedron_edge_table(params), tol)
        if err > tol.eps_len * mesh_scale(cfg) * 10:
            continue
        return mesh, cfg
    raise _stage("bricard1", "base shape infeasible: no consistent apex position")


def build_bricard2(
    kite: tuple[float, float],
    apex: tuple[float, float, float, float],
    base_shape: float = 0.9,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[TriMesh, Configuration]:
    """Plane-symmetric flexible octahedron (kite base).

    kite = (AB, A'B) with AB = AB' and A'B = A'B'; apex = (CA, CA', CB, CB')
    and the reflection in the base's symmetry plane (z = 0 here) swaps the
    apices C, C'.  The diagonal |AA'| is solved for consistency, mirroring
    the type I builder."""
    m1, m2 = kite
    nA, nA2, nB, nB2 = apex
    for v in (m1, m2, nA, nA2, nB, nB2):
        if not (math.isfinite(v) and v > 0):
            raise _stage("bricard2", f"lengths must be positive, got {v!r}")

    def config(d: float, branch: int) -> Configuration | None:
        bx = (m1 * m1 - m2 * m2 + d * d) / (2.0 * d)
        r2 = m1 * m1 - bx * bx
        if r2 <= 0.0:
            return None
        r = math.sqrt(r2)
        A = np.zeros(3)
        A2 = np.array([d, 0.0, 0.0])
        B = np.array([bx, r * math.cos(base_shape), r * math.sin(base_shape)])
        B2 = np.array([B[0], B[1], -B[2]])
        try:
            sols = trilaterate(A, A2, B, nA, nA2, nB)
        except GeometryError:
            return None
        if len(sols) <= branch:
            return None
        C = sols[branch]
        C2 = np.array([C[0], C[1], -C[2]])
        return {"A": A, "A'": A2, "B": B, "B'": B2, "C": C, "C'": C2}

    def gap(d: float, branch: int) -> float | None:
        cfg = config(d, branch)
        return None if cfg is None else float(norm(cfg["C"] - cfg["B'"]) - nB2)

    grid = np.linspace(1e-3, m1 + m2 - 1e-9, 1200)
    roots: list[tuple[float, int]] = []
    for branch in (0, 1):
        prev = None
        for d in grid:
            g = gap(d, branch)
            if g is not None and prev is not None and prev[1] * g < 0.0:
                roots.append(
                    (brentq(lambda t: gap(t, branch), prev[0], d, xtol=1e-15), branch)  # noqa: B023
                )
            prev = (d, g) if g is not None else None
    roots.sort()
    for d_root, branch in roots:
        cfg = config(d_root, branch)
        if cfg is None or abs(cfg["B"][2]) < 1e-9 * d_root or abs(cfg["C"][2]) < 1e-9 * d_root:
            continue
        mesh = TriMesh(tuple(cfg), OCTA_FACES)
        try:
            validate(mesh)
        except Exception:
            continue
        return mesh, cfg
    raise _stage("bricard2", "base shape infeasible: no consistent apex position")


def locate_D(
    mesh: TriMesh, config: Configuration, params: DodecParams, tol: Tolerance = DEFAULT_TOL
) -> tuple[TriMesh, Configuration]:
    """Insert D on edge AC' at parameter l3/(l3+l4) and verify its distances.

    DB = A'B and DB' = A'B' must then hold; they are what makes the quad
    B D B' A' plane-symmetric, and they follow from the x, y formulas."""
    l1, l2, l3, l4, _ = params.lengths
    if l3 <= 0 or l4 <= 0:
        raise _stage("locate_D", "l3 and l4 must be positive (D strictly inside AC')")
    m2, c2, label = split_edge(mesh, config, "A", "C'", l3 / (l3 + l4), label="D")
    scale = mesh_scale(c2)
    err_b = abs(norm(c2[label] - c2["B"]) - l1)
    err_b2 = abs(norm(c2[label] - c2["B'"]) - l2)
    if max(err_b, err_b2) > 1e3 * tol.eps_len * scale:
        raise _stage(
            "locate_D",
            f"construction inconsistent: |DB| off by {err_b:.3g}, |DB'| off by {err_b2:.3g}",
        )
    return m2, c2


def cut_reflect_to_decahedron(
    mesh: TriMesh, config: Configuration, tol: Tolerance = DEFAULT_TOL
) -> tuple[TriMesh, Configuration]:
    """Cut along the plane-symmetric quad B D B' A' and reflect the C' cap.

    The reflection fixes B, B' and swaps D with A'; C' lands on a new
    position labeled C''.  The result is a ten-faced bipyramid over the
    pentagon A C A' C'' D with apices B and B'."""
    deca, cfg = cut_and_reflect(mesh, config, SurfaceQuad(("B", "D", "B'", "A'")), tol=tol)
    info = validate(deca)
    if (info["vertices"], info["edges"], info["faces"]) != (7, 15, 10):
        raise _stage("cut_reflect", f"unexpected mesh counts {info}")
    return deca, cfg


def select_tent_face(mesh: TriMesh, config: Configuration, tol: Tolerance = DEFAULT_TOL) -> Face:
    """The face shared by every self-intersecting pair, i.e. the tent base."""
    report = self_intersections(mesh, config, tol)
    if len(report) == 0:
        raise _stage("select_tent_face", "mesh does not self-intersect; nothing to fix")
    common = report.common_faces()
    if len(common) != 1:
        raise _stage(
            "select_tent_face",
            f"single tent insufficient: {len(common)} faces common to all "
            f"{len(report)} intersecting pairs",
        )
    return mesh.faces[next(iter(common))]


def erect_tent(
    mesh: TriMesh,
    config: Configuration,
    face: Face,
    h1: float,
    h2: float,
    h3: float,
    assign: dict[str, float] | None = None,
    apex_label: str = "T",
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[TriMesh, Configuration]:
    """Replace `face` by a three-faced tent with apex at the given distances.

    By default h1 and h2 go to the endpoints of the face's longest edge
    (label order breaks the tie), h3 to the remaining vertex; pass `assign`
    to override.  Of the two trilateration solutions the one on the outward
    side of the face is preferred, but if it self-intersects the inner one
    is tried before giving up."""
    if face not in mesh.faces:
        raise _stage("erect_tent", f"face {face} is not in the mesh")
    if assign is None:
        sides = [(face[0], face[1]), (face[1], face[2]), (face[2], face[0])]
        longest = max(sides, key=lambda s: norm(config[s[0]] - config[s[1]]))
        e1, e2 = sorted(longest)
        third = next(w for w in face if w not in longest)
        assign = {e1: h1, e2: h2, third: h3}
    if set(assign) != set(face):
        raise _stage("erect_tent", "assign must map exactly the face's vertices")
    a, b, c = (config[v] for v in face)
    try:
        sols = trilaterate(a, b, c, *(assign[v] for v in face), tol=tol)
    except GeometryError as exc:
        raise _stage("erect_tent", f"infeasible tent distances: {exc}") from exc
    if not sols:
        raise _stage("erect_tent", "infeasible tent distances: no apex position")
    if len(sols) == 1:
        raise _stage("erect_tent", "degenerate tent: apex lies in the face plane")
    while apex_label in mesh.vertices:
        apex_label += "'"
    kept = [f for f in mesh.faces if f != face]
    tent = [(face[0], face[1], apex_label), (face[1], face[2], apex_label), (face[2], face[0], apex_label)]
    new_mesh = TriMesh(tuple(list(mesh.vertices) + [apex_label]), tuple(kept + tent))
    validate(new_mesh)
    # outward first: positive volume against the face's own orientation
    order = sorted(range(len(sols)), key=lambda k: -signed_volume_tetra(a, b, c, sols[k]))
    for k in order:
        new_cfg = dict(config)
        new_cfg[apex_label] = sols[k]
        if len(self_intersections(new_mesh, new_cfg, tol)) == 0:
            return new_mesh, new_cfg
    raise _stage("erect_tent", "both tent apex placements leave self-intersections")


@dataclass
class DodecBuild:
    """Everything the dodecahedron pipeline produced along the way."""

    params: DodecParams
    xy: DerivedLengths
    octahedron: tuple[TriMesh, Configuration]
    decahedron: tuple[TriMesh, Configuration]
    decahedron_trajectory: FlexTrajectory = field(repr=False)
    reference: Configuration = field(repr=False)
    tent_face: Face
    mesh: TriMesh
    config: Configuration = field(repr=False)
    tent_volume: float

    @property
    def range_edge(self) -> tuple[str, str]:
        """Hinge used for range-of-motion reports: the tent base's long edge.

        The dihedral there measures how far the tent rocks against the body,
        which is the visually obvious motion of the physical model; the
        default driving edge BA' is stiffened by the tent and barely moves."""
        sides = [
            (self.tent_face[0], self.tent_face[1]),
            (self.tent_face[1], self.tent_face[2]),
            (self.tent_face[2], self.tent_face[0]),
        ]
        cfg = self.reference
        u, v = max(sides, key=lambda s: norm(cfg[s[0]] - cfg[s[1]]))
        return (u, v)


def _reference_run(
    deca: TriMesh, cfg: Configuration, tol: Tolerance
) -> tuple[Configuration, Face, FlexTrajectory]:
    """March the decahedron flex and pick the middle of the longest stretch
    of samples whose intersection report has a single common face."""
    scale = mesh_scale(cfg)
    traj = continue_flex(
        deca,
        cfg,
        tol=tol,
        adapt=False,
        initial_step=0.06 * scale,
        max_steps=600,
        check_intersections=False,
    )
    runs: list[tuple[int, list[int]]] = []
    cur: tuple[int, list[int]] | None = None
    for i, smp in enumerate(traj.samples):
        rep = self_intersections(deca, smp.config, tol)
        common = rep.common_faces() if len(rep) else set()
        key = next(iter(common)) if len(common) == 1 else None
        if key is None:
            cur = None
            continue
        if cur is not None and cur[0] == key:
            cur[1].append(i)
        else:
            cur = (key, [i])
            runs.append(cur)
    if not runs:
        raise _stage("reference", "no configuration with a single common intersecting face")
    face_idx, idxs = max(runs, key=lambda r: len(r[1]))
    ref = traj.samples[idxs[len(idxs) // 2]]
    return ref.config, deca.faces[face_idx], traj


def build_dodecahedron_detail(params: DodecParams, tol: Tolerance = DEFAULT_TOL) -> DodecBuild:
    params = params.validated()
    xy = derive_xy(params)
    octa, ocfg = build_bricard1(params, tol)
    m_d, c_d = locate_D(octa, ocfg, params, tol)
    deca, dcfg = cut_reflect_to_decahedron(m_d, c_d, tol)
    err = check_edge_table(deca, dcfg, decahedron_edge_table(params), tol)
    scale = mesh_scale(dcfg)
    if err > 1e3 * tol.eps_len * scale:
        raise _stage("cut_reflect", f"decahedron edge table off by {err:.3g}")
    ref_cfg, tent_face, dtraj = _reference_run(deca, dcfg, tol)
    dode, dode_cfg = erect_tent(
        deca, ref_cfg, tent_face, params.h1, params.h2, params.h3, tol=tol
    )
    info = validate(dode)
    if (info["vertices"], info["edges"], info["faces"]) != (8, 18, 12):
        raise _stage("erect_tent", f"unexpected dodecahedron counts {info}")
    apex = next(v for v in dode.vertices if v not in deca.vertices)
    tent_vol = signed_volume_tetra(*(ref_cfg[v] for v in tent_face), dode_cfg[apex])
    return DodecBuild(
        params=params,
        xy=xy,
        octahedron=(octa, ocfg),
        decahedron=(deca, dcfg),
        decahedron_trajectory=dtraj,
        reference=ref_cfg,
        tent_face=tent_face,
        mesh=dode,
        config=dode_cfg,
        tent_volume=tent_vol,
    )


def build_dodecahedron(params: DodecParams, tol: Tolerance = DEFAULT_TOL) -> tuple[TriMesh, Configuration]:
    """Embedded flexible dodecahedron on eight vertices (see module doc)."""
    build = build_dodecahedron_detail(params, tol)
    return build.mesh, build.config


# ---------------------------------------------------------------------------
# Cut-and-twist variant: the 7-vertex flexible pentagonal bipyramid


@dataclass(frozen=True)
class Min8Params:
    """Seed coordinates for the cut-and-twist bipyramid.

    The base quad p1 pT p3 pB is rotationally symmetric about the z-axis
    (p3, pB are the half-rotation images of p1, pT), apices p2 and p0 are
    likewise swapped.  cy is forced by the requirement that p5 on the ray
    p1 -> p0 beyond p0 keeps pT and pB equidistant from p1 and p5."""

    u: float = 2.0
    tx: float = 1.0
    ty: float = 1.7
    tz: float = 1.5
    cx: float = -1.5
    cz: float = 1.4

    @property
    def cy(self) -> float:
        if self.ty == 0:
            raise ConstructionError("min8: ty must be nonzero")
        return -self.tx * (self.cx + self.u) / self.ty


MIN8_EXT_FACES: tuple[Face, ...] = (
    ("pT", "p1", "p2"),
    ("p3", "pT", "p2"),
    ("pB", "p3", "p2"),
    ("p1", "pB", "p2"),
    ("p1", "pT", "p5"),
    ("pB", "p1", "p5"),
    ("p5", "pT", "p0"),
    ("pT", "p3", "p0"),
    ("p3", "pB", "p0"),
    ("pB", "p5", "p0"),
)


def build_min8_twist(
    params: Min8Params = Min8Params(), tol: Tolerance = DEFAULT_TOL
) -> tuple[TriMesh, Configuration]:
    """Flexible pentagonal bipyramid on 7 vertices via cut-and-twist.

    Start from a type I octahedron on base p1 pT p3 pB with apices p0, p2,
    place p5 on the extension of p1 p0 beyond p0 with p5 pT = p1 pT and
    p5 pB = p1 pB (this needs p0 p1 perpendicular to pT pB, which fixes cy),
    extend the two faces at edge p1 p0 into the coplanar triangles reaching
    p5, then cut and twist along the rotationally symmetric quad
    p5 pT p3 pB.  The old apex p0 is renamed p4; the equator of the result
    is the pentagon p1 p2 p3 p4 p5."""
    p1 = np.array([params.u, 0.0, 0.0])
    pT = np.array([params.tx, params.ty, params.tz])
    p2 = np.array([params.cx, params.cy, params.cz])
    p3, pB, p0 = _sigma_z(p1), _sigma_z(pT), _sigma_z(p2)
    d01 = p0 - p1
    nn = float(d01 @ d01)
    if nn < 1e-18:
        raise _stage("min8", "degenerate seed: apices coincide with base corner")
    s = 2.0 * float(d01 @ (pT - p1)) / nn
    if s <= 1.0 + 1e-9:
        raise _stage(
            "min8",
            f"no extension point: p5 parameter {s:.4f} must exceed 1 "
            "(p0 must lie strictly between p1 and p5)",
        )
    p5 = p1 + s * d01
    cfg: Configuration = {"p1": p1, "pT": pT, "p3": p3, "pB": pB, "p0": p0, "p2": p2, "p5": p5}
    ext = TriMesh(tuple(cfg), MIN8_EXT_FACES)
    validate(ext)
    scale = mesh_scale(cfg)
    assert abs(norm(p5 - pT) - norm(p1 - pT)) < 1e-9 * scale
    assert abs(norm(p5 - pB) - norm(p1 - pB)) < 1e-9 * scale
    try:
        bip, bcfg = cut_and_twist(
            ext, cfg, SurfaceQuad(("p5", "pT", "p3", "pB")), rename={"p0": "p4"}, tol=tol
        )
    except Exception as exc:
        raise _stage("min8", f"cut and twist failed: {exc}") from exc
    info = validate(bip)
    degs = sorted(bip.vertex_degree(v) for v in bip.vertices)
    if info["vertices"] != 7 or degs != [4, 4, 4, 4, 4, 5, 5]:
        raise _stage("min8", f"result is not a pentagonal bipyramid: V={info['vertices']}, degrees {degs}")
    return bip, bcfg

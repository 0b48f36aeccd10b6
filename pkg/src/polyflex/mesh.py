"""Closed oriented triangle meshes and cut/glue surgery.

A TriMesh is purely combinatorial: labeled vertices plus oriented triangular
faces.  Vertex positions live in a separate Configuration (label -> point)
so one mesh can be posed many ways while it flexes.

The surgery operations cut a mesh along a symmetric spatial quadrilateral
and reattach one side after a half-rotation (twist) or a mirror reflection,
which preserves all edge lengths and hence the flexibility of the linkage.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    GeometryError,
    Isometry3,
    Tolerance,
    norm,
    pairwise_scale,
)
from .intersect import tri_tri_intersection
from .quadsym import symmetry_line, symmetry_plane
from .geometry import half_rotation, reflect_in_plane

__all__ = [
    "MeshError",
    "TriMesh",
    "Configuration",
    "PointOnEdge",
    "SurfaceQuad",
    "Cap",
    "IntersectionReport",
    "validate",
    "signed_volume",
    "dihedral",
    "fold_sign",
    "triangle_quality",
    "min_triangle_quality",
    "self_intersections",
    "split_edge",
    "cut_along_quad",
    "glue",
    "cut_and_twist",
    "cut_and_reflect",
    "mesh_scale",
]

Configuration = dict[str, np.ndarray]
Face = tuple[str, str, str]


class MeshError(ValueError):
    """Invalid mesh combinatorics or an impossible surgery."""


def _norm_edge(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class TriMesh:
    vertices: tuple[str, ...]
    faces: tuple[Face, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "faces", tuple(tuple(f) for f in self.faces))

    @cached_property
    def edges(self) -> tuple[tuple[str, str], ...]:
        seen = {}
        for f in self.faces:
            for i in range(3):
                seen.setdefault(_norm_edge(f[i], f[(i + 1) % 3]), None)
        return tuple(sorted(seen))

    @cached_property
    def directed_edge_face(self) -> dict[tuple[str, str], int]:
        """Face index owning each directed edge (unique in a valid mesh)."""
        out: dict[tuple[str, str], int] = {}
        for k, f in enumerate(self.faces):
            for i in range(3):
                key = (f[i], f[(i + 1) % 3])
                if key in out:
                    raise MeshError(f"directed edge {key} used twice")
                out[key] = k
        return out

    def edge_faces(self, u: str, v: str) -> tuple[int, int]:
        """Indices (face containing u->v, face containing v->u)."""
        de = self.directed_edge_face
        if (u, v) not in de or (v, u) not in de:
            raise MeshError(f"edge ({u}, {v}) is not an interior mesh edge")
        return de[(u, v)], de[(v, u)]

    def vertex_degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)

    def has_edge(self, u: str, v: str) -> bool:
        return _norm_edge(u, v) in set(self.edges)


def validate(mesh: TriMesh) -> dict:
    """Check that mesh is a closed, consistently oriented sphere triangulation.

    Raises MeshError on the first violation; returns a summary dict with
    vertex/edge/face counts otherwise.
    """
    if len(mesh.vertices) != len(set(mesh.vertices)):
        raise MeshError("duplicate vertex labels")
    if len(mesh.vertices) < 4:
        raise MeshError("a closed triangulation needs at least 4 vertices")
    vset = set(mesh.vertices)
    for f in mesh.faces:
        if len(f) != 3 or len(set(f)) != 3:
            raise MeshError(f"face {f} is not a triangle on 3 distinct vertices")
        for v in f:
            if v not in vset:
                raise MeshError(f"face {f} references unknown vertex {v!r}")

    de = mesh.directed_edge_face  # raises on doubled directed edges
    for (u, v) in de:
        if (v, u) not in de:
            raise MeshError(f"edge ({u}, {v}) lacks an oppositely oriented partner")

    used = {v for f in mesh.faces for v in f}
    if used != vset:
        raise MeshError(f"isolated vertices: {sorted(vset - used)}")

    # Face connectivity via shared edges.
    adj: dict[int, list[int]] = {i: [] for i in range(len(mesh.faces))}
    for (u, v), i in de.items():
        adj[i].append(de[(v, u)])
    seen = {0}
    stack = [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(mesh.faces):
        raise MeshError("mesh is not connected")

    nv, ne, nf = len(mesh.vertices), len(mesh.edges), len(mesh.faces)
    if nv - ne + nf != 2:
        raise MeshError(f"Euler characteristic {nv - ne + nf} != 2; not a sphere")
    return {"vertices": nv, "edges": ne, "faces": nf, "euler": 2}


def mesh_scale(config: Configuration) -> float:
    return pairwise_scale(np.array(list(config.values())))


def _face_points(config: Configuration, face: Face) -> np.ndarray:
    return np.array([config[v] for v in face], dtype=float)


def signed_volume(mesh: TriMesh, config: Configuration) -> float:
    """Volume enclosed by the oriented surface (divergence theorem)."""
    total = 0.0
    for f in mesh.faces:
        a, b, c = (config[v] for v in f)
        total += float(a @ np.cross(b, c))
    return total / 6.0


def dihedral(mesh: TriMesh, config: Configuration, u: str, v: str) -> float:
    """Interior dihedral angle across edge (u, v), in (0, 2*pi).

    Angles below pi fold like a convex (mountain) edge when seen from
    outside; above pi the edge is reflex (valley).
    """
    i1, i2 = mesh.edge_faces(u, v)
    f1, f2 = mesh.faces[i1], mesh.faces[i2]
    p_u, p_v = config[u], config[v]
    e = p_v - p_u
    le = norm(e)
    if le < 1e-300:
        raise MeshError(f"edge ({u}, {v}) has zero length")
    e = e / le

    def unit_normal(f: Face) -> np.ndarray:
        a, b, c = (config[w] for w in f)
        n = np.cross(b - a, c - a)
        ln = norm(n)
        if ln < 1e-300:
            raise MeshError(f"face {f} is degenerate")
        return n / ln

    n1 = unit_normal(f1)
    n2 = unit_normal(f2)
    beta = float(np.arctan2(np.cross(n1, n2) @ e, n1 @ n2))
    angle = np.pi - beta
    return float(angle)


def fold_sign(angle: float, eps: float = 1e-12) -> str:
    if angle < np.pi - eps:
        return "mountain"
    if angle > np.pi + eps:
        return "valley"
    return "flat"


def triangle_quality(pts: np.ndarray) -> float:
    """Shortest altitude over longest edge; 0 for degenerate triangles."""
    a, b, c = np.asarray(pts, dtype=float)
    lengths = [norm(b - a), norm(c - b), norm(a - c)]
    lmax = max(lengths)
    if lmax < 1e-300:
        return 0.0
    area = 0.5 * norm(np.cross(b - a, c - a))
    return 2.0 * area / (lmax * lmax)


def min_triangle_quality(mesh: TriMesh, config: Configuration) -> float:
    return min(triangle_quality(_face_points(config, f)) for f in mesh.faces)


@dataclass(frozen=True)
class IntersectionReport:
    """Face-index pairs that genuinely interpenetrate, with witness segments."""

    pairs: tuple[tuple[int, int], ...]
    witnesses: tuple[tuple[np.ndarray, np.ndarray], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def common_faces(self) -> set[int]:
        """Faces appearing in every reported pair (empty for empty reports)."""
        if not self.pairs:
            return set()
        common = set(self.pairs[0])
        for p in self.pairs[1:]:
            common &= set(p)
        return common


def self_intersections(
    mesh: TriMesh, config: Configuration, tol: Tolerance = DEFAULT_TOL
) -> IntersectionReport:
    """All interpenetrating face pairs.

    Pairs sharing an edge are skipped; pairs sharing one vertex count only
    if the contact extends beyond an eps_geom ball around the shared vertex.
    """
    faces = mesh.faces
    pts = [_face_points(config, f) for f in faces]
    lo = np.array([p.min(axis=0) for p in pts])
    hi = np.array([p.max(axis=0) for p in pts])
    eps = tol.eps_geom

    pairs: list[tuple[int, int]] = []
    wits: list[tuple[np.ndarray, np.ndarray]] = []
    n = len(faces)
    for i in range(n):
        for j in range(i + 1, n):
            if np.any(lo[i] > hi[j] + eps) or np.any(lo[j] > hi[i] + eps):
                continue
            shared = set(faces[i]) & set(faces[j])
            if len(shared) >= 2:
                continue
            seg = tri_tri_intersection(pts[i], pts[j], eps=eps)
            if seg is None:
                continue
            if len(shared) == 1:
                pv = config[next(iter(shared))]
                if max(norm(seg[0] - pv), norm(seg[1] - pv)) <= eps:
                    continue
            pairs.append((i, j))
            wits.append(seg)
    return IntersectionReport(tuple(pairs), tuple(wits))


def split_edge(
    mesh: TriMesh,
    config: Configuration,
    u: str,
    v: str,
    t: float,
    label: str | None = None,
) -> tuple[TriMesh, Configuration, str]:
    """Insert a vertex on edge (u, v) at parameter t measured from u.

    Both incident faces are split in two; all other faces are untouched."""
    if not 0.0 < t < 1.0:
        raise MeshError(f"split parameter must lie strictly inside (0,1), got {t}")
    i1, i2 = mesh.edge_faces(u, v)
    if label is None:
        label = f"{u}|{v}"
        while label in mesh.vertices:
            label += "'"
    elif label in mesh.vertices:
        raise MeshError(f"label {label!r} already in use")

    new_faces: list[Face] = []
    for k, f in enumerate(mesh.faces):
        if k not in (i1, i2):
            new_faces.append(f)
            continue
        # Rotate so the split edge comes first, preserving orientation.
        if (f[0], f[1]) in ((u, v), (v, u)):
            a, b, w = f
        elif (f[1], f[2]) in ((u, v), (v, u)):
            a, b, w = f[1], f[2], f[0]
        else:
            a, b, w = f[2], f[0], f[1]
        new_faces.append((a, label, w))
        new_faces.append((label, b, w))

    verts = mesh.vertices + (label,)
    cfg = dict(config)
    cfg[label] = (1.0 - t) * np.asarray(config[u], float) + t * np.asarray(config[v], float)
    out = TriMesh(verts, tuple(new_faces))
    validate(out)
    return out, cfg, label


@dataclass(frozen=True)
class PointOnEdge:
    """Anchor for a surgery quad corner sitting on a mesh edge."""

    u: str
    v: str
    t: float
    label: str | None = None


@dataclass(frozen=True)
class SurfaceQuad:
    """Four corners of a cutting quadrilateral, in cyclic order.

    Corners are vertex labels or PointOnEdge anchors.  After anchors are
    materialized, every side of the quad must be an edge of the mesh."""

    corners: tuple[str | PointOnEdge, str | PointOnEdge, str | PointOnEdge, str | PointOnEdge]

    def materialize(
        self, mesh: TriMesh, config: Configuration
    ) -> tuple[TriMesh, Configuration, tuple[str, str, str, str]]:
        labels: list[str] = []
        for c in self.corners:
            if isinstance(c, PointOnEdge):
                mesh, config, lab = split_edge(mesh, config, c.u, c.v, c.t, c.label)
                labels.append(lab)
            else:
                if c not in mesh.vertices:
                    raise MeshError(f"quad corner {c!r} is not a mesh vertex")
                labels.append(c)
        if len(set(labels)) != 4:
            raise MeshError("quad corners must be four distinct vertices")
        for i in range(4):
            a, b = labels[i], labels[(i + 1) % 4]
            if not mesh.has_edge(a, b):
                raise MeshError(
                    f"quad side ({a}, {b}) is not a mesh edge; corners are not co-facial"
                )
        return mesh, config, tuple(labels)


@dataclass(frozen=True)
class Cap:
    """One side of a cut mesh: an oriented disk of faces with a quad boundary.

    `boundary` is the directed 4-cycle as traversed by this cap's own face
    orientations, starting at the first quad corner."""

    faces: tuple[Face, ...]
    boundary: tuple[str, str, str, str]
    config: Configuration = field(repr=False)

    @property
    def interior(self) -> tuple[str, ...]:
        b = set(self.boundary)
        seen: list[str] = []
        for f in self.faces:
            for v in f:
                if v not in b and v not in seen:
                    seen.append(v)
        return tuple(seen)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.boundary) + self.interior


def cut_along_quad(
    mesh: TriMesh, config: Configuration, quad: tuple[str, str, str, str]
) -> tuple[Cap, Cap]:
    """Split a validated mesh into the two disks bounded by a 4-edge cycle.

    The first cap is the one whose faces traverse the quad in the given
    order (q0 -> q1 -> ...); the second traverses it reversed."""
    validate(mesh)
    q = tuple(quad)
    sides = {_norm_edge(q[i], q[(i + 1) % 4]) for i in range(4)}
    if len(sides) != 4:
        raise MeshError("quad sides must be four distinct edges")
    for a, b in sides:
        if not mesh.has_edge(a, b):
            raise MeshError(f"quad side ({a}, {b}) is not a mesh edge")

    de = mesh.directed_edge_face
    comp = [-1] * len(mesh.faces)
    for start in range(len(mesh.faces)):
        if comp[start] != -1:
            continue
        cid = max(comp) + 1
        stack = [start]
        comp[start] = cid
        while stack:
            k = stack.pop()
            f = mesh.faces[k]
            for i in range(3):
                a, b = f[i], f[(i + 1) % 3]
                if _norm_edge(a, b) in sides:
                    continue
                nk = de[(b, a)]
                if comp[nk] == -1:
                    comp[nk] = cid
                    stack.append(nk)
    ncomp = max(comp) + 1
    if ncomp != 2:
        raise MeshError(f"quad cycle splits the surface into {ncomp} parts, expected 2")

    fwd_comp = comp[de[(q[0], q[1])]]

    def build(cid: int) -> Cap:
        faces = tuple(f for k, f in enumerate(mesh.faces) if comp[k] == cid)
        labels = {v for f in faces for v in f}
        forward = cid == fwd_comp
        boundary = q if forward else (q[0], q[3], q[2], q[1])
        # Each cap must own each side in exactly the direction of `boundary`.
        for i in range(4):
            a, b = boundary[i], boundary[(i + 1) % 4]
            if comp[de[(a, b)]] != cid:
                raise MeshError("quad cycle is not coherently oriented around a cap")
        cfg = {v: np.asarray(config[v], float).copy() for v in mesh.vertices if v in labels}
        return Cap(faces, boundary, cfg)

    return build(fwd_comp), build(1 - fwd_comp)


def glue(
    cap_a: Cap,
    cap_b: Cap,
    correspondence: dict[str, str] | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[TriMesh, Configuration]:
    """Reassemble two caps into a closed mesh.

    `correspondence` maps cap_b boundary labels onto cap_a boundary labels
    (identity when omitted).  Corresponding boundary edges must have equal
    lengths; interior labels of cap_b are freshened on collision."""
    if correspondence is None:
        correspondence = {v: v for v in cap_b.boundary}
    if set(correspondence) != set(cap_b.boundary) or set(correspondence.values()) != set(
        cap_a.boundary
    ):
        raise MeshError("correspondence must biject the two cap boundaries")

    scale = max(
        pairwise_scale(np.array(list(cap_a.config.values()))),
        pairwise_scale(np.array(list(cap_b.config.values()))),
    )
    for i in range(4):
        u, v = cap_b.boundary[i], cap_b.boundary[(i + 1) % 4]
        lb = norm(cap_b.config[u] - cap_b.config[v])
        la = norm(cap_a.config[correspondence[u]] - cap_a.config[correspondence[v]])
        if abs(la - lb) > max(tol.eps_len * scale, 1e-12):
            raise MeshError(
                f"boundary edge ({u}, {v}) length {lb:.12g} does not match its image {la:.12g}"
            )

    taken = set(cap_a.labels)
    rename = dict(correspondence)
    for v in cap_b.interior:
        name = v
        while name in taken:
            name += "'"
        rename[v] = name
        taken.add(name)

    faces = cap_a.faces + tuple(
        (rename[a], rename[b], rename[c]) for (a, b, c) in cap_b.faces
    )
    vertices = tuple(cap_a.labels) + tuple(rename[v] for v in cap_b.interior)
    cfg: Configuration = {v: cap_a.config[v].copy() for v in cap_a.labels}
    for v in cap_b.interior:
        cfg[rename[v]] = cap_b.config[v].copy()
    out = TriMesh(vertices, faces)
    validate(out)
    return out, cfg


def _transform_cap(cap: Cap, iso: Isometry3) -> Cap:
    cfg = {v: iso.apply(p) for v, p in cap.config.items()}
    return Cap(cap.faces, cap.boundary, cfg)


def _pick_moving(cap_a: Cap, cap_b: Cap, move: str) -> tuple[Cap, Cap]:
    """Return (kept, moving)."""
    if move == "a":
        return cap_b, cap_a
    if move == "b":
        return cap_a, cap_b
    if move == "auto":
        if len(cap_a.faces) < len(cap_b.faces):
            return cap_b, cap_a
        return cap_a, cap_b
    in_a = move in cap_a.interior
    in_b = move in cap_b.interior
    if in_a == in_b:
        raise MeshError(f"move selector {move!r} is not interior to exactly one cap")
    return (cap_b, cap_a) if in_a else (cap_a, cap_b)


def _boundary_match(
    kept: Cap, moved: Cap, tol: Tolerance
) -> dict[str, str]:
    scale = pairwise_scale(np.array(list(kept.config.values())))
    corr: dict[str, str] = {}
    for v in moved.boundary:
        p = moved.config[v]
        best, best_d = None, np.inf
        for w in kept.boundary:
            d = norm(p - kept.config[w])
            if d < best_d:
                best, best_d = w, d
        if best_d > 1e-6 * scale:
            raise MeshError(
                f"moved boundary vertex {v!r} lands {best_d:.3g} away from any partner"
            )
        corr[v] = best
    if len(set(corr.values())) != 4:
        raise MeshError("moved boundary does not map bijectively onto the kept boundary")
    return corr


def _apply_rename(cap: Cap, rename: dict[str, str]) -> Cap:
    if not rename:
        return cap
    for old in rename:
        if old not in cap.interior:
            raise MeshError(f"rename source {old!r} is not interior to the moving cap")
    table = {v: rename.get(v, v) for v in cap.labels}
    faces = tuple((table[a], table[b], table[c]) for (a, b, c) in cap.faces)
    cfg = {table[v]: p for v, p in cap.config.items()}
    return Cap(faces, tuple(table[v] for v in cap.boundary), cfg)


def cut_and_twist(
    mesh: TriMesh,
    config: Configuration,
    quad: SurfaceQuad,
    move: str = "auto",
    rename: dict[str, str] | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[TriMesh, Configuration]:
    """Cut along a rotationally symmetric quad and re-glue one cap after the
    half-rotation about the quad's symmetry axis.

    The quad must satisfy |q0 q1| = |q2 q3| and |q1 q2| = |q3 q0|.  Moved
    vertices keep their labels unless `rename` says otherwise.  Twisting
    twice along the same quad restores the original configuration."""
    mesh, config, q = quad.materialize(mesh, config)
    axis = symmetry_line(config[q[0]], config[q[1]], config[q[2]], config[q[3]], tol)
    iso = half_rotation(axis)
    cap_a, cap_b = cut_along_quad(mesh, config, q)
    kept, moving = _pick_moving(cap_a, cap_b, move)
    moved = _transform_cap(moving, iso)
    moved = _apply_rename(moved, rename or {})
    corr = _boundary_match(kept, moved, tol)
    return glue(kept, moved, corr, tol)


def cut_and_reflect(
    mesh: TriMesh,
    config: Configuration,
    quad: SurfaceQuad,
    move: str = "auto",
    rename: dict[str, str] | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[TriMesh, Configuration]:
    """Cut along a mirror-symmetric quad and re-glue one cap reflected.

    The quad must satisfy |q0 q1| = |q0 q3| and |q2 q1| = |q2 q3| so that a
    plane through q0 and q2 swaps q1 with q3.  Reflection reverses the cap's
    orientation, so its faces are re-wound before gluing.  Moved interior
    vertices get a prime appended to their label unless `rename` overrides
    that (the mirror image of a point is a genuinely new point)."""
    mesh, config, q = quad.materialize(mesh, config)
    plane = symmetry_plane(config[q[0]], config[q[1]], config[q[2]], config[q[3]], tol)
    iso = reflect_in_plane(plane)
    cap_a, cap_b = cut_along_quad(mesh, config, q)
    kept, moving = _pick_moving(cap_a, cap_b, move)
    moved = _transform_cap(moving, iso)
    # A mirrored disk must be re-wound to keep the glued surface oriented.
    moved = Cap(
        tuple((a, c, b) for (a, b, c) in moved.faces),
        tuple(reversed(moved.boundary)),
        moved.config,
    )
    if rename is None:
        rename = {v: v + "'" for v in moving.interior}
    moved = _apply_rename(moved, rename)
    corr = _boundary_match(kept, moved, tol)
    return glue(kept, moved, corr, tol)

"""Unfold a closed mesh into a planar net and draw it as SVG.

Faces are laid out along a breadth-first spanning tree of the dual graph;
tree edges become printed fold lines (solid for mountain, dashed for
valley, dotted where the fold sign changes during the flex, so the edge
must be scored on both sides), cut edges become boundary segments whose
color tells which pair gets glued together.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import DEFAULT_TOL, Tolerance, norm
from .io import edge_key
from .mesh import (
    Configuration,
    Face,
    MeshError,
    TriMesh,
    dihedral,
    fold_sign,
    mesh_scale,
    validate,
)

__all__ = ["NetLayout", "unfold", "export_svg"]


@dataclass
class NetLayout:
    mesh: TriMesh
    # per face index: vertex label -> 2D position (labels repeat across faces)
    placements: dict[int, dict[str, np.ndarray]] = field(repr=False)
    folds: dict[str, str]  # tree edges: mountain / valley / flat / score-both
    gluing: dict[str, int]  # cut edges: edge key -> gluing group id
    overlaps: list[tuple[int, int]]


def _face_edges(face: Face):
    yield face[0], face[1]
    yield face[1], face[2]
    yield face[2], face[0]


def _sample_folds(trajectory) -> list[dict]:
    """Per-sample fold dicts from a FlexTrajectory or a trajectory document."""
    if trajectory is None:
        return []
    if isinstance(trajectory, dict):
        return [s.get("folds", {}) for s in trajectory.get("samples", [])]
    return [s.folds for s in trajectory.samples]


def _third_point(u2: np.ndarray, v2: np.ndarray, du: float, dv: float, away_from: np.ndarray) -> np.ndarray:
    """2D point at distances du from u2 and dv from v2, on the side of the
    line u2 v2 opposite to away_from."""
    d = v2 - u2
    L = float(np.hypot(*d))
    if L < 1e-300:
        raise MeshError("layout edge collapsed")
    ex = d / L
    ey = np.array([-ex[1], ex[0]])
    x = (du * du - dv * dv + L * L) / (2 * L)
    h2 = du * du - x * x
    h = float(np.sqrt(max(h2, 0.0)))
    side = float((away_from - u2) @ ey)
    if side > 0:
        h = -h
    return u2 + x * ex + h * ey


def _tri_overlap_2d(t1: np.ndarray, t2: np.ndarray, eps: float) -> bool:
    """Separating-axis test; contacts within eps do not count."""
    for a, b in ((t1, t2), (t2, t1)):
        for k in range(3):
            p, q = a[k], a[(k + 1) % 3]
            n = np.array([q[1] - p[1], p[0] - q[0]])
            ln = float(np.hypot(*n))
            if ln < 1e-300:
                continue
            n = n / ln
            pa, pb = a @ n, b @ n
            if pa.max() <= pb.min() + eps or pb.max() <= pa.min() + eps:
                return False
    return True


def unfold(
    mesh: TriMesh,
    config: Configuration,
    root: Face | None = None,
    trajectory=None,
    tol: Tolerance = DEFAULT_TOL,
) -> NetLayout:
    """Lay the faces out in the plane along a dual spanning tree.

    The default root is the first face touching a degree-3 vertex (the tent
    apex, when there is one), which keeps the tent in the middle of the
    layout.  Overlapping faces are reported, not fatal: the net is still
    printable if the overlaps are acceptable to the user."""
    validate(mesh)
    scale = mesh_scale(config)
    if root is None:
        root = next(
            (f for f in mesh.faces if any(mesh.vertex_degree(v) == 3 for v in f)),
            mesh.faces[0],
        )
    if root not in mesh.faces:
        raise MeshError(f"root face {root} is not in the mesh")
    root_idx = mesh.faces.index(root)

    # dual adjacency: edge key -> the two face indices
    by_edge: dict[str, list[int]] = {}
    for i, f in enumerate(mesh.faces):
        for (u, v) in _face_edges(f):
            by_edge.setdefault(edge_key(u, v), []).append(i)

    placements: dict[int, dict[str, np.ndarray]] = {}
    a, b, c = root
    pa, pb, pc = (config[v] for v in root)
    u2 = np.zeros(2)
    v2 = np.array([norm(pb - pa), 0.0])
    w2 = _third_point(u2, v2, norm(pc - pa), norm(pc - pb), np.array([0.0, -1.0]))
    placements[root_idx] = {a: u2, b: v2, c: w2}

    tree_edges: list[str] = []
    queue = [root_idx]
    while queue:
        i = queue.pop(0)
        f = mesh.faces[i]
        for (u, v) in _face_edges(f):
            key = edge_key(u, v)
            js = [j for j in by_edge[key] if j != i]
            if len(js) != 1:
                raise MeshError(f"edge {key} does not separate two faces")
            j = js[0]
            if j in placements:
                continue
            g = mesh.faces[j]
            w = next(x for x in g if x != u and x != v)
            opp = next(x for x in f if x != u and x != v)
            pu, pv = placements[i][u], placements[i][v]
            w2 = _third_point(
                pu, pv, norm(config[w] - config[u]), norm(config[w] - config[v]),
                placements[i][opp],
            )
            placements[j] = {u: pu.copy(), v: pv.copy(), w: w2}
            tree_edges.append(key)
            queue.append(j)
    if len(placements) != len(mesh.faces):
        raise MeshError("dual graph disconnected; cannot unfold")

    # congruence guard: every placed face must match its 3D edge lengths
    for i, f in enumerate(mesh.faces):
        for (u, v) in _face_edges(f):
            got = norm(placements[i][u] - placements[i][v])
            want = norm(config[u] - config[v])
            if abs(got - want) > 1e3 * tol.eps_len * scale:
                raise MeshError(f"net face {f} not congruent at edge ({u}, {v})")

    sample_folds = _sample_folds(trajectory)
    folds: dict[str, str] = {}
    for key in tree_edges:
        u, v = key.split("|")
        tag = fold_sign(dihedral(mesh, config, u, v))
        seen = {sf[key] for sf in sample_folds if key in sf}
        if "mountain" in seen and "valley" in seen:
            tag = "score-both"
        folds[key] = tag

    gluing: dict[str, int] = {}
    for key in sorted(by_edge):
        if key not in folds:
            gluing[key] = len(gluing)

    eps = 1e-7 * scale
    overlaps = []
    order = list(range(len(mesh.faces)))
    tris = {i: np.array([placements[i][v] for v in mesh.faces[i]]) for i in order}
    for i in order:
        for j in order:
            if j <= i:
                continue
            if _tri_overlap_2d(tris[i], tris[j], eps):
                overlaps.append((i, j))
    return NetLayout(mesh, placements, folds, gluing, overlaps)


# color cycle for gluing instructions; neighbors in the cycle stay distinct
_GLUE_COLORS = (
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
    "#a65628", "#f781bf", "#17becf", "#666633", "#00a0a0",
)

_STYLE = """
  .face { fill: #f8f7f2; stroke: none; }
  .solid { stroke: #222; stroke-width: 0.035; fill: none; }
  .dashed { stroke: #222; stroke-width: 0.035; stroke-dasharray: 0.18 0.12; fill: none; }
  .dotted { stroke: #222; stroke-width: 0.05; stroke-dasharray: 0.05 0.12; fill: none; }
  .glue { stroke-width: 0.06; fill: none; }
  .label { font-size: 0.3px; font-family: sans-serif; fill: #555; }
"""

_FOLD_CLASS = {"mountain": "solid", "flat": "solid", "valley": "dashed", "score-both": "dotted"}


def export_svg(net: NetLayout, labels: bool = True) -> str:
    """Draw the net: faces, fold lines by class, colored gluing boundary."""
    pts = np.array([p for pl in net.placements.values() for p in pl.values()])
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = float(max(hi - lo))
    m = 0.06 * span
    # flip y so the layout reads the same way as the 3D scene's xy plane
    def pt(p: np.ndarray) -> str:
        return f"{p[0]:.5f},{-p[1]:.5f}"

    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{lo[0] - m:.5f} {-hi[1] - m:.5f} {(hi - lo)[0] + 2 * m:.5f} {(hi - lo)[1] + 2 * m:.5f}">',
        f"<style>{_STYLE}</style>",
    ]
    for i, f in enumerate(net.mesh.faces):
        poly = " ".join(pt(net.placements[i][v]) for v in f)
        out.append(f'<polygon class="face" points="{poly}"/>')
    drawn: set[tuple[str, int]] = set()
    for i, f in enumerate(net.mesh.faces):
        for (u, v) in _face_edges(f):
            key = edge_key(u, v)
            p1, p2 = net.placements[i][u], net.placements[i][v]
            if key in net.folds:
                if (key, -1) in drawn:  # shared coordinates, draw once
                    continue
                drawn.add((key, -1))
                cls = _FOLD_CLASS[net.folds[key]]
                out.append(
                    f'<line class="{cls}" x1="{p1[0]:.5f}" y1="{-p1[1]:.5f}" '
                    f'x2="{p2[0]:.5f}" y2="{-p2[1]:.5f}"/>'
                )
            else:
                color = _GLUE_COLORS[net.gluing[key] % len(_GLUE_COLORS)]
                out.append(
                    f'<line class="glue" stroke="{color}" x1="{p1[0]:.5f}" y1="{-p1[1]:.5f}" '
                    f'x2="{p2[0]:.5f}" y2="{-p2[1]:.5f}"/>'
                )
    if labels:
        for i, f in enumerate(net.mesh.faces):
            centroid = sum(net.placements[i][v] for v in f) / 3.0
            for v in f:
                q = net.placements[i][v] * 0.82 + centroid * 0.18
                out.append(f'<text class="label" x="{q[0]:.5f}" y="{-q[1]:.5f}">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

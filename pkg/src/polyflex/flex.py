"""Edge-length linkages, rigidity analysis and flex continuation.

A mesh with prescribed edge lengths is a linkage; its configuration space
(modulo rigid motions) is explored by pseudo-arclength continuation.  The
driving coordinate reported along a trajectory is the dihedral angle at a
chosen edge, which stays meaningful even when no single coordinate is
monotone along the flex.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import DEFAULT_TOL, GeometryError, Tolerance, norm
from .mesh import (
    Configuration,
    TriMesh,
    dihedral,
    fold_sign,
    mesh_scale,
    min_triangle_quality,
    self_intersections,
    signed_volume,
)

__all__ = [
    "FlexError",
    "Linkage",
    "linkage_from_mesh",
    "residuals",
    "rigidity_matrix",
    "flex_dimension",
    "quad_dof_check",
    "FlexSample",
    "FlexTrajectory",
    "continue_flex",
    "range_of_motion",
]


class FlexError(RuntimeError):
    """Continuation or rigidity analysis cannot proceed."""


@dataclass(frozen=True)
class Linkage:
    """Vertices joined by fixed-length bars.

    `gauge` removes the six rigid-motion freedoms: gauge[0] is pinned at the
    origin, gauge[1] stays on the +x half-axis and gauge[2] in the xz-plane
    with nonnegative z."""

    labels: tuple[str, ...]
    edges: tuple[tuple[tuple[str, str], float], ...]
    gauge: tuple[str, str, str]

    @property
    def scale(self) -> float:
        return max(L for _, L in self.edges)


def _default_gauge(mesh: TriMesh) -> tuple[str, str, str]:
    if {"A", "A'", "B'"} <= set(mesh.vertices):
        return ("B'", "A'", "A")
    return min(tuple(sorted(f)) for f in mesh.faces)


def linkage_from_mesh(
    mesh: TriMesh,
    config: Configuration,
    lengths: dict[tuple[str, str], float] | None = None,
    gauge: tuple[str, str, str] | None = None,
) -> Linkage:
    """Linkage over the mesh edges; lengths default to the posed distances."""
    edges = []
    for (u, v) in mesh.edges:
        if lengths is not None:
            L = lengths.get((u, v), lengths.get((v, u)))
            if L is None:
                raise FlexError(f"no length prescribed for edge ({u}, {v})")
        else:
            L = norm(config[u] - config[v])
        edges.append(((u, v), float(L)))
    return Linkage(tuple(mesh.vertices), tuple(edges), gauge or _default_gauge(mesh))


def _positions(linkage: Linkage, config: Configuration) -> np.ndarray:
    try:
        return np.array([config[v] for v in linkage.labels], dtype=float)
    except KeyError as exc:
        raise FlexError(f"configuration lacks vertex {exc.args[0]!r}") from None


def residuals(linkage: Linkage, config: Configuration) -> np.ndarray:
    """Squared-length constraint violations |pu - pv|^2 - L^2, per edge."""
    pos = _positions(linkage, config)
    idx = {v: i for i, v in enumerate(linkage.labels)}
    out = np.empty(len(linkage.edges))
    for k, ((u, v), L) in enumerate(linkage.edges):
        d = pos[idx[u]] - pos[idx[v]]
        out[k] = d @ d - L * L
    return out


def length_residuals(linkage: Linkage, config: Configuration) -> np.ndarray:
    """Absolute length errors | |pu - pv| - L |, per edge."""
    pos = _positions(linkage, config)
    idx = {v: i for i, v in enumerate(linkage.labels)}
    out = np.empty(len(linkage.edges))
    for k, ((u, v), L) in enumerate(linkage.edges):
        out[k] = abs(norm(pos[idx[u]] - pos[idx[v]]) - L)
    return out


def rigidity_matrix(linkage: Linkage, config: Configuration) -> np.ndarray:
    """E x 3V matrix of edge-direction rows (half the residual Jacobian)."""
    pos = _positions(linkage, config)
    idx = {v: i for i, v in enumerate(linkage.labels)}
    m = np.zeros((len(linkage.edges), 3 * len(linkage.labels)))
    for k, ((u, v), _) in enumerate(linkage.edges):
        i, j = idx[u], idx[v]
        d = pos[i] - pos[j]
        m[k, 3 * i : 3 * i + 3] = d
        m[k, 3 * j : 3 * j + 3] = -d
    return m


def _affine_rank(pos: np.ndarray, tol: Tolerance) -> int:
    centered = pos - pos.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol.eps_rank * sv[0]))


def flex_dimension(
    linkage: Linkage, config: Configuration, tol: Tolerance = DEFAULT_TOL
) -> int:
    """Dimension of the space of non-rigid infinitesimal motions.

    Computed as nullity(rigidity matrix) - 6; requires the configuration to
    affinely span 3-space so that exactly 6 motions are trivial."""
    pos = _positions(linkage, config)
    if _affine_rank(pos, tol) < 3:
        raise GeometryError("configuration does not affinely span 3d; span deficient")
    m = rigidity_matrix(linkage, config)
    sv = np.linalg.svd(m, compute_uv=False)
    rank = int(np.sum(sv > tol.eps_rank * sv[0])) if sv.size and sv[0] > 0 else 0
    nullity = 3 * len(linkage.labels) - rank
    return nullity - 6


def quad_dof_check(points, tol: Tolerance = DEFAULT_TOL) -> int:
    """Degrees of freedom of the 4-bar loop on four points (expected 2).

    Planar quadrilaterals are fine; collinear ones are degenerate."""
    pos = np.asarray(points, dtype=float).reshape(4, 3)
    if _affine_rank(pos, tol) < 2:
        raise GeometryError("quadrilateral points are collinear; span deficient")
    labels = ("q0", "q1", "q2", "q3")
    cfg = {lab: pos[i] for i, lab in enumerate(labels)}
    edges = tuple(
        ((labels[i], labels[(i + 1) % 4]), norm(pos[i] - pos[(i + 1) % 4]))
        for i in range(4)
    )
    linkage = Linkage(labels, edges, ("q0", "q1", "q2"))
    m = rigidity_matrix(linkage, cfg)
    sv = np.linalg.svd(m, compute_uv=False)
    rank = int(np.sum(sv > tol.eps_rank * sv[0])) if sv[0] > 0 else 0
    return (12 - rank) - 6


# ---------------------------------------------------------------------------
# Continuation


def _canonical_positions(
    linkage: Linkage, config: Configuration, tol: Tolerance
) -> np.ndarray:
    """Rigidly move the configuration into the gauge frame."""
    pos = _positions(linkage, config)
    idx = {v: i for i, v in enumerate(linkage.labels)}
    v0, v1, v2 = linkage.gauge
    p0 = pos[idx[v0]]
    ex = pos[idx[v1]] - p0
    lx = norm(ex)
    scale = linkage.scale
    if lx < 1e-9 * scale:
        raise FlexError("gauge vertices coincide")
    ex = ex / lx
    w = pos[idx[v2]] - p0
    ez = w - (w @ ex) * ex
    lz = norm(ez)
    if lz < 1e-9 * scale:
        raise FlexError("gauge vertices are collinear")
    ez = ez / lz
    ey = np.cross(ez, ex)
    rot = np.array([ex, ey, ez])
    return (pos - p0) @ rot.T


def _free_mask(linkage: Linkage) -> np.ndarray:
    idx = {v: i for i, v in enumerate(linkage.labels)}
    mask = np.ones((len(linkage.labels), 3), dtype=bool)
    i0, i1, i2 = (idx[v] for v in linkage.gauge)
    mask[i0, :] = False
    mask[i1, 1] = False
    mask[i1, 2] = False
    mask[i2, 1] = False
    return mask


@dataclass(frozen=True)
class FlexSample:
    arc: float
    s: float
    config: Configuration = field(repr=False)
    max_residual: float
    volume: float
    min_quality: float
    intersections: int | None
    folds: dict[str, str] = field(repr=False)


@dataclass
class FlexTrajectory:
    mesh: TriMesh
    linkage: Linkage
    driving: tuple[str, str]
    samples: list[FlexSample]
    stop_backward: str
    stop_forward: str

    @property
    def driving_values(self) -> np.ndarray:
        return np.array([s.s for s in self.samples])

    def sample_nearest(self, s: float) -> FlexSample:
        k = int(np.argmin(np.abs(self.driving_values - s)))
        return self.samples[k]


def range_of_motion(trajectory: FlexTrajectory, edge: tuple[str, str] | None = None) -> float:
    """Total variation of a hinge dihedral along the trajectory.

    Defaults to the driving edge; pass another mesh edge to measure the
    motion somewhere else (useful when the driving hinge is stiffened by
    part of the structure and barely moves)."""
    if len(trajectory.samples) < 2:
        return 0.0
    if edge is None or tuple(edge) == trajectory.driving:
        s = trajectory.driving_values
    else:
        u, v = edge
        s = np.array(
            [dihedral(trajectory.mesh, smp.config, u, v) for smp in trajectory.samples]
        )
    return float(np.abs(np.diff(s)).sum())


class _Engine:
    def __init__(self, mesh: TriMesh, linkage: Linkage, tol: Tolerance):
        self.mesh = mesh
        self.linkage = linkage
        self.tol = tol
        self.mask = _free_mask(linkage).ravel()
        self.nv = len(linkage.labels)
        idx = {v: i for i, v in enumerate(linkage.labels)}
        self.pairs = np.array([(idx[u], idx[v]) for (u, v), _ in linkage.edges])
        self.lens = np.array([L for _, L in linkage.edges])

    def to_vector(self, pos: np.ndarray) -> np.ndarray:
        return pos.ravel()[self.mask]

    def to_positions(self, u: np.ndarray) -> np.ndarray:
        flat = np.zeros(3 * self.nv)
        flat[self.mask] = u
        return flat.reshape(self.nv, 3)

    def config_of(self, u: np.ndarray) -> Configuration:
        pos = self.to_positions(u)
        return {v: pos[i].copy() for i, v in enumerate(self.linkage.labels)}

    def res(self, u: np.ndarray) -> np.ndarray:
        pos = self.to_positions(u)
        d = pos[self.pairs[:, 0]] - pos[self.pairs[:, 1]]
        return (d * d).sum(axis=1) - self.lens ** 2

    def jac(self, u: np.ndarray) -> np.ndarray:
        pos = self.to_positions(u)
        d = pos[self.pairs[:, 0]] - pos[self.pairs[:, 1]]
        m = np.zeros((len(self.pairs), 3 * self.nv))
        for k, (i, j) in enumerate(self.pairs):
            m[k, 3 * i : 3 * i + 3] = 2.0 * d[k]
            m[k, 3 * j : 3 * j + 3] = -2.0 * d[k]
        return m[:, self.mask]

    def tangent(self, u: np.ndarray) -> np.ndarray:
        _, sv, vt = np.linalg.svd(self.jac(u))
        nfree = vt.shape[0]
        if len(sv) < nfree:
            sv = np.concatenate([sv, np.zeros(nfree - len(sv))])
        if sv[0] == 0.0 or sv[-1] > self.tol.eps_rank * sv[0]:
            raise FlexError("configuration is rigid; nothing to continue")
        if nfree >= 2 and sv[-2] <= self.tol.eps_rank * sv[0]:
            raise FlexError("flex dimension exceeds 1; continuation needs a single mode")
        return vt[-1]

    def newton(
        self, u0: np.ndarray, t: np.ndarray, base: np.ndarray, h: float, rtol: float
    ) -> tuple[np.ndarray, bool, int]:
        u = u0.copy()
        for it in range(30):
            r = self.res(u)
            g = float(t @ (u - base) - h)
            if np.max(np.abs(r)) < rtol and abs(g) < rtol:
                return u, True, it
            a = np.vstack([self.jac(u), t])
            rhs = -np.concatenate([r, [g]])
            step = np.linalg.lstsq(a, rhs, rcond=None)[0]
            n0 = np.sqrt((r * r).sum() + g * g)
            alpha = 1.0
            improved = False
            while alpha >= 1.0 / 64:
                u_new = u + alpha * step
                r2 = self.res(u_new)
                g2 = float(t @ (u_new - base) - h)
                if np.sqrt((r2 * r2).sum() + g2 * g2) <= (1.0 - 0.25 * alpha) * n0:
                    improved = True
                    break
                alpha /= 2.0
            if not improved:
                return u, False, it
            u = u_new
        return u, False, 30


def continue_flex(
    mesh: TriMesh,
    config: Configuration,
    driving: tuple[str, str] | None = None,
    lengths: dict[tuple[str, str], float] | None = None,
    gauge: tuple[str, str, str] | None = None,
    tol: Tolerance = DEFAULT_TOL,
    *,
    initial_step: float | None = None,
    max_step: float | None = None,
    max_steps: int = 400,
    quality_floor: float = 1e-3,
    check_intersections: bool = True,
    direction: str = "both",
    adapt: bool = True,
) -> FlexTrajectory:
    """March the one-parameter flex through `config` in both directions.

    Pseudo-arclength predictor/corrector with step halving; stops on
    corrector failure, triangle quality below `quality_floor`, the onset of
    self-intersection (only when the start is embedded), a closed loop, or
    the step budget.  Samples are sorted by arc position; the positive
    direction is the one that initially increases the driving dihedral."""
    validate_driving = driving or (("B", "A'") if mesh.has_edge("B", "A'") else mesh.edges[0])
    if not mesh.has_edge(*validate_driving):
        raise FlexError(f"driving edge {validate_driving} is not in the mesh")
    driving = validate_driving

    linkage = linkage_from_mesh(mesh, config, lengths, gauge)
    eng = _Engine(mesh, linkage, tol)
    scale = linkage.scale
    h0 = initial_step if initial_step is not None else 0.02 * scale
    hmax = max_step if max_step is not None else 0.1 * scale
    rtol = 1e-12 * scale * scale

    pos0 = _canonical_positions(linkage, config, tol)
    u0 = eng.to_vector(pos0)
    r0 = np.max(np.abs(eng.res(u0)))
    if r0 > 1e-6 * scale * scale:
        raise FlexError(f"start configuration violates edge lengths by {r0:.3g}")
    if r0 > rtol:
        u0, ok, _ = eng.newton(u0, np.zeros_like(u0), u0, 0.0, rtol)
        if not ok:
            raise FlexError("could not project the start onto the constraint set")

    t0 = eng.tangent(u0)
    cfg0 = eng.config_of(u0)
    s0 = dihedral(mesh, cfg0, *driving)
    # Positive direction = increasing driving angle at the start.
    delta = 1e-6 * scale
    s_probe = dihedral(mesh, eng.config_of(u0 + delta * t0), *driving)
    if s_probe < s0:
        t0 = -t0
    elif s_probe == s0 and t0[np.argmax(np.abs(t0))] < 0:
        t0 = -t0

    def diagnostics(u: np.ndarray, arc: float) -> FlexSample:
        cfg = eng.config_of(u)
        pos = eng.to_positions(u)
        d = np.sqrt(((pos[eng.pairs[:, 0]] - pos[eng.pairs[:, 1]]) ** 2).sum(axis=1))
        res = float(np.max(np.abs(d - eng.lens)))
        inter = len(self_intersections(mesh, cfg, tol)) if check_intersections else None
        folds = {
            f"{u_}|{v_}": fold_sign(dihedral(mesh, cfg, u_, v_)) for (u_, v_) in mesh.edges
        }
        return FlexSample(
            arc=arc,
            s=dihedral(mesh, cfg, *driving),
            config=cfg,
            max_residual=res,
            volume=signed_volume(mesh, cfg),
            min_quality=min_triangle_quality(mesh, cfg),
            intersections=inter,
            folds=folds,
        )

    start = diagnostics(u0, 0.0)
    start_embedded = check_intersections and start.intersections == 0
    if start.min_quality < quality_floor:
        raise FlexError(
            f"start triangle quality {start.min_quality:.3g} below floor {quality_floor}"
        )

    def march(tangent0: np.ndarray, sign: float) -> tuple[list[FlexSample], str]:
        out: list[FlexSample] = []
        u = u0.copy()
        t_prev = tangent0
        h = h0
        arc = 0.0
        for step in range(max_steps):
            try:
                t = eng.tangent(u)
            except FlexError as exc:
                return out, str(exc)
            if t @ t_prev < 0:
                t = -t
            accepted = False
            while h >= 1e-4 * h0:
                u_try, ok, iters = eng.newton(u + h * t, t, u, h, rtol)
                if ok:
                    accepted = True
                    break
                h /= 2.0
            if not accepted:
                return out, "corrector_failure"
            sample = diagnostics(u_try, sign * (arc + h))
            if sample.min_quality < quality_floor:
                return out, "quality_floor"
            if start_embedded and sample.intersections:
                return out, "intersection_onset"
            arc += h
            out.append(sample)
            u = u_try
            t_prev = t
            if step > 8 and norm(u - u0) < 0.6 * h:
                return out, "closed_loop"
            if adapt and iters <= 4:
                h = min(h * 1.4, hmax)
        return out, "max_steps"

    fwd: list[FlexSample] = []
    bwd: list[FlexSample] = []
    stop_fwd = stop_bwd = "not_marched"
    if direction in ("both", "positive"):
        fwd, stop_fwd = march(t0, +1.0)
    if direction in ("both", "negative"):
        if stop_fwd == "closed_loop":
            stop_bwd = "closed_loop"  # forward already covered the whole loop
        else:
            bwd, stop_bwd = march(-t0, -1.0)

    samples = list(reversed(bwd)) + [start] + fwd
    return FlexTrajectory(mesh, linkage, driving, samples, stop_bwd, stop_fwd)

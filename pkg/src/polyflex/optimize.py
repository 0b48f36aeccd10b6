"""Randomized parameter search for dodecahedra with more room to flex.

The objective is the range-of-motion metric from the flex module, measured
at the tent-base hinge; feasibility means the build succeeds and the flex
stays embedded.  Larger ranges tend to come from thinner triangles, so the
search carries a triangle-quality floor and reports the clearance margin
(smallest gap between non-adjacent faces anywhere along the flex).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .constructions import ConstructionError, DodecParams, build_dodecahedron_detail
from .flex import FlexError, continue_flex, range_of_motion
from .geometry import DEFAULT_TOL, GeometryError, Tolerance
from .intersect import tri_tri_distance
from .mesh import MeshError, TriMesh, Configuration

__all__ = ["EvalResult", "SearchResult", "evaluate", "search"]

# multiplicative step size of the log-normal proposals
_STEP_SIGMA = 0.08
# lengths that get perturbed; l3 stays fixed as the scale gauge and
# base_shape only seeds the root solve, the flex explores the rest
_FREE_FIELDS = ("l1", "l2", "l4", "l5", "h1", "h2", "h3")


@dataclass(frozen=True)
class EvalResult:
    feasible: bool
    range: float
    min_clearance: float
    min_triangle_quality: float
    stage: str | None = None

    def better_than(self, other: "EvalResult") -> bool:
        if not self.feasible:
            return False
        if not other.feasible:
            return True
        if self.range != other.range:
            return self.range > other.range
        return self.min_clearance > other.min_clearance


def _disjoint_face_pairs(mesh: TriMesh) -> list[tuple[int, int]]:
    out = []
    for i in range(len(mesh.faces)):
        for j in range(i + 1, len(mesh.faces)):
            if not set(mesh.faces[i]) & set(mesh.faces[j]):
                out.append((i, j))
    return out


def _min_clearance(mesh: TriMesh, config: Configuration, pairs: list[tuple[int, int]]) -> float:
    tris = {
        i: np.array([config[v] for v in mesh.faces[i]])
        for i in {k for pair in pairs for k in pair}
    }
    return min(tri_tri_distance(tris[i], tris[j]) for (i, j) in pairs)


def _failure(exc: Exception) -> EvalResult:
    msg = str(exc)
    stage = msg.split(":", 1)[0].strip() if ":" in msg else type(exc).__name__
    return EvalResult(False, 0.0, 0.0, 0.0, stage=stage)


def evaluate(params: DodecParams, tol: Tolerance = DEFAULT_TOL, max_steps: int = 200) -> EvalResult:
    """Build the dodecahedron, flex it, and score the motion.

    Infeasible parameter sets (triangle-inequality violations, failed root
    solves, non-embeddable tents, rigid results) come back as feasible=False
    with the stage that failed; no exception escapes."""
    try:
        build = build_dodecahedron_detail(params, tol)
        scale = max(
            float(np.linalg.norm(build.config[u] - build.config[v]))
            for (u, v) in build.mesh.edges
        )
        traj = continue_flex(
            build.mesh,
            build.config,
            tol=tol,
            adapt=False,
            initial_step=0.02 * scale,
            max_steps=max_steps,
        )
    except (ConstructionError, GeometryError, MeshError, FlexError) as exc:
        return _failure(exc)
    rng = range_of_motion(traj, edge=build.range_edge)
    pairs = _disjoint_face_pairs(build.mesh)
    clearance = min(_min_clearance(build.mesh, s.config, pairs) for s in traj.samples)
    quality = min(s.min_quality for s in traj.samples)
    return EvalResult(rng > 0.0, rng, clearance, quality)


@dataclass(frozen=True)
class SearchResult:
    params: DodecParams
    result: EvalResult
    history: tuple[dict, ...]


def search(
    seed_params: DodecParams,
    budget: int,
    rng_seed: int = 0,
    quality_floor: float = 1e-3,
    tol: Tolerance = DEFAULT_TOL,
) -> SearchResult:
    """Accept-if-better hill climb around seed_params.

    Each trial multiplies the free lengths by independent log-normal
    factors; a trial is accepted when it is feasible, meets the quality
    floor, and beats the incumbent on range (clearance breaks ties).  The
    incumbent can only improve, so the result is never worse than a
    feasible seed."""
    if budget < 1:
        raise ValueError("search: budget must be at least 1")
    rng = np.random.default_rng(rng_seed)
    history: list[dict] = []

    def admissible(r: EvalResult) -> bool:
        return r.feasible and r.min_triangle_quality >= quality_floor

    best_params = seed_params
    best = evaluate(seed_params, tol)
    have_best = admissible(best)
    history.append(
        {"trial": -1, "accepted": have_best, "range": best.range, "stage": best.stage,
         "quality": best.min_triangle_quality, "params": _params_dict(seed_params)}
    )
    last_stage = best.stage
    for trial in range(budget):
        factors = {f: float(np.exp(_STEP_SIGMA * rng.standard_normal())) for f in _FREE_FIELDS}
        base = best_params if have_best else seed_params
        cand_params = replace(base, **{f: getattr(base, f) * k for f, k in factors.items()})
        cand = evaluate(cand_params, tol)
        accepted = admissible(cand) and (not have_best or cand.better_than(best))
        if accepted:
            best_params, best, have_best = cand_params, cand, True
        if not cand.feasible:
            last_stage = cand.stage
        history.append(
            {"trial": trial, "accepted": accepted, "range": cand.range, "stage": cand.stage,
             "quality": cand.min_triangle_quality, "params": _params_dict(cand_params)}
        )
    if not have_best:
        raise RuntimeError(
            f"search: no feasible parameters within {budget} trials "
            f"(last failure stage: {last_stage})"
        )
    return SearchResult(best_params, best, tuple(history))


def _params_dict(p: DodecParams) -> dict:
    return {"l": list(p.lengths), "h": list(p.heights), "base_shape": p.base_shape}

"""Local HTTP service the browser viewer talks to.

Stateless: every response is a pure function of the request body, so
identical requests give identical responses.  Builds and trajectories are
memoized per parameter set, which keeps slider scrubbing cheap without
changing semantics.
"""
from __future__ import annotations

from functools import lru_cache

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware

from . import io as pio
from .constructions import (
    ConstructionError,
    DodecBuild,
    DodecParams,
    build_dodecahedron_detail,
)
from .flex import (
    FlexError,
    FlexTrajectory,
    continue_flex,
    flex_dimension,
    linkage_from_mesh,
    range_of_motion,
)
from .geometry import GeometryError
from .mesh import MeshError, self_intersections, signed_volume, validate
from .net import export_svg, unfold

__all__ = ["app"]

app = FastAPI(title="polyflex", version="1.0")
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)

_MAX_STEPS_CAP = 2000


def _bad_request(msg: str) -> HTTPException:
    return HTTPException(status_code=400, detail=msg)


def _unprocessable(msg: str) -> HTTPException:
    return HTTPException(status_code=422, detail=msg)


def _parse_params(body: dict) -> DodecParams:
    if not isinstance(body, dict):
        raise _bad_request("params: body must be a JSON object")
    doc = body.get("params")
    if doc is None:
        raise _bad_request("params: missing field 'params'")
    try:
        params = pio.params_from_doc(doc)
        return params.validated()
    except (pio.IOFormatError, ConstructionError) as exc:
        raise _bad_request(str(exc)) from exc


@lru_cache(maxsize=64)
def _build(params: DodecParams) -> DodecBuild:
    return build_dodecahedron_detail(params)


@lru_cache(maxsize=32)
def _flex(params: DodecParams, max_steps: int) -> FlexTrajectory:
    build = _build(params)
    return continue_flex(build.mesh, build.config, max_steps=max_steps)


@lru_cache(maxsize=32)
def _net_svg(params: DodecParams) -> str:
    build = _build(params)
    traj_doc = pio.trajectory_to_doc(_flex(params, 400))
    return export_svg(unfold(build.mesh, build.config, trajectory=traj_doc))


def _geometry(fn, *args):
    try:
        return fn(*args)
    except (ConstructionError, GeometryError, MeshError, FlexError) as exc:
        raise _unprocessable(str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "format": pio.FORMAT}


@app.post("/build")
async def build(request: Request) -> dict:
    body = await request.json()
    params = _parse_params(body)
    b = _geometry(_build, params)
    info = validate(b.mesh)
    linkage = linkage_from_mesh(b.mesh, b.config)
    report = self_intersections(b.mesh, b.config)
    return {
        "mesh": pio.mesh_to_doc(b.mesh, b.config),
        "diagnostics": {
            "vertices": info["vertices"],
            "edges": info["edges"],
            "faces": info["faces"],
            "volume": signed_volume(b.mesh, b.config),
            "tent_volume": b.tent_volume,
            "tent_face": list(b.tent_face),
            "range_edge": pio.edge_key(*b.range_edge),
            "flex_dimension": flex_dimension(linkage, b.config),
            "intersections": len(report),
            "intersection_pairs": [list(p) for p in report.pairs],
            "embedded": len(report) == 0,
            "x": b.xy.x,
            "y": b.xy.y,
        },
    }


@app.post("/flex")
async def flex(request: Request) -> dict:
    body = await request.json()
    params = _parse_params(body)
    max_steps = body.get("max_samples", 400)
    if not isinstance(max_steps, int) or not (2 <= max_steps <= _MAX_STEPS_CAP):
        raise _bad_request(f"params: max_samples must be an integer in [2, {_MAX_STEPS_CAP}]")
    b = _geometry(_build, params)
    traj = _geometry(_flex, params, max_steps)
    doc = pio.trajectory_to_doc(traj)
    doc["range"] = range_of_motion(traj, edge=b.range_edge)
    doc["range_edge"] = pio.edge_key(*b.range_edge)
    return doc


@app.post("/net")
async def net(request: Request) -> dict:
    body = await request.json()
    params = _parse_params(body)
    return {"svg": _geometry(_net_svg, params)}


@app.post("/sample")
async def sample(request: Request) -> dict:
    body = await request.json()
    params = _parse_params(body)
    s = body.get("s")
    if isinstance(s, bool) or not isinstance(s, (int, float)):
        raise _bad_request("params: missing or non-numeric field 's'")
    traj = _geometry(_flex, params, 400)
    values = traj.driving_values
    slack = 1e-9 * (values.max() - values.min() + 1.0)
    if not (values.min() - slack <= s <= values.max() + slack):
        raise _unprocessable(
            f"flex: s={s} outside the feasible driving interval "
            f"[{values.min():.6g}, {values.max():.6g}]"
        )
    smp = traj.sample_nearest(float(s))
    b = _geometry(_build, params)
    report = self_intersections(b.mesh, smp.config)
    return {
        "s": smp.s,
        "config": {v: [float(x) for x in p] for v, p in smp.config.items()},
        "volume": smp.volume,
        "max_residual": smp.max_residual,
        "intersections": -1 if smp.intersections is None else smp.intersections,
        "intersection_pairs": [list(p) for p in report.pairs],
        "folds": dict(smp.folds),
    }

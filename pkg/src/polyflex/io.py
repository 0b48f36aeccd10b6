"""JSON and OBJ serialization.

All documents carry a "format": "polyflex/1" tag.  Floats are written with
repr, which round-trips exactly, so import(export(x)) == x structurally.
Parse errors name the offending JSON path.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .constructions import DodecParams
from .flex import FlexTrajectory
from .mesh import Configuration, TriMesh

__all__ = [
    "FORMAT",
    "IOFormatError",
    "params_to_doc",
    "params_from_doc",
    "mesh_to_doc",
    "mesh_from_doc",
    "trajectory_to_doc",
    "check_trajectory_doc",
    "export_obj",
    "edge_key",
    "split_edge_key",
    "dump_doc",
    "load_doc",
]

FORMAT = "polyflex/1"


class IOFormatError(ValueError):
    """Malformed document; the message names the JSON path."""


def edge_key(u: str, v: str) -> str:
    a, b = sorted((u, v))
    return f"{a}|{b}"


def split_edge_key(key: str) -> tuple[str, str]:
    parts = key.split("|")
    if len(parts) != 2 or not all(parts):
        raise IOFormatError(f"bad edge key {key!r}, expected 'u|v'")
    return parts[0], parts[1]


def _need(doc: dict, field: str, where: str):
    if not isinstance(doc, dict) or field not in doc:
        raise IOFormatError(f"{where}: missing field {field!r}")
    return doc[field]


def _floats(val, count: int, where: str) -> list[float]:
    if not isinstance(val, (list, tuple)) or len(val) != count:
        raise IOFormatError(f"{where}: expected {count} numbers")
    out = []
    for i, x in enumerate(val):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise IOFormatError(f"{where}[{i}]: not a number")
        out.append(float(x))
    return out


def _check_format(doc: dict, where: str) -> None:
    tag = _need(doc, "format", where)
    if tag != FORMAT:
        raise IOFormatError(f"{where}.format: expected {FORMAT!r}, got {tag!r}")


# -- params ------------------------------------------------------------------


def params_to_doc(params: DodecParams) -> dict:
    return {
        "format": FORMAT,
        "l": list(params.lengths),
        "h": list(params.heights),
        "base_shape": params.base_shape,
    }


def params_from_doc(doc: dict) -> DodecParams:
    _check_format(doc, "params")
    l = _floats(_need(doc, "l", "params"), 5, "params.l")
    h = _floats(_need(doc, "h", "params"), 3, "params.h")
    bs = _floats([doc.get("base_shape", 0.75)], 1, "params.base_shape")[0]
    return DodecParams(*l, *h, base_shape=bs)


# -- mesh --------------------------------------------------------------------


def mesh_to_doc(mesh: TriMesh, config: Configuration) -> dict:
    return {
        "format": FORMAT,
        "vertices": [{"id": v, "xyz": [float(x) for x in config[v]]} for v in mesh.vertices],
        "faces": [list(f) for f in mesh.faces],
    }


def mesh_from_doc(doc: dict) -> tuple[TriMesh, Configuration]:
    _check_format(doc, "mesh")
    verts = _need(doc, "vertices", "mesh")
    faces = _need(doc, "faces", "mesh")
    if not isinstance(verts, list) or not verts:
        raise IOFormatError("mesh.vertices: expected a nonempty list")
    labels: list[str] = []
    config: Configuration = {}
    for i, rec in enumerate(verts):
        vid = _need(rec, "id", f"mesh.vertices[{i}]")
        if not isinstance(vid, str) or not vid:
            raise IOFormatError(f"mesh.vertices[{i}].id: expected a nonempty string")
        if vid in config:
            raise IOFormatError(f"mesh.vertices[{i}].id: duplicate {vid!r}")
        xyz = _floats(_need(rec, "xyz", f"mesh.vertices[{i}]"), 3, f"mesh.vertices[{i}].xyz")
        labels.append(vid)
        config[vid] = np.array(xyz)
    if not isinstance(faces, list):
        raise IOFormatError("mesh.faces: expected a list")
    out_faces = []
    for i, f in enumerate(faces):
        if not isinstance(f, list) or len(f) != 3:
            raise IOFormatError(f"mesh.faces[{i}]: expected 3 vertex ids")
        for v in f:
            if v not in config:
                raise IOFormatError(f"mesh.faces[{i}]: unknown vertex {v!r}")
        out_faces.append(tuple(f))
    return TriMesh(tuple(labels), tuple(out_faces)), config


# -- trajectory --------------------------------------------------------------


def trajectory_to_doc(traj: FlexTrajectory) -> dict:
    return {
        "format": FORMAT,
        "driving": edge_key(*traj.driving),
        "stop_backward": traj.stop_backward,
        "stop_forward": traj.stop_forward,
        "samples": [
            {
                "s": s.s,
                "config": {v: [float(x) for x in p] for v, p in s.config.items()},
                "volume": s.volume,
                "max_residual": s.max_residual,
                "intersections": -1 if s.intersections is None else s.intersections,
                "folds": dict(s.folds),
            }
            for s in traj.samples
        ],
    }


def check_trajectory_doc(doc: dict) -> dict:
    """Validate the shape of a trajectory document and return it."""
    _check_format(doc, "trajectory")
    driving = _need(doc, "driving", "trajectory")
    split_edge_key(driving)
    samples = _need(doc, "samples", "trajectory")
    if not isinstance(samples, list):
        raise IOFormatError("trajectory.samples: expected a list")
    for i, s in enumerate(samples):
        where = f"trajectory.samples[{i}]"
        _floats([_need(s, "s", where)], 1, f"{where}.s")
        cfg = _need(s, "config", where)
        if not isinstance(cfg, dict) or not cfg:
            raise IOFormatError(f"{where}.config: expected a nonempty object")
        for v, xyz in cfg.items():
            _floats(xyz, 3, f"{where}.config[{v!r}]")
        folds = s.get("folds", {})
        if not isinstance(folds, dict):
            raise IOFormatError(f"{where}.folds: expected an object")
        for k in folds:
            split_edge_key(k)
    return doc


# -- OBJ ---------------------------------------------------------------------


def export_obj(mesh: TriMesh, config: Configuration) -> str:
    idx = {v: i + 1 for i, v in enumerate(mesh.vertices)}
    lines = [f"# {len(mesh.vertices)} vertices, {len(mesh.faces)} faces"]
    for v in mesh.vertices:
        x, y, z = (float(c) for c in config[v])
        lines.append(f"v {x!r} {y!r} {z!r}")
    for f in mesh.faces:
        lines.append(f"f {idx[f[0]]} {idx[f[1]]} {idx[f[2]]}")
    return "\n".join(lines) + "\n"


# -- files -------------------------------------------------------------------


def dump_doc(doc: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_doc(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise IOFormatError(f"{path}: not valid JSON ({exc})") from exc

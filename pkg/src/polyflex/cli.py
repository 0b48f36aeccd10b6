"""Command-line front end.

Every command exits 0 on success and 2 on failure, printing a stage-tagged
message to stderr; randomized commands take an explicit seed so runs are
reproducible.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io as pio
from .constructions import (
    ConstructionError,
    DEFAULT_PARAMS,
    FOOTNOTE_PARAMS,
    DodecParams,
    build_dodecahedron_detail,
)
from .flex import FlexError, continue_flex, flex_dimension, linkage_from_mesh, range_of_motion
from .geometry import GeometryError
from .mesh import MeshError, self_intersections, signed_volume, validate
from .minimality import (
    classify,
    degree_identity_check,
    enumerate_triangulations,
    flexibility_candidates,
    reduce_degree3,
    tetrahedron,
)
from .net import export_svg, unfold
from .optimize import search

_ERRORS = (ConstructionError, GeometryError, MeshError, FlexError, pio.IOFormatError, ValueError)


def _params_from_args(args) -> DodecParams:
    if args.params:
        return pio.params_from_doc(pio.load_doc(args.params))
    return {"default": DEFAULT_PARAMS, "footnote": FOOTNOTE_PARAMS}[args.preset]


def _add_params_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--params", help="params JSON file (overrides --preset)")
    p.add_argument("--preset", choices=("default", "footnote"), default="default")


def cmd_build(args) -> int:
    params = _params_from_args(args)
    build = build_dodecahedron_detail(params)
    pio.dump_doc(pio.mesh_to_doc(build.mesh, build.config), args.out)
    info = validate(build.mesh)
    linkage = linkage_from_mesh(build.mesh, build.config)
    print(f"wrote {args.out}")
    print(f"vertices {info['vertices']}  edges {info['edges']}  faces {info['faces']}")
    print(f"volume {signed_volume(build.mesh, build.config):.9g}")
    print(f"tent volume {build.tent_volume:.9g}  tent face {'-'.join(build.tent_face)}")
    print(f"flex dimension {flex_dimension(linkage, build.config)}")
    print(f"self-intersections {len(self_intersections(build.mesh, build.config))}")
    return 0


def cmd_flex(args) -> int:
    params = _params_from_args(args)
    build = build_dodecahedron_detail(params)
    traj = continue_flex(build.mesh, build.config, max_steps=args.max_steps)
    doc = pio.trajectory_to_doc(traj)
    pio.dump_doc(doc, args.out)
    r = range_of_motion(traj, edge=build.range_edge)
    print(f"wrote {args.out}")
    print(f"samples {len(traj.samples)}  stops {traj.stop_backward} / {traj.stop_forward}")
    print(f"range {r:.6g} rad at hinge {pio.edge_key(*build.range_edge)}")
    worst = max(s.max_residual for s in traj.samples)
    print(f"max edge residual {worst:.3g}")
    return 0


def cmd_check(args) -> int:
    mesh, config = pio.mesh_from_doc(pio.load_doc(args.mesh))
    info = validate(mesh)
    print(f"vertices {info['vertices']}  edges {info['edges']}  faces {info['faces']}")
    print(f"volume {signed_volume(mesh, config):.9g}")
    report = self_intersections(mesh, config)
    print(f"self-intersections {len(report)}")
    linkage = linkage_from_mesh(mesh, config)
    dim = flex_dimension(linkage, config)
    print(f"flex dimension {dim}" + ("  (rigid)" if dim == 0 else ""))
    return 0


def cmd_net(args) -> int:
    mesh, config = pio.mesh_from_doc(pio.load_doc(args.mesh))
    traj_doc = None
    if args.trajectory:
        traj_doc = pio.check_trajectory_doc(pio.load_doc(args.trajectory))
    net = unfold(mesh, config, trajectory=traj_doc)
    with open(args.out, "w") as fh:
        fh.write(export_svg(net))
    print(f"wrote {args.out}")
    print(f"fold lines {len(net.folds)}  cut edges {len(net.gluing)}")
    tags = sorted(set(net.folds.values()))
    print(f"fold tags {', '.join(tags)}")
    if net.overlaps:
        print(f"warning: {len(net.overlaps)} overlapping face pairs: {net.overlaps}", file=sys.stderr)
    return 0


def cmd_enumerate(args) -> int:
    levels = enumerate_triangulations(args.max)
    tet = tetrahedron()
    for n, classes in levels.items():
        print(f"V={n}: {len(classes)} triangulation class(es)")
        for k, t in enumerate(classes):
            red = reduce_degree3(t)
            name = classify(t) or "-"
            degs = " ".join(f"{d}^{c}" for d, c in sorted(t.degree_counts.items()))
            tag = "reduces to tetrahedron" if red.is_isomorphic(tet) else "flexibility candidate"
            print(f"  class {k}: degrees {degs}  [{name}]  {tag}")
    cands = flexibility_candidates(args.max)
    print(f"flexibility candidates on <= {args.max} vertices: {len(cands)}")
    for c in cands:
        rep = degree_identity_check(reduce_degree3(c.triangulation))
        print(f"  {c.name}: reduced profile (V4, V5) = {rep['profile']}")
    if args.json:
        doc = {
            "format": pio.FORMAT,
            "classes": {
                str(n): [{"adjacency": {str(v): list(ns) for v, ns in t.adjacency.items()}}
                         for t in classes]
                for n, classes in levels.items()
            },
        }
        pio.dump_doc(doc, args.json)
        print(f"wrote {args.json}")
    return 0


def cmd_optimize(args) -> int:
    seed_params = _params_from_args(args)
    result = search(seed_params, budget=args.budget, rng_seed=args.seed, quality_floor=args.floor)
    pio.dump_doc(pio.params_to_doc(result.params), args.out)
    print(f"wrote {args.out}")
    best = result.result
    print(f"range {best.range:.6g}  clearance {best.min_clearance:.4g}  "
          f"quality {best.min_triangle_quality:.4g}")
    accepted = sum(1 for h in result.history if h["accepted"])
    print(f"accepted {accepted} of {len(result.history)} evaluations")
    if args.log:
        with open(args.log, "a") as fh:
            for h in result.history:
                fh.write(json.dumps(h) + "\n")
        print(f"appended history to {args.log}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyflex", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build the dodecahedron and write mesh JSON")
    _add_params_args(p)
    p.add_argument("--out", default="mesh.json")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("flex", help="flex the dodecahedron and write trajectory JSON")
    _add_params_args(p)
    p.add_argument("--out", default="trajectory.json")
    p.add_argument("--max-steps", type=int, default=400)
    p.set_defaults(fn=cmd_flex)

    p = sub.add_parser("check", help="validate a mesh JSON file and report diagnostics")
    p.add_argument("mesh")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("net", help="unfold a mesh to an SVG net")
    p.add_argument("--mesh", required=True)
    p.add_argument("--trajectory", help="trajectory JSON for score-both fold tags")
    p.add_argument("--out", default="net.svg")
    p.set_defaults(fn=cmd_net)

    p = sub.add_parser("enumerate", help="enumerate small sphere triangulations")
    p.add_argument("--max", type=int, default=7)
    p.add_argument("--json", help="also write adjacency structures to this file")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("optimize", help="randomized search for a larger range of motion")
    _add_params_args(p)
    p.add_argument("--budget", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--floor", type=float, default=1e-3)
    p.add_argument("--out", default="best_params.json")
    p.add_argument("--log", help="append per-trial JSON lines here")
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8008)
    p.set_defaults(fn=cmd_serve)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

import numpy as np
import pytest

from polyflex.geometry import norm, point
from polyflex.io import edge_key
from polyflex.mesh import MeshError, TriMesh
from polyflex.net import export_svg, unfold

TET_FACES = (("a", "b", "c"), ("a", "c", "d"), ("a", "d", "b"), ("b", "d", "c"))


def regular_tetra():
    mesh = TriMesh(("a", "b", "c", "d"), TET_FACES)
    cfg = {
        "a": point(1, 1, 1),
        "b": point(1, -1, -1),
        "c": point(-1, 1, -1),
        "d": point(-1, -1, 1),
    }
    return mesh, cfg


def test_unfold_tetrahedron():
    mesh, cfg = regular_tetra()
    net = unfold(mesh, cfg)
    assert len(net.placements) == 4
    # 3 tree edges fold, the other 3 are cut and glued
    assert len(net.folds) == 3
    assert set(net.folds.values()) == {"mountain"}
    assert len(net.gluing) == 3
    assert sorted(net.gluing.values()) == [0, 1, 2]
    assert net.overlaps == []


def test_unfold_faces_congruent():
    mesh, cfg = regular_tetra()
    net = unfold(mesh, cfg)
    for i, f in enumerate(mesh.faces):
        spots = net.placements[i]
        for u, v in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
            got = norm(spots[u] - spots[v])
            assert got == pytest.approx(norm(cfg[u] - cfg[v]), abs=1e-9)


def test_unfold_rejects_missing_root():
    mesh, cfg = regular_tetra()
    with pytest.raises(MeshError, match="root face"):
        unfold(mesh, cfg, root=("x", "y", "z"))


def test_unfold_dodecahedron_tent_root(default_build):
    net = unfold(default_build.mesh, default_build.config)
    # root at the tent: apex T has degree 3, so its faces anchor the layout
    assert len(net.folds) == 11 and len(net.gluing) == 7
    assert len(net.placements) == 12
    root_face = default_build.mesh.faces[
        next(i for i, spots in net.placements.items() if any(k == "T" for k in spots))
    ]
    assert "T" in root_face


def test_unfold_score_both_needs_trajectory(default_build, dodec_traj):
    plain = unfold(default_build.mesh, default_build.config)
    assert "score-both" not in plain.folds.values()
    scored = unfold(default_build.mesh, default_build.config, trajectory=dodec_traj)
    assert set(plain.folds) == set(scored.folds)
    # the flex swings at least one hinge through flat
    assert "score-both" in scored.folds.values()
    changed = {k for k in plain.folds if scored.folds[k] != plain.folds[k]}
    assert all(scored.folds[k] == "score-both" for k in changed)


def test_svg_output(default_build, dodec_traj):
    net = unfold(default_build.mesh, default_build.config, trajectory=dodec_traj)
    svg = export_svg(net)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert 'class="face"' in svg
    for cls in ("solid", "dashed", "dotted"):
        assert f'class="{cls}"' in svg
    # one label per face corner plus gluing labels
    assert svg.count("<text") >= 36
    assert "viewBox" in svg


def test_svg_no_labels(default_build):
    net = unfold(default_build.mesh, default_build.config)
    svg = export_svg(net, labels=False)
    assert "<text" not in svg


def test_gluing_edges_partition(default_build):
    net = unfold(default_build.mesh, default_build.config)
    mesh = default_build.mesh
    all_keys = {edge_key(u, v) for (u, v) in mesh.edges}
    assert set(net.folds) | set(net.gluing) == all_keys
    assert not set(net.folds) & set(net.gluing)

import math

import numpy as np
import pytest

from polyflex.constructions import OCTA_FACES, build_bricard2
from polyflex.geometry import point
from polyflex.mesh import (
    MeshError,
    PointOnEdge,
    SurfaceQuad,
    TriMesh,
    cut_along_quad,
    cut_and_reflect,
    cut_and_twist,
    dihedral,
    fold_sign,
    min_triangle_quality,
    self_intersections,
    signed_volume,
    split_edge,
    triangle_quality,
    validate,
)

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


def regular_octa():
    mesh = TriMesh(("A", "B", "A'", "B'", "C", "C'"), OCTA_FACES)
    cfg = {
        "A": point(1, 0, 0),
        "A'": point(-1, 0, 0),
        "B": point(0, 1, 0),
        "B'": point(0, -1, 0),
        "C": point(0, 0, 1),
        "C'": point(0, 0, -1),
    }
    return mesh, cfg


def test_trimesh_edges_and_degrees():
    mesh, _ = regular_tetra()
    assert len(mesh.edges) == 6
    assert all(mesh.vertex_degree(v) == 3 for v in mesh.vertices)
    info = validate(mesh)
    assert (info["vertices"], info["edges"], info["faces"]) == (4, 6, 4)


def test_validate_rejects_open_mesh():
    with pytest.raises(MeshError):
        validate(TriMesh(("a", "b", "c"), (("a", "b", "c"),)))


def test_validate_rejects_bad_orientation():
    # second face wound the wrong way: directed edge (a, b) appears twice
    faces = (("a", "b", "c"), ("a", "b", "d"), ("a", "d", "c"), ("b", "c", "d"))
    with pytest.raises(MeshError):
        validate(TriMesh(("a", "b", "c", "d"), faces))


def test_validate_rejects_isolated_vertex():
    with pytest.raises(MeshError):
        validate(TriMesh(("a", "b", "c", "d", "e"), TET_FACES))


def test_signed_volume_tetra():
    mesh, cfg = regular_tetra()
    # edge 2*sqrt(2) regular tetrahedron: V = edge^3 / (6 sqrt 2) = 8/3
    assert signed_volume(mesh, cfg) == pytest.approx(8 / 3)
    flipped = TriMesh(mesh.vertices, tuple((a, c, b) for (a, b, c) in mesh.faces))
    assert signed_volume(flipped, cfg) == pytest.approx(-8 / 3)


def test_octahedron_dihedral():
    mesh, cfg = regular_octa()
    want = math.acos(-1 / 3)
    for (u, v) in mesh.edges:
        assert dihedral(mesh, cfg, u, v) == pytest.approx(want, abs=1e-12)
        assert fold_sign(dihedral(mesh, cfg, u, v)) == "mountain"


def test_tetra_dihedral():
    mesh, cfg = regular_tetra()
    want = math.acos(1 / 3)
    assert dihedral(mesh, cfg, "a", "b") == pytest.approx(want, abs=1e-12)


def test_fold_sign_values():
    assert fold_sign(1.0) == "mountain"
    assert fold_sign(math.pi) == "flat"
    assert fold_sign(4.0) == "valley"


def test_triangle_quality():
    eq = np.array([[0, 0, 0], [1, 0, 0], [0.5, math.sqrt(3) / 2, 0]])
    assert triangle_quality(eq) == pytest.approx(math.sqrt(3) / 2)
    thin = np.array([[0, 0, 0], [1, 0, 0], [0.5, 1e-6, 0]])
    assert triangle_quality(thin) < 1e-5
    degen = np.array([[0, 0, 0], [1, 0, 0], [2, 0, 0]])
    assert triangle_quality(degen) == 0.0
    mesh, cfg = regular_octa()
    assert min_triangle_quality(mesh, cfg) == pytest.approx(math.sqrt(3) / 2)


def test_split_edge_counts_and_position():
    mesh, cfg = regular_tetra()
    m2, c2, lab = split_edge(mesh, cfg, "a", "b", 0.25, label="m")
    info = validate(m2)
    assert lab == "m"
    assert (info["vertices"], info["edges"], info["faces"]) == (5, 9, 6)
    assert np.allclose(c2["m"], 0.75 * cfg["a"] + 0.25 * cfg["b"])
    assert m2.vertex_degree("m") == 4


def test_split_edge_bad_parameter():
    mesh, cfg = regular_tetra()
    with pytest.raises(MeshError):
        split_edge(mesh, cfg, "a", "b", 0.0)
    with pytest.raises(MeshError):
        split_edge(mesh, cfg, "a", "b", 0.5, label="c")


def test_surface_quad_materialize_anchor():
    mesh, cfg = regular_octa()
    quad = SurfaceQuad((PointOnEdge("A", "C", 0.5, "M"), "B", "A'", "B'"))
    m2, c2, labels = quad.materialize(mesh, cfg)
    assert labels[0] == "M"
    assert "M" in m2.vertices


def test_surface_quad_needs_mesh_edges():
    mesh, cfg = regular_octa()
    # A and A' are antipodal, so the side A-A' is not a mesh edge
    with pytest.raises(MeshError):
        SurfaceQuad(("A", "A'", "C", "C'")).materialize(mesh, cfg)


def test_cut_along_quad_two_caps():
    mesh, cfg = regular_octa()
    cap_a, cap_b = cut_along_quad(mesh, cfg, ("A", "B", "A'", "B'"))
    assert len(cap_a.faces) == 4 and len(cap_b.faces) == 4
    assert {cap_a.interior[0], cap_b.interior[0]} == {"C", "C'"}
    assert set(cap_a.boundary) == {"A", "B", "A'", "B'"}


def test_cut_and_twist_preserves_lengths_and_involutes():
    mesh, cfg = regular_octa()
    quad = SurfaceQuad(("A", "B", "A'", "B'"))
    m1, c1 = cut_and_twist(mesh, cfg, quad)
    validate(m1)
    lengths = {tuple(sorted(e)): np.linalg.norm(cfg[e[0]] - cfg[e[1]]) for e in mesh.edges}
    for (u, v) in m1.edges:
        key = tuple(sorted((u, v)))
        if key in lengths:
            assert np.linalg.norm(c1[u] - c1[v]) == pytest.approx(lengths[key], abs=1e-12)
    m2, c2 = cut_and_twist(m1, c1, quad)
    for v in mesh.vertices:
        assert np.allclose(c2[v], cfg[v], atol=1e-12)


def test_cut_and_reflect_bricard2_equator():
    mesh, cfg = build_bricard2((2.2, 3.0), (2.5, 2.8, 2.6, 3.1), 0.9)
    m2, c2 = cut_and_reflect(mesh, cfg, SurfaceQuad(("A", "B", "A'", "B'")))
    info = validate(m2)
    assert info["vertices"] == 6
    # the moved apex is a genuinely new position, so it gets a primed label
    assert any(v.endswith("'") and v not in mesh.vertices for v in m2.vertices) or set(
        m2.vertices
    ) != set(mesh.vertices)


def test_cut_and_twist_needs_symmetry():
    mesh, cfg = regular_octa()
    cfg = dict(cfg)
    cfg["B"] = point(0.2, 1.4, 0.3)  # break the rotational symmetry of the equator
    from polyflex.geometry import GeometryError

    with pytest.raises((GeometryError, MeshError)):
        cut_and_twist(mesh, cfg, SurfaceQuad(("A", "B", "A'", "B'")))


def test_self_intersections_embedded_zero():
    mesh, cfg = regular_tetra()
    assert len(self_intersections(mesh, cfg)) == 0
    mesh, cfg = regular_octa()
    assert len(self_intersections(mesh, cfg)) == 0


def test_self_intersections_crossing_detected():
    # one horizontal triangle pierced by a vertical one
    mesh = TriMesh(("a", "b", "c", "d", "e", "f"), (("a", "b", "c"), ("d", "e", "f")))
    cfg = {
        "a": point(-2, -2, 0),
        "b": point(2, -2, 0),
        "c": point(0, 3, 0),
        "d": point(0, 0, -1),
        "e": point(1, 0, 1),
        "f": point(-1, 0, 1),
    }
    report = self_intersections(mesh, cfg)
    assert len(report) == 1
    assert report.pairs == ((0, 1),)
    assert report.common_faces() == {0, 1}
    seg = report.witnesses[0]
    assert np.allclose([seg[0][2], seg[1][2]], 0.0)  # crossing lies in z=0 plane

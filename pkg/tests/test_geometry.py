import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyflex.geometry import (
    GeometryError,
    Isometry3,
    Line3,
    Plane3,
    half_rotation,
    norm,
    pairwise_scale,
    point,
    reflect_in_plane,
    signed_volume_tetra,
    trilaterate,
    unit,
)

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def vec(rng):
    return rng.standard_normal(3)


def test_point_and_norm():
    p = point(3.0, 4.0, 0.0)
    assert p.dtype == np.float64
    assert norm(p) == 5.0


def test_unit_zero_vector():
    with pytest.raises(GeometryError):
        unit(np.zeros(3))


def test_pairwise_scale():
    pts = np.array([[0, 0, 0], [1, 0, 0], [0, 2, 0]], dtype=float)
    assert pairwise_scale(pts) == pytest.approx(np.sqrt(5))
    assert pairwise_scale(np.zeros((1, 3))) == 0.0


def test_line_project_distance():
    line = Line3(point(1, 0, 0), point(0, 0, 3))
    q = line.project(point(5, 2, 7))
    assert np.allclose(q, [1, 0, 7])
    assert line.distance(point(5, 2, 7)) == pytest.approx(np.hypot(4, 2))


def test_plane_signed_distance():
    pl = Plane3(point(0, 0, 2), point(0, 0, 5))
    assert pl.signed_distance(point(7, -3, 6)) == pytest.approx(4.0)
    assert pl.signed_distance(point(0, 0, -1)) == pytest.approx(-3.0)


def test_isometry_requires_orthogonal():
    with pytest.raises(GeometryError):
        Isometry3(np.diag([1.0, 2.0, 1.0]))


def test_isometry_compose_inverse():
    rng = np.random.default_rng(5)
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    iso = Isometry3(q, rng.standard_normal(3))
    p = vec(rng)
    assert np.allclose(iso.inverse().apply(iso.apply(p)), p, atol=1e-12)
    other = Isometry3(np.eye(3), point(1, 2, 3))
    assert np.allclose(iso.compose(other).apply(p), iso.apply(other.apply(p)), atol=1e-12)


def test_half_rotation_involution():
    rng = np.random.default_rng(7)
    line = Line3(vec(rng), vec(rng))
    rot = half_rotation(line)
    assert rot.det == pytest.approx(1.0)
    p = vec(rng)
    assert np.allclose(rot.apply(rot.apply(p)), p, atol=1e-12)
    # axis points are fixed
    on_axis = line.anchor + 2.7 * line.direction
    assert np.allclose(rot.apply(on_axis), on_axis, atol=1e-12)


def test_reflect_involution():
    rng = np.random.default_rng(8)
    plane = Plane3(vec(rng), vec(rng))
    refl = reflect_in_plane(plane)
    assert refl.det == pytest.approx(-1.0)
    p = vec(rng)
    assert np.allclose(refl.apply(refl.apply(p)), p, atol=1e-12)
    assert abs(plane.signed_distance(refl.apply(p)) + plane.signed_distance(p)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.lists(coord, min_size=12, max_size=12), st.integers(0, 10 ** 6))
def test_trilaterate_recovers_target(flat, salt):
    """Distances measured from a real point are always recoverable."""
    pts = np.array(flat).reshape(4, 3)
    p1, p2, p3, target = pts
    tri = np.array([p1, p2, p3])
    area2 = norm(np.cross(p2 - p1, p3 - p1))
    scale = pairwise_scale(tri)
    if scale < 1e-3 or area2 < 1e-3 * scale * scale:
        return  # skip near-degenerate bases; those raise by design
    band = max(scale, 1.0)
    h = abs(float((target - p1) @ np.cross(p2 - p1, p3 - p1))) / area2
    if 1e-8 * band < h < 1e-4 * band:
        return  # just off the base plane: tangency snapping makes recovery ill-posed
    d = [norm(target - q) for q in tri]
    sols = trilaterate(p1, p2, p3, *d)
    assert sols, "no solutions for realizable distances"
    assert min(norm(s - target) for s in sols) < 1e-7 * band


def test_trilaterate_two_solutions_mirror():
    sols = trilaterate(point(0, 0, 0), point(2, 0, 0), point(0, 2, 0), 1.5, 1.5, 1.5)
    assert len(sols) == 2
    a, b = sols
    assert a[2] > 0 > b[2]  # positive-normal side listed first
    assert np.allclose(a[:2], b[:2], atol=1e-12)


def test_trilaterate_tangent_single():
    # unit spheres about (0,0,0) and (2,0,0) touch only at (1,0,0), in the base plane
    sols = trilaterate(point(0, 0, 0), point(2, 0, 0), point(1, 2, 0), 1.0, 1.0, 2.0)
    assert len(sols) == 1
    assert np.allclose(sols[0], [1.0, 0.0, 0.0], atol=1e-9)


def test_trilaterate_infeasible_empty():
    assert trilaterate(point(0, 0, 0), point(10, 0, 0), point(0, 10, 0), 1, 1, 1) == []


def test_trilaterate_degenerate_bases():
    with pytest.raises(GeometryError):
        trilaterate(point(0, 0, 0), point(0, 0, 0), point(1, 0, 0), 1, 1, 1)
    with pytest.raises(GeometryError):
        trilaterate(point(0, 0, 0), point(1, 0, 0), point(2, 0, 0), 1, 1, 1)
    with pytest.raises(GeometryError):
        trilaterate(point(0, 0, 0), point(1, 0, 0), point(0, 1, 0), -1, 1, 1)


def test_signed_volume_tetra_orientation():
    a, b, c = point(0, 0, 0), point(1, 0, 0), point(0, 1, 0)
    assert signed_volume_tetra(a, b, c, point(0, 0, 1)) == pytest.approx(1 / 6)
    assert signed_volume_tetra(a, b, c, point(0, 0, -1)) == pytest.approx(-1 / 6)
    assert signed_volume_tetra(a, b, c, point(0.3, 0.3, 0)) == 0.0

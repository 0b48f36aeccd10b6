"""Triangle-triangle contact predicates.

Used for self-intersection reports and clearance estimates.  All predicates
take an absolute slack `eps`: contacts thinner than `eps` (touching faces,
shared boundary) do not count as intersections.
"""
from __future__ import annotations

import numpy as np

__all__ = ["tri_tri_intersection", "tri_tri_distance"]


def _plane(tri: np.ndarray) -> tuple[np.ndarray, float] | None:
    n = np.cross(tri[1] - tri[0], tri[2] - tri[0])
    ln = np.linalg.norm(n)
    if ln < 1e-300:
        return None
    n = n / ln
    return n, float(n @ tri[0])


def _line_crossings(tri: np.ndarray, dist: np.ndarray, eps: float) -> list[np.ndarray]:
    """Points where the triangle meets the zero level of `dist`.

    `dist[i]` is the signed distance of vertex i from the other triangle's
    plane; the returned points all lie on the plane-plane intersection line.
    """
    pts = [tri[i] for i in range(3) if abs(dist[i]) <= eps]
    for i, j in ((0, 1), (1, 2), (2, 0)):
        di, dj = dist[i], dist[j]
        if (di > eps and dj < -eps) or (di < -eps and dj > eps):
            t = di / (di - dj)
            pts.append(tri[i] + t * (tri[j] - tri[i]))
    return pts


def _clip_poly(poly: list[np.ndarray], a: np.ndarray, b: np.ndarray) -> list[np.ndarray]:
    """Sutherland-Hodgman step: keep the part of poly left of segment ab."""
    d = b - a
    out: list[np.ndarray] = []
    for i in range(len(poly)):
        p, q = poly[i], poly[(i + 1) % len(poly)]
        sp = d[0] * (p[1] - a[1]) - d[1] * (p[0] - a[0])
        sq = d[0] * (q[1] - a[1]) - d[1] * (q[0] - a[0])
        if sp >= 0:
            out.append(p)
        if (sp > 0 > sq) or (sp < 0 < sq):
            out.append(p + (sp / (sp - sq)) * (q - p))
    return out


def _coplanar_witness(t1: np.ndarray, t2: np.ndarray, n: np.ndarray, eps: float):
    # Project onto the dominant coordinate plane of the shared normal.
    k = int(np.argmax(np.abs(n)))
    keep = [i for i in range(3) if i != k]
    a = t1[:, keep]
    b = t2[:, keep]
    # Ensure the clipping triangle is counterclockwise.
    if (a[1, 0] - a[0, 0]) * (a[2, 1] - a[0, 1]) - (a[1, 1] - a[0, 1]) * (a[2, 0] - a[0, 0]) < 0:
        a = a[::-1]
    poly = [b[0], b[1], b[2]]
    if (b[1, 0] - b[0, 0]) * (b[2, 1] - b[0, 1]) - (b[1, 1] - b[0, 1]) * (b[2, 0] - b[0, 0]) < 0:
        poly = poly[::-1]
    for i in range(3):
        poly = _clip_poly(poly, a[i], a[(i + 1) % 3])
        if not poly:
            return None
    arr = np.array(poly)
    diff = arr[:, None, :] - arr[None, :, :]
    d2 = (diff ** 2).sum(axis=2)
    i, j = np.unravel_index(int(d2.argmax()), d2.shape)
    if d2[i, j] <= eps * eps:
        return None
    # Contact along a shared segment clips to a zero-area polygon; demand
    # thickness beyond eps so edge touches are not mistaken for overlaps.
    axis = (arr[j] - arr[i]) / np.sqrt(d2[i, j])
    off = arr - arr[i]
    if np.abs(off[:, 0] * axis[1] - off[:, 1] * axis[0]).max() <= eps:
        return None
    # Lift the witness diameter back to 3d on triangle 1's supporting plane.
    def lift(p2: np.ndarray) -> np.ndarray:
        p = np.zeros(3)
        p[keep] = p2
        p[k] = (n @ t1[0] - n[keep[0]] * p2[0] - n[keep[1]] * p2[1]) / n[k]
        return p

    return lift(arr[i]), lift(arr[j])


def tri_tri_intersection(
    t1: np.ndarray, t2: np.ndarray, eps: float = 1e-12
) -> tuple[np.ndarray, np.ndarray] | None:
    """Witness segment of the intersection of two triangles, or None.

    Contacts of extent <= eps (touching at a point, along an edge, or a
    sliver thinner than eps) are not reported.  Degenerate (zero-area)
    triangles are never reported.
    """
    t1 = np.asarray(t1, dtype=float).reshape(3, 3)
    t2 = np.asarray(t2, dtype=float).reshape(3, 3)
    pl1 = _plane(t1)
    pl2 = _plane(t2)
    if pl1 is None or pl2 is None:
        return None
    n1, d1 = pl1
    n2, d2 = pl2

    s2 = t2 @ n1 - d1
    if np.all(s2 > eps) or np.all(s2 < -eps):
        return None
    s1 = t1 @ n2 - d2
    if np.all(s1 > eps) or np.all(s1 < -eps):
        return None

    if np.all(np.abs(s2) <= eps) or np.all(np.abs(s1) <= eps):
        return _coplanar_witness(t1, t2, n1, eps)

    direction = np.cross(n1, n2)
    ln = np.linalg.norm(direction)
    if ln <= 1e-14:
        # Parallel but offset planes already handled by the sign tests above;
        # nearly coplanar leftovers go through the 2d path.
        return _coplanar_witness(t1, t2, n1, eps)
    direction = direction / ln

    pts1 = _line_crossings(t1, s1, eps)
    pts2 = _line_crossings(t2, s2, eps)
    if not pts1 or not pts2:
        return None
    r1 = [float(p @ direction) for p in pts1]
    r2 = [float(p @ direction) for p in pts2]
    lo1, hi1 = min(r1), max(r1)
    lo2, hi2 = min(r2), max(r2)
    lo, hi = max(lo1, lo2), min(hi1, hi2)
    if hi - lo <= eps:
        return None
    src_lo = pts1[int(np.argmin(np.abs(np.array(r1) - lo)))] if lo1 >= lo2 else pts2[
        int(np.argmin(np.abs(np.array(r2) - lo)))
    ]
    src_hi = pts1[int(np.argmin(np.abs(np.array(r1) - hi)))] if hi1 <= hi2 else pts2[
        int(np.argmin(np.abs(np.array(r2) - hi)))
    ]
    return src_lo, src_hi


def _seg_seg_distance(p1, q1, p2, q2) -> float:
    d1 = q1 - p1
    d2 = q2 - p2
    r = p1 - p2
    a = d1 @ d1
    e = d2 @ d2
    f = d2 @ r
    if a <= 1e-300 and e <= 1e-300:
        return float(np.linalg.norm(r))
    if a <= 1e-300:
        s, t = 0.0, np.clip(f / e, 0.0, 1.0)
    else:
        c = d1 @ r
        if e <= 1e-300:
            t, s = 0.0, np.clip(-c / a, 0.0, 1.0)
        else:
            b = d1 @ d2
            den = a * e - b * b
            s = np.clip((b * f - c * e) / den, 0.0, 1.0) if den > 1e-300 else 0.0
            t = (b * s + f) / e
            if t < 0.0:
                t = 0.0
                s = np.clip(-c / a, 0.0, 1.0)
            elif t > 1.0:
                t = 1.0
                s = np.clip((b - c) / a, 0.0, 1.0)
    return float(np.linalg.norm((p1 + s * d1) - (p2 + t * d2)))


def _point_tri_distance(p: np.ndarray, tri: np.ndarray) -> float:
    a, b, c = tri
    ab = b - a
    ac = c - a
    ap = p - a
    d1 = ab @ ap
    d2 = ac @ ap
    if d1 <= 0 and d2 <= 0:
        return float(np.linalg.norm(ap))
    bp = p - b
    d3 = ab @ bp
    d4 = ac @ bp
    if d3 >= 0 and d4 <= d3:
        return float(np.linalg.norm(bp))
    vc = d1 * d4 - d3 * d2
    if vc <= 0 and d1 >= 0 and d3 <= 0:
        # d1 - d3 == |ab|^2; zero only for a collapsed edge, where t is moot
        t = d1 / (d1 - d3) if d1 - d3 > 1e-300 else 0.0
        return float(np.linalg.norm(ap - t * ab))
    cp = p - c
    d5 = ab @ cp
    d6 = ac @ cp
    if d6 >= 0 and d5 <= d6:
        return float(np.linalg.norm(cp))
    vb = d5 * d2 - d1 * d6
    if vb <= 0 and d2 >= 0 and d6 <= 0:
        t = d2 / (d2 - d6) if d2 - d6 > 1e-300 else 0.0
        return float(np.linalg.norm(ap - t * ac))
    va = d3 * d6 - d5 * d4
    if va <= 0 and (d4 - d3) >= 0 and (d5 - d6) >= 0:
        den = (d4 - d3) + (d5 - d6)
        t = (d4 - d3) / den if den > 1e-300 else 0.0
        return float(np.linalg.norm(bp - t * (c - b)))
    n = np.cross(ab, ac)
    ln = np.linalg.norm(n)
    if ln < 1e-300:
        return min(
            _seg_seg_distance(p, p, a, b),
            _seg_seg_distance(p, p, b, c),
            _seg_seg_distance(p, p, a, c),
        )
    return abs(float(ap @ (n / ln)))


def tri_tri_distance(t1: np.ndarray, t2: np.ndarray) -> float:
    """Minimal distance between two triangles (0 when they intersect)."""
    t1 = np.asarray(t1, dtype=float).reshape(3, 3)
    t2 = np.asarray(t2, dtype=float).reshape(3, 3)
    if tri_tri_intersection(t1, t2, eps=0.0) is not None:
        return 0.0
    best = np.inf
    for i in range(3):
        for j in range(3):
            best = min(
                best,
                _seg_seg_distance(t1[i], t1[(i + 1) % 3], t2[j], t2[(j + 1) % 3]),
            )
    for i in range(3):
        best = min(best, _point_tri_distance(t1[i], t2))
        best = min(best, _point_tri_distance(t2[i], t1))
    return float(best)

"""Combinatorics behind the eight-vertex minimality claim.

Sphere triangulations on few vertices are enumerated up to isomorphism,
degree-3 vertices are stripped (they never affect flexibility: a stacked
tetrahedron corner rides along rigidly), and the survivors are classified.
On at most seven vertices only three classes do not collapse to the
tetrahedron: the octahedron, the pentagonal bipyramid, and the octahedron
with one tented face.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .flex import flex_dimension, linkage_from_mesh
from .mesh import TriMesh

__all__ = [
    "PlanarTriangulation",
    "tetrahedron",
    "octahedron_graph",
    "pentagonal_bipyramid_graph",
    "octahedron_plus_tent",
    "enumerate_triangulations",
    "reduce_degree3",
    "degree_identity_check",
    "flexibility_candidates",
    "Candidate",
    "generic_rigidity_probe",
]

IntFace = tuple[int, int, int]


def _succ_map(faces: tuple[IntFace, ...]) -> dict[tuple[int, int], int]:
    """Directed edge (u, v) -> third vertex of the face (u, v, w).

    Doubles as the rotation system: w is the neighbor after v in the
    cyclic order around u."""
    succ: dict[tuple[int, int], int] = {}
    for (a, b, c) in faces:
        for (u, v, w) in ((a, b, c), (b, c, a), (c, a, b)):
            if (u, v) in succ:
                raise ValueError(f"directed edge ({u}, {v}) used twice")
            succ[(u, v)] = w
    return succ


def _walk_code(succ: dict[tuple[int, int], int], u0: int, v0: int) -> tuple:
    """Breadth-first canonical relabeling seeded by the dart u0 -> v0."""
    label = {u0: 0, v0: 1}
    order = [u0, v0]
    entry = {u0: v0, v0: u0}
    code = []
    qi = 0
    while qi < len(order):
        u = order[qi]
        qi += 1
        e = entry[u]
        ring = [e]
        w = succ[(u, e)]
        while w != e:
            ring.append(w)
            w = succ[(u, w)]
        for w in ring:
            if w not in label:
                label[w] = len(order)
                order.append(w)
                entry[w] = u
        code.append(tuple(label[w] for w in ring))
    return tuple(code)


@dataclass(frozen=True)
class PlanarTriangulation:
    """Combinatorial sphere triangulation: oriented faces on vertices 0..n-1.

    Maximal planar simple graphs on >= 4 vertices are 3-connected and have
    a unique sphere embedding up to reflection, so isomorphism of these
    objects is plain graph isomorphism; the canonical code minimizes a
    rotation-system walk over all starting darts and both orientations."""

    n: int
    faces: tuple[IntFace, ...]

    def check(self) -> "PlanarTriangulation":
        if self.n < 4:
            raise ValueError("need at least 4 vertices")
        seen = set()
        for f in self.faces:
            if len(set(f)) != 3:
                raise ValueError(f"degenerate face {f}")
            if not all(0 <= v < self.n for v in f):
                raise ValueError(f"face {f} uses out-of-range vertices")
            seen.update(f)
        if seen != set(range(self.n)):
            raise ValueError("isolated vertices")
        succ = _succ_map(self.faces)  # raises on doubled directed edges
        edges = {tuple(sorted(e)) for e in succ}
        for (u, v) in edges:
            if (u, v) not in succ or (v, u) not in succ:
                raise ValueError(f"edge ({u}, {v}) is not two-sided")
        if len(edges) != 3 * self.n - 6:
            raise ValueError("edge count is not 3V - 6")
        if self.n - len(edges) + len(self.faces) != 2:
            raise ValueError("Euler characteristic is not 2")
        for u in range(self.n):
            nbrs = {v for (a, v) in succ if a == u}
            v0 = next(iter(nbrs))
            ring = {v0}
            w = succ[(u, v0)]
            while w != v0:
                ring.add(w)
                w = succ[(u, w)]
            if ring != nbrs:
                raise ValueError(f"link of vertex {u} is not a single cycle")
        return self

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        succ = _succ_map(self.faces)
        out: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for (u, v) in succ:
            out[u].add(v)
        return {v: tuple(sorted(ns)) for v, ns in out.items()}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degree_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for v in range(self.n):
            d = self.degree(v)
            counts[d] = counts.get(d, 0) + 1
        return counts

    @cached_property
    def canonical_code(self) -> tuple:
        succ = _succ_map(self.faces)
        mirror = _succ_map(tuple((c, b, a) for (a, b, c) in self.faces))
        best = None
        for system in (succ, mirror):
            for (u, v) in system:
                code = _walk_code(system, u, v)
                if best is None or code < best:
                    best = code
        return best

    def is_isomorphic(self, other: "PlanarTriangulation") -> bool:
        return self.n == other.n and self.canonical_code == other.canonical_code

    def rotation(self, v: int) -> tuple[int, ...]:
        """Neighbors of v in cyclic order."""
        succ = _succ_map(self.faces)
        v0 = self.adjacency[v][0]
        ring = [v0]
        w = succ[(v, v0)]
        while w != v0:
            ring.append(w)
            w = succ[(v, w)]
        return tuple(ring)

    def to_trimesh(self) -> TriMesh:
        labels = tuple(f"v{i}" for i in range(self.n))
        faces = tuple((labels[a], labels[b], labels[c]) for (a, b, c) in self.faces)
        return TriMesh(labels, faces)


def tetrahedron() -> PlanarTriangulation:
    return PlanarTriangulation(4, ((0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2))).check()


def octahedron_graph() -> PlanarTriangulation:
    # equator 0 1 2 3, apices 4 (north) and 5 (south)
    faces = tuple(
        [(i, (i + 1) % 4, 4) for i in range(4)] + [((i + 1) % 4, i, 5) for i in range(4)]
    )
    return PlanarTriangulation(6, faces).check()


def pentagonal_bipyramid_graph() -> PlanarTriangulation:
    faces = tuple(
        [(i, (i + 1) % 5, 5) for i in range(5)] + [((i + 1) % 5, i, 6) for i in range(5)]
    )
    return PlanarTriangulation(7, faces).check()


def octahedron_plus_tent() -> PlanarTriangulation:
    """Octahedron with one face replaced by a three-face tent to vertex 6."""
    base = octahedron_graph()
    a, b, c = base.faces[0]
    faces = tuple(f for f in base.faces if f != (a, b, c)) + ((a, b, 6), (b, c, 6), (c, a, 6))
    return PlanarTriangulation(7, faces).check()


def _split_vertex(t: PlanarTriangulation, v: int, i: int, j: int) -> PlanarTriangulation:
    """Split v along the rotation positions i < j; the new vertex is n.

    v keeps the neighbor arc ring[i..j], the new vertex takes ring[j..i],
    and the two share the arc endpoints plus the new edge between them."""
    ring = t.rotation(v)
    d = len(ring)
    a, b = ring[i], ring[j]
    w = t.n
    keep = {ring[k] for k in range(i, j)}  # star faces (v, ring[k], ring[k+1]) staying with v
    faces: list[IntFace] = []
    for f in t.faces:
        if v not in f:
            faces.append(f)
            continue
        k = f.index(v)
        p, q = f[(k + 1) % 3], f[(k + 2) % 3]  # face is (v, p, q) up to rotation
        faces.append((v, p, q) if p in keep else (w, p, q))
    faces.append((v, b, w))
    faces.append((v, w, a))
    return PlanarTriangulation(t.n + 1, tuple(faces))


def enumerate_triangulations(n_max: int) -> dict[int, list[PlanarTriangulation]]:
    """All sphere triangulations with 4..n_max vertices, one per class.

    Every triangulation on n+1 vertices is a vertex split of one on n
    (the inverse of contracting an edge, and every triangulation beyond
    the tetrahedron has a contractible edge), so growing from the
    tetrahedron and deduplicating by canonical code is complete."""
    if not (4 <= n_max <= 10):
        raise ValueError("n_max must be between 4 and 10")
    levels: dict[int, list[PlanarTriangulation]] = {4: [tetrahedron()]}
    for n in range(5, n_max + 1):
        found: dict[tuple, PlanarTriangulation] = {}
        for t in levels[n - 1]:
            for v in range(t.n):
                d = t.degree(v)
                for i in range(d):
                    for j in range(i + 1, d):
                        cand = _split_vertex(t, v, i, j).check()
                        found.setdefault(cand.canonical_code, cand)
        levels[n] = sorted(found.values(), key=lambda t: t.canonical_code)
    return levels


def reduce_degree3(t: PlanarTriangulation) -> PlanarTriangulation:
    """Strip degree-3 vertices one at a time until none remain.

    Removing such a vertex fills its triangular hole with a single face,
    so the result is still a triangulation; stops at the tetrahedron."""
    t = t.check()
    while t.n > 4:
        v = next((u for u in range(t.n) if t.degree(u) == 3), None)
        if v is None:
            return t
        a, b, c = t.rotation(v)
        relab = {u: (u if u < v else u - 1) for u in range(t.n) if u != v}
        faces = [f for f in t.faces if v not in f]
        faces.append((a, b, c))  # star faces consumed (a,b),(b,c),(c,a); resupply them
        t = PlanarTriangulation(
            t.n - 1, tuple(tuple(relab[u] for u in f) for f in faces)
        ).check()
    return t


def degree_identity_check(t: PlanarTriangulation) -> dict:
    """For reduced triangulations on <= 7 vertices: 2 V4 + V5 = 12.

    Follows from E = 3V - 6 and the absence of degrees below 4 or above 6
    at these sizes; the only profiles are (V4, V5) = (5, 2) and (6, 0)."""
    counts = t.degree_counts
    if counts.get(3, 0) > 0:
        raise ValueError("triangulation is not reduced: degree-3 vertices present")
    if t.n > 7:
        raise ValueError("degree identity argument applies to at most 7 vertices")
    v4, v5, v6 = (counts.get(d, 0) for d in (4, 5, 6))
    ok = 2 * v4 + v5 == 12 and v4 + v5 + v6 == t.n
    return {
        "V": t.n,
        "V4": v4,
        "V5": v5,
        "V6": v6,
        "identity_holds": ok,
        "profile": (v4, v5),
        "profile_expected": (v4, v5) in {(5, 2), (6, 0)},
    }


@dataclass(frozen=True)
class Candidate:
    name: str
    triangulation: PlanarTriangulation
    reduction: PlanarTriangulation

    def __repr__(self) -> str:  # the graphs are bulky and nameable
        return f"Candidate({self.name}, n={self.triangulation.n})"


def _known_names() -> list[tuple[str, PlanarTriangulation]]:
    return [
        ("tetrahedron", tetrahedron()),
        ("octahedron", octahedron_graph()),
        ("pentagonal bipyramid", pentagonal_bipyramid_graph()),
        ("octahedron+tent", octahedron_plus_tent()),
    ]


def classify(t: PlanarTriangulation) -> str | None:
    for name, ref in _known_names():
        if t.is_isomorphic(ref):
            return name
    return None


def flexibility_candidates(n_max: int = 7) -> list[Candidate]:
    """Triangulation classes on <= n_max vertices that could carry a flex.

    A class whose degree-3 reduction is the tetrahedron is rigid (three
    spheres meet in at most two points, so each stacked vertex is pinned);
    the others are returned.  For n_max = 7 these are exactly the
    octahedron, the pentagonal bipyramid, and the octahedron with a tent."""
    tet = tetrahedron()
    out: list[Candidate] = []
    for n, classes in enumerate_triangulations(n_max).items():
        for t in classes:
            red = reduce_degree3(t)
            if red.is_isomorphic(tet):
                continue
            name = classify(t) or f"unnamed {n}-vertex class"
            out.append(Candidate(name, t, red))
    return out


def generic_rigidity_probe(
    t: PlanarTriangulation, trials: int = 20, seed: int = 0
) -> dict:
    """Flex dimension of the graph at random configurations.

    Triangulations have E = 3V - 6, exactly the count for generic rigidity,
    and indeed every random configuration comes out rigid; flexes like the
    ones this package builds live on measure-zero strata."""
    mesh = t.to_trimesh()
    rng = np.random.default_rng(seed)
    dims = []
    for _ in range(trials):
        cfg = {v: rng.standard_normal(3) for v in mesh.vertices}
        linkage = linkage_from_mesh(mesh, cfg)
        dims.append(flex_dimension(linkage, cfg))
    return {
        "trials": trials,
        "min_flex_dim": min(dims),
        "max_flex_dim": max(dims),
    }

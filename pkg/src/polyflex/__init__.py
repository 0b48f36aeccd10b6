"""Flexible polyhedra from quadrilateral surgery.

Build Bricard octahedra, cut them along symmetric quadrilaterals, reflect
or twist, tent away the self-intersections, and flex the results while
watching edge lengths, volume, and embeddedness.
"""
from .constructions import (
    DEFAULT_PARAMS,
    FOOTNOTE_PARAMS,
    ConstructionError,
    DodecParams,
    Min8Params,
    build_bricard1,
    build_bricard2,
    build_dodecahedron,
    build_dodecahedron_detail,
    build_min8_twist,
    derive_xy,
)
from .flex import continue_flex, flex_dimension, linkage_from_mesh, range_of_motion
from .geometry import GeometryError, Tolerance
from .mesh import MeshError, TriMesh, self_intersections, signed_volume

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PARAMS",
    "FOOTNOTE_PARAMS",
    "ConstructionError",
    "DodecParams",
    "Min8Params",
    "GeometryError",
    "MeshError",
    "Tolerance",
    "TriMesh",
    "build_bricard1",
    "build_bricard2",
    "build_dodecahedron",
    "build_dodecahedron_detail",
    "build_min8_twist",
    "continue_flex",
    "derive_xy",
    "flex_dimension",
    "linkage_from_mesh",
    "range_of_motion",
    "self_intersections",
    "signed_volume",
    "__version__",
]

"""
Nested CFK triangulations: lattice vertices, point location and basis ordering.
"""

from .freudenthal import (
    SimplexRef,
    VertexStatus,
    barycentric,
    enumerate_box,
    enumerate_vertices,
    locate_simplex,
    mesh_diameter,
    star_weights,
    vertex_layer,
)
from .lattice import LatticeVertex, TriangulationConfig, check_basis_vertex
from .ordering import BasisOrdering, Block, count_box

__all__ = [
    "BasisOrdering",
    "Block",
    "LatticeVertex",
    "SimplexRef",
    "TriangulationConfig",
    "VertexStatus",
    "barycentric",
    "check_basis_vertex",
    "count_box",
    "enumerate_box",
    "enumerate_vertices",
    "locate_simplex",
    "mesh_diameter",
    "star_weights",
    "vertex_layer",
]

"""Ribbon graph complexes over Q, the necklace cycles Z_k and the X_k cocycles."""

from .chain import Chain, boundary, contract_edge, expansions, has_cut_vertex, quotient_project
from .enumeration import betti_numbers, boundary_matrix, enumerate_graphs, euler_characteristic
from .graph import (
    CanonicalGraph,
    Orientation,
    RibbonGraph,
    automorphisms,
    build_graph,
    build_Xk,
    canonicalize,
    faces,
    genus_punctures,
    orientation_sign,
)
from .linalg import SparseMatrixQ, rank_over_Q
from .necklace import Z, binary_trees, compositions_up_to_cycle, ornate_necklace, theta, verify_main_theorem

__all__ = [
    "CanonicalGraph",
    "Chain",
    "Orientation",
    "RibbonGraph",
    "SparseMatrixQ",
    "Z",
    "automorphisms",
    "betti_numbers",
    "binary_trees",
    "boundary",
    "boundary_matrix",
    "build_Xk",
    "build_graph",
    "canonicalize",
    "compositions_up_to_cycle",
    "contract_edge",
    "enumerate_graphs",
    "euler_characteristic",
    "expansions",
    "faces",
    "genus_punctures",
    "has_cut_vertex",
    "orientation_sign",
    "ornate_necklace",
    "quotient_project",
    "rank_over_Q",
    "theta",
    "verify_main_theorem",
]

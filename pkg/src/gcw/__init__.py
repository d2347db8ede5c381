"""Exact graph cohomology, trivalent IHX homology and strata index combinatorics."""
from ._kernels import BACKEND
from .aeven import a_even, a_even_dim, ihx_relation_matrix
from .complex import average_map, differential, forget_map, graded_component, homology, homology_dim
from .enumeration import EnumerationRequest, Generator, brute_force_oracle, enumerate_basis
from .graph import (
    LabeledGraph,
    OrientationClass,
    bidegree,
    canonicalize,
    contract_decoration,
    contract_edge,
    contraction_sign,
    decorations_of,
    is_admissible,
    orientation_class,
)
from .linalg import RationalSparseMatrix, image_in_kernel, kernel_basis, rank_nullity

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EnumerationRequest",
    "Generator",
    "LabeledGraph",
    "OrientationClass",
    "RationalSparseMatrix",
    "a_even",
    "a_even_dim",
    "average_map",
    "bidegree",
    "brute_force_oracle",
    "canonicalize",
    "contract_decoration",
    "contract_edge",
    "contraction_sign",
    "decorations_of",
    "differential",
    "enumerate_basis",
    "forget_map",
    "graded_component",
    "homology",
    "homology_dim",
    "ihx_relation_matrix",
    "image_in_kernel",
    "is_admissible",
    "kernel_basis",
    "orientation_class",
    "rank_nullity",
]

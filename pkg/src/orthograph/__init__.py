"""Orthogonality graphs of upper triangular matrix algebras over prime fields and Q."""

from .algebra import (
    FieldCtx,
    Mat,
    Scalar,
    format_matrix,
    is_upper_triangular,
    left_kernel_vector,
    mat_mul,
    rank,
    right_kernel_vector,
    scalar_inv,
    triangular_inverse,
)
from .classify import (
    ComponentLabel,
    VertexClass,
    VertexTag,
    classify_component_m2,
    classify_component_t2,
    classify_tn,
    is_vertex,
)
from .enumeration import Algebra
from .graph import OrthoGraph, bfs_distance, build_graph, components, diameter, distance_matrix, export
from .ortho import (
    ComplementRay,
    annihilator_rank1,
    are_orthogonal,
    complement_bad1,
    complement_bad2,
    complement_bruteforce,
)
from .pathfinder import OrthoPath, find_path, find_path_t2, verify_path

__version__ = "0.1.0"

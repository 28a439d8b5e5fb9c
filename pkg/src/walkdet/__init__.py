"""Exact walk-matrix determinants of rooted product graphs and F-preserver search."""

from .exactlinalg import charpoly, delete_row_col, det_bareiss, kron, mat_add_scaled
from .graphs import (
    ADJACENCY,
    SIGNLESS_LAPLACIAN,
    Graph,
    MatrixKind,
    RootedGraph,
    emit_graph6,
    enumerate_graphs,
    matrix_of,
    parse_graph6,
    rooted_product,
)
from .poly import IntPoly, interpolate_exact, is_pm_monomial, sylvester_resultant
from .walk import (
    controllability_check,
    dgs_family_step,
    f_membership,
    h_poly,
    preserver_check,
    theorem_main_verify,
    walk_det,
    walk_matrix,
)

__version__ = "0.1.0"

"""Exact solvers for the Wiener max/min quadratic assignment problem and for
trees of maximum Wiener index with a prescribed degree sequence."""

__version__ = "0.1.0"

from .core import (
    Assignment,
    PartitionInstance,
    Sense,
    Shape,
    WienerQapInstance,
    decomposition_split,
    evaluate_general_qap,
    evaluate_objective,
    factor_product_matrix,
    is_pyramidal,
    is_v_shaped,
    recover_point_set,
    reduce_partition,
)
from .dp import SolveContext, SolveResult, reconstruct, solve, solve_max, solve_min, state_value
from .degrees import DegreeSequence, validate_degree_sequence, wiener_from_ell
from .tree import (
    Caterpillar,
    build_constrained_instance,
    caterpillar_from_ell,
    solve_max_wiener,
)
from .formats import load_instance, parse_instance

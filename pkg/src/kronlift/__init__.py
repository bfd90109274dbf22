"""kronlift: polynomial algebraic systems in Kronecker matrix form,
lifted to underdetermined linear systems and solved by SVD analysis,
pseudoinverse, and consistency-driven null-space search, with a Newton
baseline and a 1-D collocation frontend."""

from kronlift.kernels import BACKEND
from kronlift.lift import Block, LiftedSystem, build_lifted, monomial_embedding
from kronlift.recovery import (
    CandidateSolution,
    consistency_score,
    extract_candidates,
    nullspace_search,
    polish,
)
from kronlift.solvers import (
    NewtonTrace,
    SvdReport,
    newton_solve,
    normal_eq_solve,
    nullspace_basis,
    pinv_solve,
    pseudoinverse,
    svd_analyze,
)
from kronlift.system_model import (
    PolynomialSystem,
    ResidualVector,
    eval_jacobian,
    eval_residual,
    random_system,
    symmetrize_quadratic,
)
from kronlift.tensor_core import (
    PairIndexMap,
    TripleIndexMap,
    check_det_inequality,
    check_spectral_bounds,
    hadamard,
    hadamard_via_kron,
    kron,
    selection_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Block",
    "CandidateSolution",
    "LiftedSystem",
    "NewtonTrace",
    "PairIndexMap",
    "PolynomialSystem",
    "ResidualVector",
    "SvdReport",
    "TripleIndexMap",
    "build_lifted",
    "check_det_inequality",
    "check_spectral_bounds",
    "consistency_score",
    "eval_jacobian",
    "eval_residual",
    "extract_candidates",
    "hadamard",
    "hadamard_via_kron",
    "kron",
    "monomial_embedding",
    "newton_solve",
    "normal_eq_solve",
    "nullspace_basis",
    "nullspace_search",
    "pinv_solve",
    "polish",
    "pseudoinverse",
    "random_system",
    "selection_matrix",
    "svd_analyze",
    "symmetrize_quadratic",
]

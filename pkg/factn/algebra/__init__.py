"""
Exact algebra: scalars, polynomials, matrices and linear solvers
"""
from .fields import Field, Scalar, is_prime
from .polynomial import Polynomial, Ring
from .parser import parse_poly
from .matrix import Matrix, mat_mul
from .linsolve import (
    LinearTemplate,
    SolveResult,
    bounded_poly_solve,
    field_solve,
    left_nullspace_matrix,
    nullspace_matrix,
    rank,
    solution_space,
    solve_right,
)

__all__ = [
    "Field",
    "Scalar",
    "is_prime",
    "Polynomial",
    "Ring",
    "parse_poly",
    "Matrix",
    "mat_mul",
    "LinearTemplate",
    "SolveResult",
    "bounded_poly_solve",
    "field_solve",
    "left_nullspace_matrix",
    "nullspace_matrix",
    "rank",
    "solution_space",
    "solve_right",
]

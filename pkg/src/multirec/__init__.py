"""Exact recurrences and differential operators for weighted multinomial sums."""

from .cyclo import Cyclo, ConductorError
from .poly import Poly, poly_gcd, primitive_normalize
from .ratfunc import RatFunc, SpecializationPole
from .matrixops import Matrix, matrix_nullspace, matrix_rank

__all__ = [
    "Cyclo",
    "ConductorError",
    "Poly",
    "poly_gcd",
    "primitive_normalize",
    "RatFunc",
    "SpecializationPole",
    "Matrix",
    "matrix_nullspace",
    "matrix_rank",
]

__version__ = "0.1.0"

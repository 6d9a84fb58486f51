"""Exact scalars, polynomials and linear algebra."""

from .linalg import (
    IrrationalSpectrum,
    Matrix,
    SingularMatrix,
    conjugator,
    echelon,
    jordan_3x3,
    kernel,
    rank_profile,
    sparse_kernel,
    sparse_rank,
    specialize_zero,
)
from .poly import DEFAULT_VARS, ArityError, Poly
from .ratfunc import H, PoleAtZero, RatFunc, as_ratfunc, to_fraction

__all__ = [
    "ArityError",
    "DEFAULT_VARS",
    "H",
    "IrrationalSpectrum",
    "Matrix",
    "PoleAtZero",
    "Poly",
    "RatFunc",
    "SingularMatrix",
    "as_ratfunc",
    "conjugator",
    "echelon",
    "jordan_3x3",
    "kernel",
    "rank_profile",
    "sparse_kernel",
    "sparse_rank",
    "specialize_zero",
    "to_fraction",
]

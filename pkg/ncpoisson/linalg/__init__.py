"""
Exact rational linear algebra for ncpoisson
"""

from ncpoisson.linalg.matrix import (
    MatrixQ,
    Vector,
    kernel_basis,
    rank,
    reduced_basis,
    solve,
    generalized_eigenspace,
    span_rank,
)
from ncpoisson.linalg.poly import UniPolyQ, RationalRoots, char_poly, char_poly_factors, rational_roots
from ncpoisson.linalg.echelon import EchelonSpan

__all__ = [
    "MatrixQ",
    "Vector",
    "kernel_basis",
    "rank",
    "reduced_basis",
    "solve",
    "generalized_eigenspace",
    "span_rank",
    "UniPolyQ",
    "RationalRoots",
    "char_poly",
    "char_poly_factors",
    "rational_roots",
    "EchelonSpan",
]

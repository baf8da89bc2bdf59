"""
ncpoisson - Exact computations in non-commutative Poisson algebras
"""

__version__ = "0.1.0"
__author__ = "ncpoisson Team"

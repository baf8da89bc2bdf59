"""
Tensor products of algebras of the same class
"""

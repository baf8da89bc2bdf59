"""
Tests for exact linear algebra over the rationals
"""

import random
from fractions import Fraction

import pytest

from ncpoisson.exceptions import DimensionError, ZeroPolynomialError
from ncpoisson.linalg.echelon import EchelonSpan
from ncpoisson.linalg.matrix import (
    MatrixQ,
    generalized_eigenspace,
    kernel_basis,
    rank,
    reduced_basis,
    solve,
    span_rank,
)
from ncpoisson.linalg.poly import UniPolyQ, char_poly, char_poly_factors, rational_roots


def _poly_at_matrix(poly: UniPolyQ, m: MatrixQ) -> MatrixQ:
    total = MatrixQ.zero(m.rows, m.cols)
    power = MatrixQ.identity(m.rows)
    for c in poly.coeffs:
        total = total + power.scaled(c)
        power = power @ m
    return total


class TestMatrixQ:
    """Test cases for MatrixQ"""

    def test_storage_switches_on_density(self):
        """Identity of size 4 is dense, of size 10 sparse"""
        assert MatrixQ.identity(4).storage == "dense"
        assert MatrixQ.identity(10).storage == "sparse"
        assert MatrixQ.identity(10) == MatrixQ.from_rows(MatrixQ.identity(10).to_lists())

    def test_product_and_power(self):
        """Matrix product and power of a nilpotent block"""
        n = MatrixQ.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert not (n ** 2).is_zero()
        assert (n ** 3).is_zero()
        assert (n @ MatrixQ.identity(3)) == n

    def test_shape_errors(self):
        """Incompatible shapes raise DimensionError"""
        a = MatrixQ.from_rows([[1, 2, 3]])
        with pytest.raises(DimensionError):
            a @ a
        with pytest.raises(DimensionError):
            a.apply([1, 2])
        with pytest.raises(DimensionError):
            MatrixQ.from_rows([[1, 2], [3]])
        with pytest.raises(DimensionError):
            generalized_eigenspace(a, 0, 1)


class TestElimination:
    """Test cases for kernels, ranks and solving"""

    def test_kernel_of_rank_one(self):
        """[[1,2],[2,4]] has a one-dimensional kernel"""
        m = MatrixQ.from_rows([[1, 2], [2, 4]])
        kernel = kernel_basis(m)
        assert len(kernel) == 1
        assert m.apply(kernel[0]) == [0, 0]
        assert rank(m) == 1

    def test_kernel_random(self):
        """Kernel vectors are annihilated and rank + nullity = cols"""
        rng = random.Random(7)
        for _ in range(20):
            rows, cols = rng.randint(1, 5), rng.randint(1, 6)
            m = MatrixQ.from_rows([[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)])
            kernel = kernel_basis(m)
            assert rank(m) + len(kernel) == cols
            for v in kernel:
                assert all(x == 0 for x in m.apply(v))

    def test_solve(self):
        """Consistent systems are solved, inconsistent ones give None"""
        m = MatrixQ.from_rows([[1, 1], [1, -1]])
        assert solve(m, [3, 1]) == [2, 1]
        singular = MatrixQ.from_rows([[1, 1], [2, 2]])
        assert solve(singular, [1, 3]) is None
        x = solve(singular, [1, 2])
        assert singular.apply(x) == [1, 2]

    def test_rational_entries(self):
        """Fractions survive the fraction-free elimination"""
        m = MatrixQ.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 6)]])
        assert rank(m) == 1
        assert m.apply(kernel_basis(m)[0]) == [0, 0]

    def test_reduced_basis_coordinates(self):
        """Coordinates in a reduced basis are read off at the pivots"""
        vectors = [[1, 2, 0, 1], [0, 1, 1, 0], [1, 3, 1, 1]]
        basis, pivots = reduced_basis(vectors, 4)
        assert len(basis) == 2 == span_rank(vectors, 4)
        target = [2, 5, 1, 2]
        coeffs = [target[p] for p in pivots]
        rebuilt = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(4)]
        assert rebuilt == target

    def test_generalized_eigenspace_of_jordan_block(self):
        """A 2x2 Jordan block has eigenspace 1 and generalized eigenspace 2"""
        j = MatrixQ.from_rows([[2, 1], [0, 2]])
        assert len(generalized_eigenspace(j, 2, 1)) == 1
        assert len(generalized_eigenspace(j, 2, 2)) == 2
        assert generalized_eigenspace(j, 3, 2) == []


class TestPolynomials:
    """Test cases for characteristic polynomials and rational roots"""

    def test_char_poly_triangular(self):
        """det(X - M) of a triangular matrix"""
        m = MatrixQ.from_rows([[2, 1], [0, 3]])
        assert char_poly(m) == UniPolyQ([6, -5, 1])
        assert len(char_poly_factors(m)) == 2

    def test_cayley_hamilton(self):
        """Every random matrix satisfies its characteristic polynomial"""
        rng = random.Random(11)
        for _ in range(10):
            n = rng.randint(1, 5)
            m = MatrixQ.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
            poly = char_poly(m)
            assert poly.degree == n
            assert poly.leading == 1
            assert _poly_at_matrix(poly, m).is_zero()

    def test_rational_roots_with_multiplicity(self):
        """Roots of (X-1)^2 (X-1/2) X"""
        poly = UniPolyQ.from_roots([1, 1, Fraction(1, 2), 0])
        roots = rational_roots(poly)
        assert roots.as_dict() == {Fraction(0): 1, Fraction(1, 2): 1, Fraction(1): 2}
        assert not roots.has_irrational_part

    def test_irrational_remainder(self):
        """X^2 - 2 has no rational root"""
        roots = rational_roots(UniPolyQ([-2, 0, 1]))
        assert roots.roots == ()
        assert roots.remainder_degree == 2
        assert roots.has_irrational_part

    def test_roots_past_trial_division(self):
        """A cofactor 1000003^2 defeats trial division; bracketing still finds both roots"""
        big = 1000003
        roots = rational_roots(UniPolyQ.from_roots([big, 2 * big]))
        assert roots.as_dict() == {Fraction(big): 1, Fraction(2 * big): 1}
        assert not roots.has_irrational_part
        assert roots.exhaustive

    def test_unfinished_search_is_reported(self):
        """X^2 - 2 * 1000003^2 keeps its remainder and is marked not exhaustive"""
        roots = rational_roots(UniPolyQ([-2 * 1000003 ** 2, 0, 1]))
        assert roots.roots == ()
        assert roots.has_irrational_part
        assert not roots.exhaustive

    def test_zero_polynomial(self):
        """The zero polynomial is rejected"""
        with pytest.raises(ZeroPolynomialError):
            rational_roots(UniPolyQ())

    def test_char_poly_non_square(self):
        """Non-square input raises DimensionError"""
        with pytest.raises(DimensionError):
            char_poly(MatrixQ.from_rows([[1, 2, 3], [4, 5, 6]]))

    def test_str(self):
        """Pretty printing in descending degree"""
        assert str(UniPolyQ([6, -5, 1])) == "X^2 - 5*X + 6"
        assert str(UniPolyQ()) == "0"


class TestEchelonSpan:
    """Test cases for EchelonSpan"""

    def setup_method(self):
        """Span over string keys ordered alphabetically"""
        self.span = EchelonSpan(lambda k: k, [{"a": 1, "b": 1}, {"b": 2}])

    def test_add_and_contains(self):
        """Dependent vectors are not added"""
        assert self.span.dim == 2
        assert self.span.add({"a": 3}) is None
        assert self.span.contains({"a": 1})
        assert not self.span.contains({"c": 1})
        assert self.span.add({"c": 1, "a": 1}) == "c"
        assert self.span.dim == 3

    def test_basis_is_reduced(self):
        """No stored vector mentions another leading key"""
        basis = self.span.basis()
        assert basis == [{"a": 1}, {"b": 1}]

    def test_equals_span(self):
        """Span equality ignores the generating vectors"""
        other = EchelonSpan(lambda k: k, [{"a": 1}, {"a": 1, "b": -1}])
        assert self.span.equals_span(other)
        copy = self.span.copy()
        copy.add({"c": 1})
        assert not self.span.equals_span(copy)

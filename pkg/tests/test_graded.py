"""
Tests for symbols in the associated graded algebra
"""

import random

import pytest

from ncpoisson.algebra.element import Element, bracket, generators
from ncpoisson.algebra.spec import class1, symplectic, weyl
from ncpoisson.exceptions import AlgebraMismatchError, ZeroElementError
from ncpoisson.graded.symbols import (
    GradedElement,
    gr_add,
    gr_bracket,
    gr_commutative,
    gr_mul,
    graded_bracket_symbol,
    symbol,
)

from tests.helpers import random_element


class TestSymbols:
    """Test cases for symbol and the graded operations"""

    def setup_method(self):
        """A_1 generators"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)

    def test_symbol_takes_top_part(self):
        """p^2 q + q has symbol p^2 q in degree 3"""
        s = symbol(self.p ** 2 * self.q + self.q)
        assert s.degree == 3
        assert s.representative == self.p ** 2 * self.q

    def test_symbol_of_zero(self):
        """The zero element has no symbol"""
        with pytest.raises(ZeroElementError):
            symbol(Element.zero(self.a1))

    def test_representative_must_be_homogeneous(self):
        """A mixed-degree representative is rejected"""
        with pytest.raises(ValueError):
            GradedElement(1, self.p + 1)

    def test_gr_mul_is_commutative(self):
        """qp and pq have the same symbol"""
        a, b = symbol(self.p), symbol(self.q)
        assert gr_mul(a, b) == gr_mul(b, a)
        assert gr_mul(a, b).degree == 2

    def test_gr_add(self):
        """Addition within one degree"""
        total = gr_add(symbol(self.p), symbol(self.q))
        assert total.representative == self.p + self.q
        with pytest.raises(ValueError):
            gr_add(symbol(self.p), symbol(self.p * self.q))

    def test_induced_bracket_vanishes(self):
        """gr A_1 is commutative: the degree i+j-1 component of {p, q} is 0"""
        assert gr_bracket(symbol(self.p), symbol(self.q)).is_zero()
        assert gr_bracket(symbol(self.p ** 2), symbol(self.q ** 2)).is_zero()

    def test_graded_bracket_symbol(self):
        """The degree i+j-2 component is the classical Poisson bracket"""
        value = graded_bracket_symbol(symbol(self.p), symbol(self.q))
        assert value.degree == 0
        assert value.representative == -1
        value = graded_bracket_symbol(symbol(self.p ** 2), symbol(self.q))
        assert value.representative == -2 * self.p

    def test_mismatch(self):
        """Graded operands from different algebras"""
        x = generators(symplectic(1))[0]
        with pytest.raises(AlgebraMismatchError):
            gr_mul(symbol(self.p), symbol(x))


class TestGrCommutative:
    """Test cases for the gr-commutativity certificate"""

    @pytest.mark.parametrize("algebra", [weyl(1), weyl(2), symplectic(1)], ids=str)
    def test_commutative(self, algebra):
        """Bernstein filtrations give commutative gr"""
        certificate = gr_commutative(algebra, 3)
        assert certificate.commutative
        assert certificate.delta == 2
        assert certificate.counterexample is None
        assert certificate.pairs_checked > 0

    @pytest.mark.parametrize("algebra", [weyl(1), weyl(2), symplectic(1)], ids=str)
    def test_bracket_drops_degree(self, algebra):
        """With commutative gr, deg {a, b} <= deg a + deg b - 1 on random samples"""
        assert gr_commutative(algebra, 3).commutative
        rng = random.Random(29)
        for _ in range(60):
            a, b = random_element(rng, algebra, 4), random_element(rng, algebra, 4)
            if a.is_zero() or b.is_zero():
                continue
            assert bracket(a, b).degree <= a.degree + b.degree - 1

    def test_degree_preserving_bracket(self):
        """{x, y} = x^2 keeps the degree, so gr is not commutative"""
        alg = class1(1, {(0, 1): {(2, 0): 1}})
        certificate = gr_commutative(alg, 2)
        assert not certificate.commutative
        x, y = generators(alg)
        assert certificate.counterexample == (x, y)

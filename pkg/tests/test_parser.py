"""
Tests for the expression parser and algebra strings
"""

import random
from fractions import Fraction

import pytest

from ncpoisson.algebra.element import Element, format_element, generators
from ncpoisson.algebra.spec import symplectic, weyl
from ncpoisson.cli.commands import parse_algebra
from ncpoisson.cli.parser import parse_element, parse_value
from ncpoisson.exceptions import NCPoissonError, ParseError
from ncpoisson.localization.localized import LocElement, format_loc

from tests.helpers import random_element


class TestParseElement:
    """Test cases for parse_element"""

    def setup_method(self):
        """A_1 and A_2"""
        self.a1 = weyl(1)
        self.a2 = weyl(2)

    def test_normal_ordering(self):
        """q*p normal-orders to p*q + 1"""
        x = parse_element("q*p", self.a1)
        p, q = generators(self.a1)
        assert x == p * q + 1
        assert format_element(x) == "p*q + 1"

    def test_precedence(self):
        """'^' binds tighter than '*', which binds tighter than '+'"""
        p, q = generators(self.a1)
        assert parse_element("2*p^2 + q", self.a1) == (p ** 2).scaled(2) + q
        assert parse_element("-p^2", self.a1) == -(p ** 2)
        assert parse_element("(p + q)^2", self.a1) == (p + q) * (p + q)
        assert parse_element("1/2*p - 3/4", self.a1) == p.scaled(Fraction(1, 2)) - Fraction(3, 4)

    def test_indexed_generators(self):
        """p2 and q1 address the second and first pairs"""
        p1, p2, q1, q2 = generators(self.a2)
        assert parse_element("p2*q1 - q2", self.a2) == p2 * q1 - q2

    def test_tensor_products(self):
        """ox(a, b) embeds both factors"""
        ctx = parse_algebra("tensor(weyl:1,weyl:1)")
        p1, p2, q1, q2 = generators(ctx.algebra)
        x = parse_element("ox(p, q) + ox(1, p*q)", ctx)
        assert x == p1 * q2 + p2 * q2

    def test_round_trip(self):
        """Printing then parsing gives the element back"""
        rng = random.Random(3)
        for alg in (self.a1, self.a2, symplectic(2)):
            for _ in range(25):
                x = random_element(rng, alg)
                assert parse_element(format_element(x), alg) == x

    @pytest.mark.parametrize("source,message", [
        ("p q", "products need an explicit '*'"),
        ("p^q", "exponent must be a natural number"),
        ("p^2^2", "chained exponents need parentheses"),
        ("", "empty expression"),
        ("p/0", "unexpected"),
        ("1/0", "zero denominator"),
        ("z", "unknown name"),
        ("p3", "out of range"),
        ("x", "does not belong"),
        ("(p + q", "expected ')'"),
    ])
    def test_errors(self, source, message):
        """Malformed input raises ParseError with a readable message"""
        with pytest.raises(ParseError) as info:
            parse_element(source, self.a2 if source == "p3" else self.a1)
        assert message in str(info.value)

    def test_error_position(self):
        """Errors carry the 1-based line and column"""
        with pytest.raises(ParseError) as info:
            parse_element("p +\n * q", self.a1)
        assert (info.value.line, info.value.column) == (2, 2)

    def test_ox_needs_tensor(self):
        """ox outside a tensor algebra is an error"""
        with pytest.raises(ParseError):
            parse_element("ox(p, q)", self.a1)


class TestLocalizedParsing:
    """Test cases for inv(...) in localized algebras"""

    def setup_method(self):
        """sympoly:1 with y inverted"""
        self.ctx = parse_algebra("sympoly:1@loc=y")

    def test_inverse(self):
        """inv(y)^2 is 1/y^2"""
        value = parse_value("x*inv(y)^2", self.ctx)
        assert isinstance(value, LocElement)
        assert value.exp == 2
        assert format_loc(value) == "x*inv(y)^2"

    def test_cancellation(self):
        """y*inv(y) is 1"""
        value = parse_value("y*inv(y)", self.ctx)
        assert value.exp == 0
        assert value.numerator == 1

    def test_not_invertible(self):
        """Only constants times powers of y are inverted"""
        with pytest.raises(ParseError):
            parse_value("inv(x)", self.ctx)

    def test_polynomial_expected(self):
        """parse_element rejects leftover denominators"""
        with pytest.raises(ParseError):
            parse_element("inv(y)", self.ctx)
        assert parse_element("y^2*inv(y)", self.ctx) == generators(self.ctx.algebra)[1]


class TestParseAlgebra:
    """Test cases for algebra strings"""

    @pytest.mark.parametrize("text,label", [
        ("weyl:1", "weyl:1"),
        ("weyl:3", "weyl:3"),
        ("sympoly:2", "sympoly:2"),
        (" sympoly:1 ", "sympoly:1"),
    ])
    def test_plain(self, text, label):
        """weyl:n and sympoly:n"""
        assert parse_algebra(text).label == label

    def test_tensor(self):
        """tensor(A,B) has both factors"""
        ctx = parse_algebra("tensor(sympoly:1, sympoly:1)")
        assert ctx.tensor is not None
        assert ctx.algebra.n_vars == 4

    @pytest.mark.parametrize("text", [
        "weyl:0",
        "weyl",
        "heisenberg:1",
        "tensor(weyl:1)",
        "tensor(weyl:1,sympoly:1)",
        "tensor(tensor(weyl:1,weyl:1),weyl:1)",
        "tensor(weyl:1,weyl:1)@loc=p1",
        "weyl:1@loc=p",
    ])
    def test_invalid(self, text):
        """Unknown or unsupported algebra strings are input errors"""
        with pytest.raises(NCPoissonError):
            parse_algebra(text)

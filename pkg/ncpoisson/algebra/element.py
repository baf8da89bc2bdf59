"""
Elements of Class 1 and Class 2 algebras in canonical normal form
"""

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from ncpoisson.algebra.monomials import (
    Mono,
    Terms,
    add_into,
    biderivation_bracket,
    commutative_product,
    order_key,
    partial_derivative,
    scale_terms,
    sorted_terms,
    unit_mono,
    weyl_product,
)
from ncpoisson.algebra.spec import AlgebraSpec
from ncpoisson.exceptions import AlgebraMismatchError
from ncpoisson.utils.helpers import format_rational

NEG_INF = float("-inf")

Scalar = Union[int, Fraction]
Degree = Union[int, float]


class Element:
    """Sparse rational combination of normal-ordered monomials; immutable"""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: AlgebraSpec, terms: Optional[Mapping[Mono, object]] = None):
        self.algebra = algebra
        clean: Terms = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        self._terms = clean
        self._hash: Optional[int] = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, algebra: AlgebraSpec) -> "Element":
        return cls(algebra)

    @classmethod
    def constant(cls, algebra: AlgebraSpec, value: object) -> "Element":
        return cls(algebra, {(0,) * algebra.n_vars: value})

    @classmethod
    def one(cls, algebra: AlgebraSpec) -> "Element":
        return cls.constant(algebra, 1)

    @classmethod
    def generator(cls, algebra: AlgebraSpec, index: int) -> "Element":
        return cls(algebra, {unit_mono(algebra.n_vars, index): 1})

    @classmethod
    def monomial(cls, algebra: AlgebraSpec, mono: Mono, coefficient: object = 1) -> "Element":
        return cls(algebra, {mono: coefficient})

    @classmethod
    def _raw(cls, algebra: AlgebraSpec, terms: Terms) -> "Element":
        # terms already free of zeros
        element = cls.__new__(cls)
        element.algebra = algebra
        element._terms = terms
        element._hash = None
        return element

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[Mono, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Mono, Fraction]]:
        """Terms in ascending monomial order"""
        return sorted_terms(self._terms)

    def __iter__(self) -> Iterator[Tuple[Mono, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, mono: Mono) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.algebra.n_vars, Fraction(0))

    @property
    def degree(self) -> Degree:
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def leading_monomial(self) -> Optional[Mono]:
        if not self._terms:
            return None
        return max(self._terms, key=order_key)

    def homogeneous_part(self, degree: int) -> "Element":
        return Element._raw(self.algebra, {m: c for m, c in self._terms.items() if sum(m) == degree})

    def truncated(self, degree: int) -> "Element":
        """Terms of degree at most ``degree``"""
        return Element._raw(self.algebra, {m: c for m, c in self._terms.items() if sum(m) <= degree})

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: object) -> "Element":
        if isinstance(other, Element):
            if other.algebra != self.algebra:
                raise AlgebraMismatchError(
                    f"operands live in {self.algebra} and {other.algebra}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return Element.constant(self.algebra, other)
        raise TypeError(f"cannot combine Element with {type(other).__name__}")

    def __add__(self, other: object) -> "Element":
        other = self._coerce(other)
        out = dict(self._terms)
        add_into(out, other._terms)
        return Element._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element._raw(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "Element":
        other = self._coerce(other)
        out = dict(self._terms)
        add_into(out, other._terms, Fraction(-1))
        return Element._raw(self.algebra, out)

    def __rsub__(self, other: object) -> "Element":
        return (-self) + other

    def scaled(self, factor: object) -> "Element":
        return Element._raw(self.algebra, scale_terms(self._terms, Fraction(factor)))

    def __mul__(self, other: object) -> "Element":
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.scaled(other)
        return mul(self, self._coerce(other))

    def __rmul__(self, other: object) -> "Element":
        if isinstance(other, (int, Rational)):
            return self.scaled(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "Element":
        if exponent < 0:
            raise ValueError("negative powers are not defined in the algebra")
        result = Element.one(self.algebra)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def bracket(self, other: "Element") -> "Element":
        return bracket(self, other)

    def partial(self, index: int) -> "Element":
        """Formal derivative in one generator (commutative reading of the normal form)"""
        return Element._raw(self.algebra, partial_derivative(self._terms, index))

    # -- identity -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Rational)):
            other = Element.constant(self.algebra, other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self._terms.items())))
        return self._hash

    def __getstate__(self):
        return (self.algebra, self._terms)

    def __setstate__(self, state) -> None:
        self.algebra, self._terms = state
        self._hash = None

    def __repr__(self) -> str:
        return f"Element({self.algebra}, {format_element(self)})"

    def __str__(self) -> str:
        return format_element(self)


def _format_mono(algebra: AlgebraSpec, mono: Mono) -> str:
    factors = []
    for index, e in enumerate(mono):
        if e:
            name = algebra.generator_name(index)
            factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors)


def format_element(x: Element) -> str:
    """Pretty-print in the CLI surface syntax, leading term first"""
    if x.is_zero():
        return "0"
    pieces = []
    for mono, c in sorted_terms(x._terms, descending=True):
        body = _format_mono(x.algebra, mono)
        magnitude = abs(c)
        if not body:
            text = format_rational(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{format_rational(magnitude)}*{body}"
        pieces.append(("-" if c < 0 else "+", text))
    sign, text = pieces[0]
    out = ("-" if sign == "-" else "") + text
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


def _same_algebra(a: Element, b: Element) -> None:
    if a.algebra != b.algebra:
        raise AlgebraMismatchError(f"operands live in {a.algebra} and {b.algebra}")


def mul(a: Element, b: Element) -> Element:
    """Associative product, normal ordered"""
    _same_algebra(a, b)
    if a.algebra.is_weyl:
        return Element._raw(a.algebra, weyl_product(a.algebra.n_pairs, a._terms, b._terms))
    return Element._raw(a.algebra, commutative_product(a._terms, b._terms))


def bracket(a: Element, b: Element) -> Element:
    """Commutator for Class 2, biderivation extension of the table for Class 1"""
    _same_algebra(a, b)
    alg = a.algebra
    if alg.is_weyl:
        out = weyl_product(alg.n_pairs, a._terms, b._terms)
        add_into(out, weyl_product(alg.n_pairs, b._terms, a._terms), Fraction(-1))
        return Element._raw(alg, out)
    return Element._raw(alg, biderivation_bracket(a._terms, b._terms, alg.table_terms))


def ad_power(z: Element, x: Element, m: int) -> Element:
    """ad_z^m(x); m = 0 is the identity"""
    if m < 0:
        raise ValueError("ad power must be non-negative")
    _same_algebra(z, x)
    for _ in range(m):
        if x.is_zero():
            break
        x = bracket(z, x)
    return x


def degree(a: Element) -> Degree:
    """Total degree of the support; -inf for zero"""
    return a.degree


def generators(algebra: AlgebraSpec) -> List[Element]:
    return [Element.generator(algebra, i) for i in range(algebra.n_vars)]

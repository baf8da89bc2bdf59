"""
Symbols in the associated graded algebra gr P = sum of P_i / P_{i-1}.

gr P is never built as an algebra object; a graded element is a degree together
with a homogeneous representative, and the graded operations act on those.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from ncpoisson.algebra.basis import filtered_basis
from ncpoisson.algebra.element import Element, bracket, format_element
from ncpoisson.algebra.spec import AlgebraSpec
from ncpoisson.config import DELTA_INFINITE
from ncpoisson.exceptions import AlgebraMismatchError, ZeroElementError
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class GradedElement:
    degree: int
    representative: Element

    def __post_init__(self):
        for mono, _ in self.representative.items():
            if sum(mono) != self.degree:
                raise ValueError(
                    f"representative {format_element(self.representative)} is not homogeneous of degree {self.degree}"
                )

    @property
    def algebra(self) -> AlgebraSpec:
        return self.representative.algebra

    def is_zero(self) -> bool:
        return self.representative.is_zero()

    def __str__(self) -> str:
        return f"[{format_element(self.representative)}]_{self.degree}"


@dataclass(frozen=True)
class GrCertificate:
    """Outcome of the gr-commutativity test"""

    commutative: bool
    delta: int
    degree_bound: int
    pairs_checked: int
    counterexample: Optional[Tuple[Element, Element]] = None


def symbol(x: Element) -> GradedElement:
    """Class of x in P_d / P_{d-1}, d = degree(x)"""
    if x.is_zero():
        raise ZeroElementError("the zero element has no symbol")
    d = int(x.degree)
    return GradedElement(d, x.homogeneous_part(d))


def _check_pair(a: GradedElement, b: GradedElement) -> None:
    if a.algebra != b.algebra:
        raise AlgebraMismatchError(f"graded operands live in {a.algebra} and {b.algebra}")


def gr_add(a: GradedElement, b: GradedElement) -> GradedElement:
    _check_pair(a, b)
    if a.degree != b.degree:
        raise ValueError(f"cannot add graded pieces of degree {a.degree} and {b.degree}")
    return GradedElement(a.degree, a.representative + b.representative)


def gr_mul(a: GradedElement, b: GradedElement) -> GradedElement:
    _check_pair(a, b)
    d = a.degree + b.degree
    return GradedElement(d, (a.representative * b.representative).homogeneous_part(d))


def gr_bracket(a: GradedElement, b: GradedElement) -> GradedElement:
    """Induced bracket P_i/P_{i-1} x P_j/P_{j-1} -> P_{i+j-1}/P_{i+j-2}"""
    _check_pair(a, b)
    d = a.degree + b.degree - 1
    if d < 0:
        return GradedElement(0, Element.zero(a.algebra))
    return GradedElement(d, bracket(a.representative, b.representative).homogeneous_part(d))


def graded_bracket_symbol(a: GradedElement, b: GradedElement) -> GradedElement:
    """Component of the bracket in degree i + j - delta (the classical Poisson symbol for A_n)"""
    _check_pair(a, b)
    delta = a.algebra.delta
    if delta >= DELTA_INFINITE:
        return GradedElement(a.degree + b.degree, Element.zero(a.algebra))
    d = a.degree + b.degree - delta
    if d < 0:
        return GradedElement(0, Element.zero(a.algebra))
    return GradedElement(d, bracket(a.representative, b.representative).homogeneous_part(d))


def gr_commutative(algebra: AlgebraSpec, degree_bound: int) -> GrCertificate:
    """
    Whether gr P is commutative under the induced bracket.

    The generator-derived drop delta >= 2 decides; every pair of basis monomials
    up to ``degree_bound`` is then bracketed to confirm the bound.
    """
    commutative = algebra.delta >= 2
    monomials = filtered_basis(algebra, degree_bound).elements()
    checked = 0
    for i, a in enumerate(monomials):
        for b in monomials[i + 1:]:
            checked += 1
            value = bracket(a, b)
            if value.is_zero():
                continue
            if value.degree > a.degree + b.degree - 2:
                logger.debug("bracket of %s and %s keeps degree %s", a, b, value.degree)
                return GrCertificate(False, algebra.delta, degree_bound, checked, (a, b))
    return GrCertificate(commutative, algebra.delta, degree_bound, checked)

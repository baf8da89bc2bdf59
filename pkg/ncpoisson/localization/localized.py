"""
P[g^-1] for a commutative Poisson algebra P and one nonzero g.

Elements are fractions u / g^k kept in canonical form: k is minimal, i.e. g does
not divide u when k > 0. Divisibility is decided by division with remainder
against the single divisor g, which is exact for principal ideals.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from ncpoisson.algebra.element import Element, bracket, format_element
from ncpoisson.algebra.monomials import Mono, order_key
from ncpoisson.algebra.spec import AlgebraSpec
from ncpoisson.analysis.adjoint import generator_closure
from ncpoisson.exceptions import AlgebraMismatchError, HypothesisError, LocalizationError
from ncpoisson.linalg.echelon import EchelonSpan
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class LocalizedAlgebra:
    base: AlgebraSpec
    denominator: Element

    def __post_init__(self):
        if self.base.is_weyl:
            raise LocalizationError("only Class 1 algebras are localized")
        if self.denominator.algebra != self.base:
            raise AlgebraMismatchError(f"denominator lives in {self.denominator.algebra}, not {self.base}")
        if self.denominator.is_zero():
            raise LocalizationError("cannot invert zero")

    @property
    def label(self) -> str:
        return f"{self.base}@loc={format_element(self.denominator)}"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class LocElement:
    """numerator / denominator^exp; build through loc_element to stay canonical"""

    algebra: LocalizedAlgebra
    numerator: Element
    exp: int

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: "LocElement") -> "LocElement":
        return loc_add(self, other)

    def __sub__(self, other: "LocElement") -> "LocElement":
        return loc_sub(self, other)

    def __neg__(self) -> "LocElement":
        return loc_neg(self)

    def __mul__(self, other: "LocElement") -> "LocElement":
        return loc_mul(self, other)

    def __pow__(self, exponent: int) -> "LocElement":
        result = loc_embed(self.algebra, Element.one(self.algebra.base))
        for _ in range(exponent):
            result = loc_mul(result, self)
        return result

    def __str__(self) -> str:
        return format_loc(self)



def divide(f: Element, g: Element) -> Tuple[Element, Element]:
    """Quotient and remainder of f by g under the graded monomial order"""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead = g.leading_monomial()
    lead_coeff = g.coefficient(lead)
    quotient: dict = {}
    remainder: dict = {}
    r = f
    while not r.is_zero():
        m = r.leading_monomial()
        c = r.coefficient(m)
        if all(a >= b for a, b in zip(m, lead)):
            shift = tuple(a - b for a, b in zip(m, lead))
            factor = c / lead_coeff
            quotient[shift] = quotient.get(shift, 0) + factor
            r = r - Element.monomial(f.algebra, shift, factor) * g
        else:
            remainder[m] = c
            r = r - Element.monomial(f.algebra, m, c)
    return Element(f.algebra, quotient), Element(f.algebra, remainder)


def exact_quotient(f: Element, g: Element) -> Optional[Element]:
    """f / g when g divides f, else None"""
    quotient, remainder = divide(f, g)
    return quotient if remainder.is_zero() else None


def loc_element(algebra: LocalizedAlgebra, numerator: Element, exp: int = 0) -> LocElement:
    """Canonical numerator / g^exp"""
    if numerator.algebra != algebra.base:
        raise AlgebraMismatchError(f"numerator lives in {numerator.algebra}, not {algebra.base}")
    if exp < 0:
        raise LocalizationError("denominator exponent must be non-negative")
    if numerator.is_zero():
        return LocElement(algebra, numerator, 0)
    while exp > 0:
        quotient = exact_quotient(numerator, algebra.denominator)
        if quotient is None:
            break
        numerator, exp = quotient, exp - 1
    return LocElement(algebra, numerator, exp)


def _same(a: LocElement, b: LocElement) -> LocalizedAlgebra:
    if a.algebra != b.algebra:
        raise LocalizationError(f"{a.algebra} and {b.algebra} invert different elements")
    return a.algebra


def _power(g: Element, k: int) -> Element:
    return g ** k


def loc_embed(algebra: LocalizedAlgebra, x: Element) -> LocElement:
    """x / 1"""
    return loc_element(algebra, x, 0)


def loc_inverse_power(algebra: LocalizedAlgebra, k: int) -> LocElement:
    """1 / g^k"""
    return loc_element(algebra, Element.one(algebra.base), k)


def loc_add(a: LocElement, b: LocElement) -> LocElement:
    alg = _same(a, b)
    k = max(a.exp, b.exp)
    g = alg.denominator
    numerator = a.numerator * _power(g, k - a.exp) + b.numerator * _power(g, k - b.exp)
    return loc_element(alg, numerator, k)


def loc_neg(a: LocElement) -> LocElement:
    return LocElement(a.algebra, -a.numerator, a.exp)


def loc_sub(a: LocElement, b: LocElement) -> LocElement:
    return loc_add(a, loc_neg(b))


def loc_mul(a: LocElement, b: LocElement) -> LocElement:
    alg = _same(a, b)
    return loc_element(alg, a.numerator * b.numerator, a.exp + b.exp)


def loc_bracket(a: LocElement, b: LocElement) -> LocElement:
    """
    {u/s, v/t} = ({u,v} s t - u {s,v} t - v {u,t} s + u v {s,t}) / (s t)^2
    with s = g^ka and t = g^kb.
    """
    alg = _same(a, b)
    g = alg.denominator
    u, v = a.numerator, b.numerator
    s, t = _power(g, a.exp), _power(g, b.exp)
    numerator = (
        bracket(u, v) * s * t
        - u * bracket(s, v) * t
        - v * bracket(u, t) * s
        + u * v * bracket(s, t)
    )
    return loc_element(alg, numerator, 2 * (a.exp + b.exp))


def loc_inverse(x: LocElement) -> LocElement:
    """Inverse of x = c g^j / g^k; any other numerator is not invertible here"""
    alg = x.algebra
    g = alg.denominator
    numerator, j = x.numerator, 0
    if numerator.is_zero():
        raise LocalizationError("cannot invert zero")
    while not numerator.is_constant():
        quotient = exact_quotient(numerator, g)
        if quotient is None:
            raise LocalizationError(
                f"{format_element(x.numerator)} is not a constant times a power of {format_element(g)}"
            )
        numerator, j = quotient, j + 1
    c = numerator.constant_term()
    return loc_element(alg, _power(g, x.exp).scaled(1 / c), j)


def format_loc(x: LocElement) -> str:
    """Surface syntax: numerator * inv(g)^k"""
    body = format_element(x.numerator)
    if x.exp == 0:
        return body
    inverse = f"inv({format_element(x.algebra.denominator)})"
    if x.exp > 1:
        inverse += f"^{x.exp}"
    if x.numerator == 1:
        return inverse
    if len(x.numerator) > 1:
        body = f"({body})"
    return f"{body}*{inverse}"


# -- torsion membership ----------------------------------------------------------

@dataclass(frozen=True)
class ProfileStep:
    exp: int
    numerator_degree: float
    leading_coefficient: Fraction


@dataclass(frozen=True)
class MemberCertificate:
    """The ad_z-orbit of the probe spans a space of dimension orbit_dim"""

    steps: int
    orbit_dim: int
    nilpotent: bool
    predicted_member: bool
    profile: Tuple[ProfileStep, ...]

    @property
    def prediction_agrees(self) -> bool:
        return self.predicted_member


@dataclass(frozen=True)
class NonMemberEvidence:
    profile: Tuple[ProfileStep, ...]
    predicted_member: bool

    @property
    def prediction_agrees(self) -> bool:
        return not self.predicted_member


TorsionResult = Union[MemberCertificate, NonMemberEvidence]


def _step(x: LocElement) -> ProfileStep:
    if x.is_zero():
        return ProfileStep(0, float("-inf"), Fraction(0))
    lead = x.numerator.leading_monomial()
    return ProfileStep(x.exp, x.numerator.degree, x.numerator.coefficient(lead))


def predicted_torsion_member(z: Element, probe: LocElement) -> bool:
    """Membership in P C^-1: no denominator, or g an eigenvector of ad_z"""
    if probe.exp == 0 or probe.is_zero():
        return True
    g = probe.algebra.denominator
    image = bracket(z, g)
    if image.is_zero():
        return True
    lead = g.leading_monomial()
    ratio = image.coefficient(lead) / g.coefficient(lead)
    return image == g.scaled(ratio)


def loc_torsion_check(z: Element, probe: LocElement, iterations: int) -> TorsionResult:
    """
    Iterate ad_z on the probe.

    A zero iterate, or an iterate in the span of the earlier ones (taken over a
    common denominator), certifies a finite-dimensional orbit. Otherwise the
    degree/exponent profile is returned as evidence of an infinite orbit.
    """
    alg = probe.algebra
    if z.algebra != alg.base:
        raise AlgebraMismatchError(f"{z.algebra} is not the base of {alg}")
    if generator_closure(z) is None:
        raise HypothesisError(f"{format_element(z)} is not proven strict (F(z) = P)")
    predicted = predicted_torsion_member(z, probe)
    zl = loc_embed(alg, z)
    g = alg.denominator
    common = probe.exp
    span: EchelonSpan[Mono] = EchelonSpan(order_key)
    profile: List[ProfileStep] = []
    current = probe
    for step in range(iterations + 1):
        profile.append(_step(current))
        if current.is_zero():
            logger.debug("ad_z kills the probe after %d steps", step)
            return MemberCertificate(step, span.dim, True, predicted, tuple(profile))
        if current.exp <= common:
            lifted = current.numerator * _power(g, common - current.exp)
            if span.add(lifted.terms) is None:
                logger.debug("probe orbit closes in dimension %d", span.dim)
                return MemberCertificate(step, span.dim, False, predicted, tuple(profile))
        current = loc_bracket(zl, current)
    logger.debug("probe orbit did not close within %d steps", iterations)
    return NonMemberEvidence(tuple(profile), predicted)

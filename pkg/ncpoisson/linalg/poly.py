"""
Univariate rational polynomials, characteristic polynomials and rational roots
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ncpoisson.exceptions import DimensionError, ZeroPolynomialError
from ncpoisson.linalg.matrix import MatrixQ
from ncpoisson.utils.helpers import format_rational
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

# Trial division stops here; past it, candidates come from numerical root bracketing
TRIAL_DIVISION_LIMIT = 10**6


@dataclass(frozen=True)
class UniPolyQ:
    """Polynomial with rational coefficients in ascending degree"""

    coeffs: Tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[object] = ()):
        values = [Fraction(c) for c in coeffs]
        while values and not values[-1]:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def from_roots(cls, roots: Iterable[object]) -> "UniPolyQ":
        poly = cls([1])
        for r in roots:
            poly = poly * cls([-Fraction(r), 1])
        return poly

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __call__(self, x: object) -> Fraction:
        x = Fraction(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "UniPolyQ") -> "UniPolyQ":
        if self.is_zero() or other.is_zero():
            return UniPolyQ()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPolyQ(out)

    def __add__(self, other: "UniPolyQ") -> "UniPolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [ZERO] * (n - len(self.coeffs))
        b = list(other.coeffs) + [ZERO] * (n - len(other.coeffs))
        return UniPolyQ(x + y for x, y in zip(a, b))

    def __neg__(self) -> "UniPolyQ":
        return UniPolyQ(-c for c in self.coeffs)

    def __sub__(self, other: "UniPolyQ") -> "UniPolyQ":
        return self + (-other)

    def monic(self) -> "UniPolyQ":
        if self.is_zero():
            raise ZeroPolynomialError("the zero polynomial has no monic form")
        lead = self.leading
        return UniPolyQ(c / lead for c in self.coeffs)

    def primitive_integer_coeffs(self) -> List[int]:
        """Integer coefficients with gcd 1 and positive leading coefficient"""
        if self.is_zero():
            raise ZeroPolynomialError("the zero polynomial has no primitive form")
        scale = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * scale) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints

    def deflate(self, root: object) -> "UniPolyQ":
        """Quotient by (X - root); root must be exact"""
        root = Fraction(root)
        out: List[Fraction] = []
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        remainder = out.pop()
        if remainder:
            raise ValueError(f"{format_rational(root)} is not a root")
        return UniPolyQ(reversed(out))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if k == 0:
                body = format_rational(mag)
            else:
                power = "X" if k == 1 else f"X^{k}"
                body = power if mag == 1 else f"{format_rational(mag)}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class RationalRoots:
    """Rational roots with multiplicities and the degree of what is left"""

    roots: Tuple[Tuple[Fraction, int], ...]
    remainder_degree: int
    exhaustive: bool = True

    @property
    def has_irrational_part(self) -> bool:
        return self.remainder_degree > 0

    def as_dict(self) -> Dict[Fraction, int]:
        return dict(self.roots)


def _berkowitz(a: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """Characteristic polynomial, descending coefficients, division free"""
    n = len(a)
    poly: List[Fraction] = [ONE]
    for k in range(n):
        col = [ONE, -a[k][k]]
        v = [a[i][k] for i in range(k)]
        for _ in range(k):
            col.append(-sum((a[k][j] * v[j] for j in range(k)), ZERO))
            v = [sum((a[i][j] * v[j] for j in range(k)), ZERO) for i in range(k)]
        new_poly = []
        for i in range(k + 2):
            total = ZERO
            for j in range(min(i, k) + 1):
                if i - j < len(col):
                    total += col[i - j] * poly[j]
            new_poly.append(total)
        poly = new_poly
    return poly


def _strong_blocks(m: MatrixQ) -> List[List[int]]:
    """Index sets of the strongly connected components of the nonzero pattern"""
    n = m.rows
    rows, cols = [], []
    for i in range(n):
        for j in m.row(i):
            rows.append(i)
            cols.append(j)
    pattern = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    count, labels = connected_components(pattern, directed=True, connection="strong")
    blocks: List[List[int]] = [[] for _ in range(count)]
    for index, label in enumerate(labels):
        blocks[int(label)].append(index)
    return blocks


def char_poly_factors(m: MatrixQ) -> List[UniPolyQ]:
    """Characteristic polynomials of the diagonal blocks of m's block-triangular form"""
    if not m.is_square:
        raise DimensionError(f"characteristic polynomial needs a square matrix, got {m.shape}")
    if m.rows == 0:
        return []
    factors = []
    for block in _strong_blocks(m):
        sub = m.submatrix(block, block).to_lists()
        descending = _berkowitz(sub)
        factors.append(UniPolyQ(reversed(descending)))
    logger.debug("char poly of %dx%d split into %d blocks", m.rows, m.cols, len(factors))
    return factors


def char_poly(m: MatrixQ) -> UniPolyQ:
    """det(X I - m) as a monic polynomial"""
    poly = UniPolyQ([1])
    for factor in char_poly_factors(m):
        poly = poly * factor
    return poly


def _divisors(n: int) -> Tuple[List[int], bool]:
    """
    Positive divisors of |n| by trial division, and whether the factorization
    finished; an unsplit cofactor above TRIAL_DIVISION_LIMIT**2 leaves it open.
    """
    n = abs(n)
    if n == 0:
        return [], True
    factors: Dict[int, int] = {}
    rest = n
    d = 2
    limit = min(isqrt(rest), TRIAL_DIVISION_LIMIT)
    while d <= limit and rest > 1:
        while rest % d == 0:
            factors[d] = factors.get(d, 0) + 1
            rest //= d
        d += 1 if d == 2 else 2
        limit = min(isqrt(rest), TRIAL_DIVISION_LIMIT)
    complete = rest <= 1 or isqrt(rest) < d
    if rest > 1:
        factors[rest] = factors.get(rest, 0) + 1
    divisors = [1]
    for prime, power in factors.items():
        divisors = [x * prime**e for x in divisors for e in range(power + 1)]
    return sorted(divisors), complete


def _bracketed_candidates(ints: Sequence[int]) -> List[Fraction]:
    """
    Rationals with denominator dividing the leading coefficient that sit
    next to the real floating-point roots of the polynomial.
    """
    scale = max(abs(c) for c in ints)
    descending = [float(Fraction(c, scale)) for c in reversed(ints)]
    lead = abs(ints[-1])
    candidates = []
    for root in np.roots(descending):
        if abs(root.imag) > 1e-6 * max(1.0, abs(root.real)):
            continue
        approx = Fraction(float(root.real)).limit_denominator(lead)
        if lead % approx.denominator == 0:
            candidates.append(approx)
    return candidates


def rational_roots(p: UniPolyQ) -> RationalRoots:
    """
    Rational roots with multiplicity via the rational root theorem.

    When trial division cannot finish factoring the constant or leading
    coefficient, numpy root approximations supply extra candidates and the
    result is marked as not exhaustive.
    """
    if p.is_zero():
        raise ZeroPolynomialError("the zero polynomial has every root")
    ints = p.primitive_integer_coeffs()
    found: Dict[Fraction, int] = {}
    zero_mult = 0
    complete = True
    while ints and ints[0] == 0:
        ints.pop(0)
        zero_mult += 1
    if zero_mult:
        found[ZERO] = zero_mult
    current = UniPolyQ(ints)
    if current.degree > 0:
        bound = 1 + max(Fraction(abs(c), abs(ints[-1])) for c in ints[:-1])
        numerators, numerators_complete = _divisors(ints[0])
        denominators, denominators_complete = _divisors(ints[-1])
        complete = numerators_complete and denominators_complete
        candidates = set()
        for num in numerators:
            for den in denominators:
                value = Fraction(num, den)
                if value <= bound:
                    candidates.add(value)
                    candidates.add(-value)
        if not complete:
            logger.warning("trial division gave up on a coefficient; bracketing roots numerically")
            candidates.update(_bracketed_candidates(ints))
        for candidate in sorted(candidates):
            mult = 0
            while current.degree > 0 and current(candidate) == 0:
                current = current.deflate(candidate)
                mult += 1
            if mult:
                found[candidate] = mult
    roots = tuple(sorted(found.items()))
    return RationalRoots(roots=roots, remainder_degree=current.degree, exhaustive=complete or current.degree == 0)

"""
Gelfand-Kirillov growth profiles and right algebraic independence probes.

GK dimension is a limsup and cannot be certified from finitely many terms; a
profile reports exact dims of V^n together with slope estimates.
"""

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ncpoisson.algebra.element import Element
from ncpoisson.algebra.monomials import Mono, mono_degree, order_key
from ncpoisson.config import GK_FIT_FRACTION
from ncpoisson.exceptions import AlgebraMismatchError, GeneratorSetError
from ncpoisson.linalg.echelon import EchelonSpan
from ncpoisson.linalg.matrix import MatrixQ, kernel_basis
from ncpoisson.utils.helpers import ensure_directory
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)

PROFILE_COLUMNS = ["n", "dim", "slope"]


@dataclass(frozen=True)
class GrowthProfile:
    generator_set: Tuple[Element, ...]
    dims: Tuple[int, ...]
    slope_estimates: Tuple[Optional[float], ...]
    fitted_slope: Optional[float]

    @property
    def n_max(self) -> int:
        return len(self.dims)

    def to_frame(self) -> pd.DataFrame:
        """One row per n with columns n, dim, slope"""
        return pd.DataFrame(
            {
                "n": list(range(1, self.n_max + 1)),
                "dim": list(self.dims),
                "slope": list(self.slope_estimates),
            },
            columns=PROFILE_COLUMNS,
        )


@dataclass(frozen=True)
class IndependentUpTo:
    i_max: int


@dataclass(frozen=True)
class DependenceWitness:
    """f(X) = sum a_i X^i with f(w) = 0; a_i are in span(B)"""

    coefficients: Tuple[Element, ...]

    def evaluate(self, w: Element) -> Element:
        total = Element.zero(w.algebra)
        power = Element.one(w.algebra)
        for a in self.coefficients:
            total = total + a * power
            power = power * w
        return total


ProbeResult = Union[IndependentUpTo, DependenceWitness]


def _check_generators(gens: Sequence[Element]) -> None:
    if not gens:
        raise GeneratorSetError("generator list is empty")
    algebra = gens[0].algebra
    if any(g.algebra != algebra for g in gens):
        raise AlgebraMismatchError("generators live in different algebras")


def _slope(n: int, dim: int) -> Optional[float]:
    if n < 2 or dim < 1:
        return None
    return math.log(dim) / math.log(n)


def fit_slope(dims: Sequence[int], fraction: Fraction = GK_FIT_FRACTION) -> Optional[float]:
    """Least-squares slope of log dim against log n over the trailing window"""
    points = [(n, d) for n, d in enumerate(dims, start=1) if n >= 2 and d >= 1]
    window = max(2, math.ceil(len(dims) * fraction))
    points = points[-window:]
    if len(points) < 2:
        return None
    x = np.log(np.array([n for n, _ in points], dtype=float))
    y = np.log(np.array([d for _, d in points], dtype=float))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def gk_profile(gens: Sequence[Element], n_max: int) -> GrowthProfile:
    """dim V^n for n = 1..n_max, V = span(gens); 1 is added to V when missing"""
    _check_generators(gens)
    gens = list(gens)
    one = Element.one(gens[0].algebra)
    span: EchelonSpan[Mono] = EchelonSpan(order_key)
    new: List[Element] = []
    for g in gens:
        if span.add(g.terms) is not None:
            new.append(g)
    if span.add(one.terms) is not None:
        logger.warning("1 is not in the span of the generators; adding it")
        gens.append(one)
        new.append(one)
    dims = [span.dim]
    for n in range(2, n_max + 1):
        frontier = []
        for x in new:
            for g in gens:
                product = x * g
                if span.add(product.terms) is not None:
                    frontier.append(product)
        new = frontier
        dims.append(span.dim)
        logger.debug("dim V^%d = %d", n, span.dim)
    slopes = tuple(_slope(n, d) for n, d in enumerate(dims, start=1))
    return GrowthProfile(
        generator_set=tuple(gens),
        dims=tuple(dims),
        slope_estimates=slopes,
        fitted_slope=fit_slope(dims),
    )


def profile_to_csv(profile: GrowthProfile, path: str) -> None:
    """Write the profile as CSV with columns n, dim, slope"""
    ensure_directory(os.path.dirname(os.path.abspath(path)))
    profile.to_frame().to_csv(path, index=False)


def independence_probe(w: Element, b_basis: Sequence[Element], i_max: int) -> ProbeResult:
    """
    Right algebraic independence of w over span(B) up to degree i_max.

    The columns b * w^i are ordered by i, then by b; the first kernel vector, if
    any, gives the coefficients of a dependence.
    """
    for b in b_basis:
        if b.algebra != w.algebra:
            raise AlgebraMismatchError("probe inputs live in different algebras")
    powers = [Element.one(w.algebra)]
    for _ in range(i_max):
        powers.append(powers[-1] * w)
    rows: Dict[Mono, int] = {}
    columns = []
    for power in powers:
        for b in b_basis:
            col = {}
            for m, c in (b * power).terms.items():
                col[rows.setdefault(m, len(rows))] = c
            columns.append(col)
    kernel = kernel_basis(MatrixQ.from_sparse_columns(columns, len(rows)))
    logger.debug("independence probe: %d columns, kernel dimension %d", len(columns), len(kernel))
    if not kernel:
        return IndependentUpTo(i_max)
    vector = kernel[0]
    width = len(b_basis)
    coefficients = []
    for i in range(i_max + 1):
        a = Element.zero(w.algebra)
        for k, b in enumerate(b_basis):
            c = vector[i * width + k]
            if c:
                a = a + b.scaled(c)
        coefficients.append(a)
    while coefficients and coefficients[-1].is_zero():
        coefficients.pop()
    witness = DependenceWitness(tuple(coefficients))
    if not witness.evaluate(w).is_zero():
        raise ArithmeticError("dependence witness does not vanish")
    return witness


def generated_subalgebra_slice(gens: Sequence[Element], degree_bound: int,
                               slack: Optional[int] = None) -> List[Element]:
    """
    Basis of the degree <= N part of the span of words in gens.

    Words are kept up to degree N + slack (default: the largest generator
    degree) so that cancellations from slightly longer words are seen.
    """
    _check_generators(gens)
    algebra = gens[0].algebra
    if slack is None:
        slack = max((int(g.degree) for g in gens if not g.is_zero()), default=0)
    limit = degree_bound + slack
    span: EchelonSpan[Mono] = EchelonSpan(order_key)
    one = Element.one(algebra)
    span.add(one.terms)
    frontier = [one]
    while frontier:
        following = []
        for x in frontier:
            for g in gens:
                product = x * g
                if product.is_zero() or product.degree > limit:
                    continue
                if span.add(product.terms) is not None:
                    following.append(product)
        frontier = following
    kept = span.basis_where(lambda m: mono_degree(m) <= degree_bound)
    logger.debug("generated subalgebra: %d words spanned, %d of degree <= %d", span.dim, len(kept), degree_bound)
    return [Element(algebra, v) for v in kept]

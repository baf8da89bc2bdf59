"""
Algebra descriptors for Class 1 (polynomial Poisson) and Class 2 (Weyl) algebras
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Mapping, Tuple

from ncpoisson.algebra.monomials import (
    Mono,
    Terms,
    add_into,
    biderivation_bracket,
    freeze_terms,
    top_degree,
    unit_mono,
)
from ncpoisson.config import DELTA_INFINITE
from ncpoisson.exceptions import AlgebraDefinitionError
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)

TableEntry = Tuple[int, int, Tuple[Tuple[Mono, Fraction], ...]]


class AlgebraClass(str, Enum):
    CLASS1 = "Class1"
    CLASS2 = "Class2"


@dataclass(frozen=True)
class AlgebraSpec:
    """
    Immutable descriptor of an algebra on 2n generators.

    ``table`` holds the nonzero generator brackets {g_i, g_j} for i < j; generators
    0..n-1 are p_i (or x_i) and n..2n-1 are q_i (or y_i). For Class 2 the table
    records the commutators of the Weyl relations and the product is normal
    ordering; for Class 1 the product is commutative and the table defines the
    bracket by the biderivation rule. Two descriptors are equal when class, size
    and table agree; ``label`` is only used for display.
    """

    class_tag: AlgebraClass
    n_pairs: int
    table: Tuple[TableEntry, ...]
    delta: int
    label: str = field(default="", compare=False)

    @property
    def n_vars(self) -> int:
        return 2 * self.n_pairs

    @property
    def is_weyl(self) -> bool:
        return self.class_tag is AlgebraClass.CLASS2

    @property
    def letters(self) -> Tuple[str, str]:
        return ("p", "q") if self.is_weyl else ("x", "y")

    def generator_name(self, index: int) -> str:
        letter = self.letters[0] if index < self.n_pairs else self.letters[1]
        if self.n_pairs == 1:
            return letter
        return f"{letter}{index % self.n_pairs + 1}"

    def generator_names(self) -> List[str]:
        return [self.generator_name(i) for i in range(self.n_vars)]

    @cached_property
    def table_terms(self) -> List[Tuple[int, int, Terms]]:
        return [(i, j, dict(terms)) for i, j, terms in self.table]

    def table_entry(self, i: int, j: int) -> Terms:
        """{g_i, g_j} as terms, using antisymmetry for i > j"""
        if i == j:
            return {}
        lo, hi = (i, j) if i < j else (j, i)
        for a, b, terms in self.table:
            if a == lo and b == hi:
                return {m: (c if i < j else -c) for m, c in terms}
        return {}

    def __str__(self) -> str:
        if self.label:
            return self.label
        kind = "weyl" if self.is_weyl else "poisson"
        return f"{kind}:{self.n_pairs}"


def _degree_drop(table: Tuple[TableEntry, ...]) -> int:
    """min over generator pairs of u(g_i) + u(g_j) - u({g_i, g_j})"""
    if not table:
        return DELTA_INFINITE
    return min(2 - top_degree(dict(terms)) for _, _, terms in table)


def _check_jacobi(n_vars: int, table: List[Tuple[int, int, Terms]]) -> None:
    for a, b, c in combinations(range(n_vars), 3):
        total: Terms = {}
        for first, second, third in ((a, b, c), (b, c, a), (c, a, b)):
            inner = _lookup(table, second, third)
            if inner:
                add_into(total, biderivation_bracket({unit_mono(n_vars, first): Fraction(1)}, inner, table))
        if total:
            raise AlgebraDefinitionError(
                f"Jacobi identity fails on generators ({a}, {b}, {c})"
            )


def _lookup(table: List[Tuple[int, int, Terms]], i: int, j: int) -> Terms:
    for a, b, terms in table:
        if (a, b) == (i, j):
            return terms
        if (a, b) == (j, i):
            return {m: -c for m, c in terms.items()}
    return {}


def weyl(n_pairs: int) -> AlgebraSpec:
    """A_n with [q_i, p_i] = 1"""
    if n_pairs < 1:
        raise AlgebraDefinitionError("a Weyl algebra needs at least one pair")
    zero = (0,) * (2 * n_pairs)
    table = tuple((i, n_pairs + i, ((zero, Fraction(-1)),)) for i in range(n_pairs))
    return AlgebraSpec(AlgebraClass.CLASS2, n_pairs, table, _degree_drop(table), label=f"weyl:{n_pairs}")


def symplectic(n_pairs: int) -> AlgebraSpec:
    """K[x_1..x_n, y_1..y_n] with {x_i, y_i} = 1"""
    if n_pairs < 1:
        raise AlgebraDefinitionError("a polynomial Poisson algebra needs at least one pair")
    zero = (0,) * (2 * n_pairs)
    table = tuple((i, n_pairs + i, ((zero, Fraction(1)),)) for i in range(n_pairs))
    return AlgebraSpec(AlgebraClass.CLASS1, n_pairs, table, _degree_drop(table), label=f"sympoly:{n_pairs}")


def class1(n_pairs: int, brackets: Mapping[Tuple[int, int], Mapping[Mono, object]], label: str = "") -> AlgebraSpec:
    """
    Class 1 algebra from generator brackets; missing pairs bracket to zero.

    Raises AlgebraDefinitionError when the table is not antisymmetric, fails Jacobi
    on a generator triple, or raises the total degree.
    """
    n_vars = 2 * n_pairs
    if n_pairs < 1:
        raise AlgebraDefinitionError("a polynomial Poisson algebra needs at least one pair")
    upper: Dict[Tuple[int, int], Terms] = {}
    for (i, j), raw in brackets.items():
        if not (0 <= i < n_vars and 0 <= j < n_vars):
            raise AlgebraDefinitionError(f"generator index out of range in bracket ({i}, {j})")
        terms = {tuple(m): Fraction(c) for m, c in raw.items() if c}
        if any(len(m) != n_vars or min(m, default=0) < 0 for m in terms):
            raise AlgebraDefinitionError(f"bracket ({i}, {j}) has a malformed monomial")
        if i == j:
            if terms:
                raise AlgebraDefinitionError(f"{{g_{i}, g_{i}}} must vanish")
            continue
        key, sign = ((i, j), 1) if i < j else ((j, i), -1)
        signed = {m: sign * c for m, c in terms.items()}
        if key in upper and upper[key] != signed:
            raise AlgebraDefinitionError(f"bracket table is not antisymmetric at {key}")
        upper[key] = signed
    table_terms = [(i, j, t) for (i, j), t in sorted(upper.items()) if t]
    _check_jacobi(n_vars, table_terms)
    table = tuple((i, j, freeze_terms(t)) for i, j, t in table_terms)
    delta = _degree_drop(table)
    if delta < 0:
        raise AlgebraDefinitionError(f"bracket raises the total degree (degree drop {delta})")
    logger.debug("class 1 algebra on %d generators, delta=%d", n_vars, delta)
    return AlgebraSpec(AlgebraClass.CLASS1, n_pairs, table, delta, label=label)

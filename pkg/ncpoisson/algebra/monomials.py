"""
Term-level arithmetic on exponent monomials.

A monomial is a tuple of 2n exponents ordered (p1..pn, q1..qn), or (x1..xn, y1..yn)
for Class 1 algebras. Polynomials are plain ``{mono: Fraction}`` dicts without
zero coefficients. These helpers know nothing about algebra descriptors.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from ncpoisson.utils.helpers import reorder_coefficient

Mono = Tuple[int, ...]
Terms = Dict[Mono, Fraction]


def mono_degree(m: Mono) -> int:
    return sum(m)


def order_key(m: Mono) -> Tuple[int, Tuple[int, ...]]:
    """Graded order: degree first, then p-heavy monomials first within a degree"""
    return (sum(m), tuple(-e for e in m))


def unit_mono(n_vars: int, index: int) -> Mono:
    return tuple(1 if k == index else 0 for k in range(n_vars))


def mono_add(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def monomials_of_degree(n_vars: int, degree: int) -> Iterator[Mono]:
    """All exponent vectors of the given total degree"""
    if n_vars == 0:
        if degree == 0:
            yield ()
        return
    if n_vars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(n_vars - 1, degree - first):
            yield (first,) + rest


def add_into(target: Terms, source: Mapping[Mono, Fraction], factor: Fraction = Fraction(1)) -> None:
    """target += factor * source, dropping cancelled terms"""
    for m, c in source.items():
        value = target.get(m, 0) + factor * c
        if value:
            target[m] = value
        else:
            target.pop(m, None)


def scale_terms(terms: Mapping[Mono, Fraction], factor: Fraction) -> Terms:
    if not factor:
        return {}
    return {m: c * factor for m, c in terms.items()}


def commutative_product(a: Mapping[Mono, Fraction], b: Mapping[Mono, Fraction]) -> Terms:
    out: Terms = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_add(ma, mb)
            value = out.get(m, 0) + ca * cb
            if value:
                out[m] = value
            else:
                out.pop(m, None)
    return out


@lru_cache(maxsize=65536)
def _pair_product(a: int, b: int, c: int, d: int) -> Tuple[Tuple[int, int, int], ...]:
    """p^a q^b * p^c q^d as ((p exp, q exp, coefficient), ...) using q^s p^r reordering"""
    return tuple(
        (a + c - k, b + d - k, reorder_coefficient(b, c, k))
        for k in range(min(b, c) + 1)
    )


@lru_cache(maxsize=65536)
def weyl_mono_product(n_pairs: int, left: Mono, right: Mono) -> Tuple[Tuple[Mono, int], ...]:
    """Normal-ordered product of two Weyl monomials; distinct pairs commute"""
    partial: List[Tuple[List[int], List[int], int]] = [([], [], 1)]
    for i in range(n_pairs):
        expansion = _pair_product(left[i], left[n_pairs + i], right[i], right[n_pairs + i])
        partial = [
            (ps + [pe], qs + [qe], coeff * w)
            for ps, qs, coeff in partial
            for pe, qe, w in expansion
        ]
    return tuple((tuple(ps) + tuple(qs), coeff) for ps, qs, coeff in partial)


def weyl_product(n_pairs: int, a: Mapping[Mono, Fraction], b: Mapping[Mono, Fraction]) -> Terms:
    out: Terms = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            weight = ca * cb
            for m, coeff in weyl_mono_product(n_pairs, ma, mb):
                value = out.get(m, 0) + weight * coeff
                if value:
                    out[m] = value
                else:
                    out.pop(m, None)
    return out


def partial_derivative(terms: Mapping[Mono, Fraction], index: int) -> Terms:
    """Derivative of a commutative polynomial in the variable at ``index``"""
    out: Terms = {}
    for m, c in terms.items():
        e = m[index]
        if e:
            shifted = m[:index] + (e - 1,) + m[index + 1:]
            out[shifted] = out.get(shifted, 0) + c * e
    return {m: c for m, c in out.items() if c}


def biderivation_bracket(
    a: Mapping[Mono, Fraction],
    b: Mapping[Mono, Fraction],
    table: Iterable[Tuple[int, int, Mapping[Mono, Fraction]]],
) -> Terms:
    """
    {a, b} = sum over i < j of T(i, j) * (da/dg_i * db/dg_j - da/dg_j * db/dg_i)
    for an antisymmetric generator table given by its upper-triangle entries.
    """
    da: Dict[int, Terms] = {}
    db: Dict[int, Terms] = {}
    out: Terms = {}
    for i, j, t in table:
        for k in (i, j):
            if k not in da:
                da[k] = partial_derivative(a, k)
                db[k] = partial_derivative(b, k)
        if not ((da[i] and db[j]) or (da[j] and db[i])):
            continue
        cross: Terms = {}
        add_into(cross, commutative_product(da[i], db[j]))
        add_into(cross, commutative_product(da[j], db[i]), Fraction(-1))
        if cross:
            add_into(out, commutative_product(cross, t))
    return out


def top_degree(terms: Mapping[Mono, Fraction]) -> int:
    return max(sum(m) for m in terms) if terms else -1


def sorted_terms(terms: Mapping[Mono, Fraction], descending: bool = False) -> List[Tuple[Mono, Fraction]]:
    return sorted(terms.items(), key=lambda item: order_key(item[0]), reverse=descending)


def freeze_terms(terms: Mapping[Mono, Fraction]) -> Tuple[Tuple[Mono, Fraction], ...]:
    return tuple(sorted_terms(terms))

"""
Shared generators for the property tests
"""

import random
from fractions import Fraction

from ncpoisson.algebra.element import Element
from ncpoisson.algebra.spec import AlgebraSpec


def random_element(rng: random.Random, algebra: AlgebraSpec, max_degree: int = 4, max_terms: int = 3) -> Element:
    """Sparse random element with small rational coefficients"""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_degree)
        mono = [0] * algebra.n_vars
        for _ in range(d):
            mono[rng.randrange(algebra.n_vars)] += 1
        terms[tuple(mono)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return Element(algebra, terms)

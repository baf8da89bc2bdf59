"""
Monomial bases of the degree filtration slices P_{<=N}
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from ncpoisson.algebra.element import Element
from ncpoisson.algebra.monomials import Mono, monomials_of_degree, order_key
from ncpoisson.algebra.spec import AlgebraSpec
from ncpoisson.exceptions import OutOfSliceError
from ncpoisson.utils.helpers import monomial_count


@dataclass(frozen=True)
class FilteredBasis:
    """Ordered monomial basis of P_{<=N} with its index map"""

    algebra: AlgebraSpec
    degree_bound: int
    monomials: Tuple[Mono, ...]
    index: Dict[Mono, int]

    def __len__(self) -> int:
        return len(self.monomials)

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def position(self, mono: Mono) -> int:
        return self.index[mono]

    def element(self, position: int) -> Element:
        return Element.monomial(self.algebra, self.monomials[position])

    def elements(self) -> List[Element]:
        return [Element.monomial(self.algebra, m) for m in self.monomials]

    def degree_prefix(self, degree: int) -> int:
        """Number of basis monomials of degree <= ``degree``"""
        return monomial_count(min(degree, self.degree_bound), self.algebra.n_vars)


@lru_cache(maxsize=64)
def filtered_basis(algebra: AlgebraSpec, degree_bound: int) -> FilteredBasis:
    """Basis of P_{<=N} in ascending graded order"""
    if degree_bound < 0:
        raise OutOfSliceError(f"degree bound must be non-negative, got {degree_bound}")
    monos: List[Mono] = []
    for d in range(degree_bound + 1):
        monos.extend(sorted(monomials_of_degree(algebra.n_vars, d), key=order_key))
    return FilteredBasis(
        algebra=algebra,
        degree_bound=degree_bound,
        monomials=tuple(monos),
        index={m: k for k, m in enumerate(monos)},
    )


def coords(x: Element, basis: FilteredBasis) -> List[Fraction]:
    """Coordinates of x in the basis order"""
    if x.algebra != basis.algebra:
        raise OutOfSliceError(f"element of {x.algebra} against a basis of {basis.algebra}")
    if x.degree > basis.degree_bound:
        raise OutOfSliceError(
            f"element of degree {x.degree} does not fit the degree-{basis.degree_bound} slice"
        )
    vec = [Fraction(0)] * len(basis)
    for m, c in x.terms.items():
        vec[basis.index[m]] = c
    return vec


def element_from_coords(basis: FilteredBasis, vector: Sequence[object]) -> Element:
    return Element(basis.algebra, {basis.monomials[k]: c for k, c in enumerate(vector) if c})

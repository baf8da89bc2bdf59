"""
Incremental reduced echelon form over sparse vectors keyed by sortable labels
"""

from fractions import Fraction
from typing import Callable, Dict, Generic, Hashable, Iterable, List, Mapping, Optional, TypeVar

K = TypeVar("K", bound=Hashable)


class EchelonSpan(Generic[K]):
    """
    Span of sparse vectors kept in reduced echelon form.

    Every stored vector is monic at its leading key (the maximum of its support
    under ``order_key``) and no stored vector mentions another vector's leading
    key. With a degree compatible order, the stored vectors whose leading key
    has degree at most N span the intersection with the degree-N slice.
    """

    def __init__(self, order_key: Callable[[K], object], vectors: Iterable[Mapping[K, object]] = ()):
        self._order_key = order_key
        self._pivots: Dict[K, Dict[K, Fraction]] = {}
        for vector in vectors:
            self.add(vector)

    def reduce(self, vector: Mapping[K, object]) -> Dict[K, Fraction]:
        """Remainder of vector after eliminating every pivot key"""
        v = {k: Fraction(c) for k, c in vector.items() if c}
        for key in [k for k in v if k in self._pivots]:
            factor = v.get(key)
            if not factor:
                continue
            for k, c in self._pivots[key].items():
                value = v.get(k, 0) - factor * c
                if value:
                    v[k] = value
                else:
                    v.pop(k, None)
        return v

    def add(self, vector: Mapping[K, object]) -> Optional[K]:
        """Insert a vector; returns its new leading key, or None if already spanned"""
        v = self.reduce(vector)
        if not v:
            return None
        lead = max(v, key=self._order_key)
        scale = v[lead]
        new = {k: c / scale for k, c in v.items()}
        for pivot in self._pivots.values():
            factor = pivot.get(lead)
            if not factor:
                continue
            for k, c in new.items():
                value = pivot.get(k, 0) - factor * c
                if value:
                    pivot[k] = value
                else:
                    pivot.pop(k, None)
        self._pivots[lead] = new
        return lead

    def contains(self, vector: Mapping[K, object]) -> bool:
        return not self.reduce(vector)

    def __contains__(self, vector: Mapping[K, object]) -> bool:
        return self.contains(vector)

    def leading_keys(self) -> List[K]:
        return sorted(self._pivots, key=self._order_key)

    def basis(self) -> List[Dict[K, Fraction]]:
        """Stored vectors in ascending order of leading key"""
        return [dict(self._pivots[k]) for k in self.leading_keys()]

    def basis_where(self, predicate: Callable[[K], bool]) -> List[Dict[K, Fraction]]:
        """Stored vectors whose leading key satisfies predicate"""
        return [dict(self._pivots[k]) for k in self.leading_keys() if predicate(k)]

    @property
    def dim(self) -> int:
        return len(self._pivots)

    def __len__(self) -> int:
        return len(self._pivots)

    def copy(self) -> "EchelonSpan[K]":
        other: EchelonSpan[K] = EchelonSpan(self._order_key)
        other._pivots = {k: dict(v) for k, v in self._pivots.items()}
        return other

    def equals_span(self, other: "EchelonSpan[K]") -> bool:
        if self.dim != other.dim:
            return False
        return all(other.contains(v) for v in self._pivots.values())

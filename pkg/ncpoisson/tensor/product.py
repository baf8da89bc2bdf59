"""
P1 (x) P2 realised inside one combined algebra.

The combined generator list is (left p-block, right p-block, left q-block, right
q-block), so the tensor of A_m and A_n is literally A_{m+n} and cross brackets
vanish. Tensor elements are ordinary elements of the combined algebra.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from ncpoisson.algebra.element import NEG_INF, Degree, Element
from ncpoisson.algebra.monomials import Mono, Terms
from ncpoisson.algebra.spec import AlgebraSpec, class1, weyl
from ncpoisson.exceptions import AlgebraMismatchError

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class TensorAlgebraSpec:
    left: AlgebraSpec
    right: AlgebraSpec
    combined: AlgebraSpec

    @property
    def label(self) -> str:
        return f"tensor({self.left},{self.right})"

    def factor(self, side: str) -> AlgebraSpec:
        if side == LEFT:
            return self.left
        if side == RIGHT:
            return self.right
        raise ValueError(f"side must be '{LEFT}' or '{RIGHT}', got {side!r}")

    def embed_index(self, side: str, index: int) -> int:
        """Position of a factor generator in the combined generator list"""
        m, n = self.left.n_pairs, self.right.n_pairs
        if side == LEFT:
            return index if index < m else n + index
        if side == RIGHT:
            return m + index if index < n else 2 * m + index
        raise ValueError(f"side must be '{LEFT}' or '{RIGHT}', got {side!r}")

    def embed_mono(self, side: str, mono: Mono) -> Mono:
        out = [0] * self.combined.n_vars
        for index, e in enumerate(mono):
            if e:
                out[self.embed_index(side, index)] = e
        return tuple(out)

    def split_mono(self, mono: Mono) -> Tuple[Mono, Mono]:
        m, n = self.left.n_pairs, self.right.n_pairs
        left = mono[:m] + mono[m + n:2 * m + n]
        right = mono[m:m + n] + mono[2 * m + n:]
        return left, right


def _reindex_terms(spec: TensorAlgebraSpec, side: str, terms: Terms) -> Terms:
    return {spec.embed_mono(side, m): c for m, c in terms.items()}


def tensor_algebra(left: AlgebraSpec, right: AlgebraSpec) -> TensorAlgebraSpec:
    """Combined algebra of two factors of the same class"""
    if left.class_tag != right.class_tag:
        raise AlgebraMismatchError(
            f"tensor factors must share a class, got {left.class_tag.value} and {right.class_tag.value}"
        )
    m, n = left.n_pairs, right.n_pairs
    label = f"tensor({left},{right})"
    if left.is_weyl:
        combined = weyl(m + n)
        combined = AlgebraSpec(combined.class_tag, combined.n_pairs, combined.table, combined.delta, label=label)
        return TensorAlgebraSpec(left, right, combined)
    draft = TensorAlgebraSpec(left, right, weyl(m + n))
    table: Dict[Tuple[int, int], Terms] = {}
    for side, factor in ((LEFT, left), (RIGHT, right)):
        for i, j, terms in factor.table_terms:
            key = (draft.embed_index(side, i), draft.embed_index(side, j))
            table[key] = _reindex_terms(draft, side, terms)
    return TensorAlgebraSpec(left, right, class1(m + n, table, label=label))


def tensor_embed(spec: TensorAlgebraSpec, side: str, x: Element) -> Element:
    """x (x) 1 or 1 (x) x"""
    if x.algebra != spec.factor(side):
        raise AlgebraMismatchError(f"{x.algebra} is not the {side} factor {spec.factor(side)}")
    return Element(spec.combined, _reindex_terms(spec, side, x.terms))


def tensor_elem(spec: TensorAlgebraSpec, a: Element, b: Element) -> Element:
    """a (x) b"""
    return tensor_embed(spec, LEFT, a) * tensor_embed(spec, RIGHT, b)


def build_theta(spec: TensorAlgebraSpec, z1: Element, z2: Element) -> Element:
    """z1 (x) z2"""
    return tensor_elem(spec, z1, z2)


def build_gamma(spec: TensorAlgebraSpec, z1: Element, z2: Element) -> Element:
    """z1 (x) 1 + 1 (x) z2"""
    return tensor_embed(spec, LEFT, z1) + tensor_embed(spec, RIGHT, z2)


def factor_degrees(spec: TensorAlgebraSpec, t: Element) -> Tuple[Degree, Degree]:
    """
    Smallest (n1, n2) with t in (P1)_{n1} (x) P2 and in P1 (x) (P2)_{n2}.
    Read off the exponent blocks; the zero element gives (-inf, -inf).
    """
    if t.algebra != spec.combined:
        raise AlgebraMismatchError(f"{t.algebra} is not {spec.combined}")
    if t.is_zero():
        return NEG_INF, NEG_INF
    u1 = u2 = 0
    for mono, _ in t.items():
        left, right = spec.split_mono(mono)
        u1 = max(u1, sum(left))
        u2 = max(u2, sum(right))
    return u1, u2

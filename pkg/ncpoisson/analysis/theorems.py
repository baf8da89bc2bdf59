"""
Slice-level checks of the tensor-product, filtration and centralizer results.

Each check computes both sides inside P_{<=N} of the relevant algebra and
compares spans exactly. A passing check is evidence on the slice, not a proof.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ncpoisson.algebra.element import Element, bracket
from ncpoisson.algebra.homomorphism import hom_apply
from ncpoisson.algebra.monomials import Mono, mono_degree, order_key
from ncpoisson.analysis.adjoint import (
    centralizer_basis,
    eigenspace_slice_basis,
    f_slice_basis,
    generalized_slice_basis,
    invariant_slice,
    is_central,
    nil_bases,
)
from ncpoisson.analysis.classify import TypeLabel, TypeVerdict, classify
from ncpoisson.config import default_iterations
from ncpoisson.exceptions import HypothesisError
from ncpoisson.graded.symbols import gr_commutative
from ncpoisson.growth.gk import generated_subalgebra_slice
from ncpoisson.linalg.echelon import EchelonSpan
from ncpoisson.linalg.poly import char_poly_factors, rational_roots
from ncpoisson.tensor.product import TensorAlgebraSpec, build_gamma, build_theta, tensor_elem
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)

THEOREM_KINDS = ("theta_F", "theta_N", "gamma_F", "gamma_N", "gamma_lambda", "gamma_D")


@dataclass(frozen=True)
class TensorCheckReport:
    kind: str
    degree_bound: int
    lhs_dim: int
    rhs_dim: int
    spans_equal: bool
    value: Optional[Fraction] = None
    notes: Tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return self.spans_equal


@dataclass(frozen=True)
class CentralizerCheck:
    degree_bound: int
    centralizer_dim: int
    generated_dim: int
    spans_equal: bool


@dataclass(frozen=True)
class NilFiltrationCheck:
    degree_bound: int
    dims_x: Tuple[int, ...]
    dims_y: Tuple[int, ...]
    spans_equal: Tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return all(self.spans_equal)


@dataclass(frozen=True)
class InvarianceCheck:
    """Labels of z and of its image under an automorphism"""

    before: TypeVerdict
    after: TypeVerdict

    @property
    def agree(self) -> bool:
        return self.before.label is self.after.label


def span_of(elements: Sequence[Element]) -> EchelonSpan[Mono]:
    return EchelonSpan(order_key, [e.terms for e in elements])


def _cut(span: EchelonSpan[Mono], degree_bound: int) -> EchelonSpan[Mono]:
    return EchelonSpan(order_key, span.basis_where(lambda m: mono_degree(m) <= degree_bound))


def _graded_products(spec: TensorAlgebraSpec, left_at: Callable[[int], Sequence[Element]],
                     right_at: Callable[[int], Sequence[Element]], degree_bound: int) -> List[Element]:
    """
    Sum over i + j <= N of X1(i) (x) X2(j), where X(b) is a factor basis
    computed on P_{<=b}.

    Every factor basis used here grows with its bound, so pairing bound i
    with bound N - i covers all compatible pairs.
    """
    out = []
    for i in range(degree_bound + 1):
        right = right_at(degree_bound - i)
        if right:
            out.extend(tensor_elem(spec, a, b) for a in left_at(i) for b in right)
    return out


def _compare(kind: str, lhs: Sequence[Element], rhs: Sequence[Element], degree_bound: int,
             value: Optional[Fraction] = None, notes: Sequence[str] = ()) -> TensorCheckReport:
    left = _cut(span_of(lhs), degree_bound)
    right = _cut(span_of(rhs), degree_bound)
    equal = left.equals_span(right)
    logger.debug("%s at N=%d: lhs %d, rhs %d, equal %s", kind, degree_bound, left.dim, right.dim, equal)
    return TensorCheckReport(kind, degree_bound, left.dim, right.dim, equal, value, tuple(notes))


def _compare_inside(kind: str, lhs: Sequence[Element], rhs: Sequence[Element],
                    degree_bound: int) -> TensorCheckReport:
    """Compare span(lhs) with span(rhs) ∩ span(lhs): lhs must lie in span(rhs)"""
    left = _cut(span_of(lhs), degree_bound)
    right = _cut(span_of(rhs), degree_bound)
    total = right.copy()
    for v in left.basis():
        total.add(v)
    inside = left.dim + right.dim - total.dim
    notes = []
    if inside < right.dim:
        notes.append(f"{right.dim - inside} product directions leave P_<={degree_bound} under ad")
    equal = inside == left.dim
    logger.debug("%s at N=%d: lhs %d, rhs inside lhs %d, equal %s", kind, degree_bound, left.dim, inside, equal)
    return TensorCheckReport(kind, degree_bound, left.dim, inside, equal, None, tuple(notes))


def _nil_slice(z: Element, degree_bound: int, iterations: int) -> Tuple[Element, ...]:
    chain, stabilized = nil_bases(z, degree_bound, iterations)
    if not stabilized:
        logger.warning("ker ad^m of %s did not stabilize for m <= %d", z, iterations)
    return chain[-1]


def _slice_eigenvalues(z: Element, degree_bound: int) -> List[Fraction]:
    values = set()
    for factor in char_poly_factors(invariant_slice(z, degree_bound).restricted):
        values.update(v for v, _ in rational_roots(factor).roots)
    return sorted(values)


def _require_label(verdicts: Sequence[TypeVerdict], labels: Sequence[TypeLabel], what: str) -> None:
    if not any(v.is_proven and v.label in labels for v in verdicts):
        raise HypothesisError(f"no factor is proven to satisfy {what}")


def _by_bound(compute: Callable[[int], Sequence[Element]]) -> Callable[[int], Sequence[Element]]:
    cache: Dict[int, Sequence[Element]] = {}

    def at(bound: int) -> Sequence[Element]:
        if bound not in cache:
            cache[bound] = compute(bound)
        return cache[bound]
    return at


def tensor_theorem_check(kind: str, spec: TensorAlgebraSpec, z1: Element, z2: Element, degree_bound: int,
                         value: object = 0, iterations: Optional[int] = None) -> TensorCheckReport:
    """
    Compare a subalgebra of Θ or Γ with the tensor of the factor subalgebras on P_{<=N}.

    The right-hand side pairs factor bases at compatible bounds i + j <= N. The
    F checks compare inside the invariant subspace of Θ or Γ, since a product of
    degree <= N can have an orbit that leaves the slice.
    """
    if kind not in THEOREM_KINDS:
        raise ValueError(f"unknown check {kind!r}; expected one of {', '.join(THEOREM_KINDS)}")
    if iterations is None:
        iterations = default_iterations(degree_bound)
    n = degree_bound
    lam = Fraction(value)
    nil1 = _by_bound(lambda b: _nil_slice(z1, b, iterations))
    nil2 = _by_bound(lambda b: _nil_slice(z2, b, iterations))

    if kind.startswith("theta"):
        if is_central(z1) or is_central(z2):
            raise HypothesisError("theta checks need both factors noncentral")
        for side in (spec.left, spec.right):
            certificate = gr_commutative(side, n)
            if not certificate.commutative:
                raise HypothesisError(f"gr {side} is not commutative")
        theta = build_theta(spec, z1, z2)
        rhs = _graded_products(spec, nil1, nil2, n)
        if kind == "theta_F":
            return _compare_inside(kind, f_slice_basis(theta, n), rhs, n)
        return _compare(kind, _nil_slice(theta, n, iterations), rhs, n)

    gamma = build_gamma(spec, z1, z2)
    if kind == "gamma_F":
        rhs = _graded_products(spec, _by_bound(lambda b: f_slice_basis(z1, b)),
                               _by_bound(lambda b: f_slice_basis(z2, b)), n)
        return _compare_inside(kind, f_slice_basis(gamma, n), rhs, n)

    if kind == "gamma_N":
        verdicts = [classify(z1, n, iterations), classify(z2, n, iterations)]
        _require_label(verdicts, [TypeLabel.OMEGA_0, TypeLabel.OMEGA_0_WEAK, TypeLabel.OMEGA_1, TypeLabel.OMEGA_1_WEAK],
                       "F = N")
        rhs = _graded_products(spec, nil1, nil2, n)
        return _compare(kind, _nil_slice(gamma, n, iterations), rhs, n)

    if kind == "gamma_D":
        verdicts = [classify(z1, n, iterations), classify(z2, n, iterations)]
        _require_label(verdicts, [TypeLabel.OMEGA_0, TypeLabel.OMEGA_0_WEAK, TypeLabel.OMEGA_2, TypeLabel.OMEGA_2_WEAK],
                       "F = D")
        rhs = []
        for mu in _slice_eigenvalues(z1, n):
            rhs += _graded_products(spec, _by_bound(lambda b, mu=mu: eigenspace_slice_basis(z1, mu, b)),
                                    _by_bound(lambda b, mu=mu: eigenspace_slice_basis(z2, lam - mu, b)), n)
        return _compare(kind, eigenspace_slice_basis(gamma, lam, n), rhs, n, value=lam)

    rhs = []
    notes = []
    for mu in _slice_eigenvalues(z1, n):
        left = generalized_slice_basis(z1, mu, n)
        right = generalized_slice_basis(z2, lam - mu, n)
        if left and right:
            notes.append(f"mu = {mu}: {len(left)} x {len(right)}")
        rhs += _graded_products(spec, _by_bound(lambda b, mu=mu: generalized_slice_basis(z1, mu, b)),
                                _by_bound(lambda b, mu=mu: generalized_slice_basis(z2, lam - mu, b)), n)
    return _compare(kind, generalized_slice_basis(gamma, lam, n), rhs, n, value=lam, notes=notes)


def centralizer_generator_check(z: Element, gens: Sequence[Element], degree_bound: int) -> CentralizerCheck:
    """C(z) on P_{<=N} against the degree <= N part of the subalgebra generated by gens"""
    for g in gens:
        if not bracket(z, g).is_zero():
            raise HypothesisError(f"{g} does not commute with {z}")
    centralizer = span_of(centralizer_basis(z, degree_bound))
    generated = span_of(generated_subalgebra_slice(gens, degree_bound))
    equal = centralizer.equals_span(generated)
    return CentralizerCheck(degree_bound, centralizer.dim, generated.dim, equal)


def nil_filtration_equal(x: Element, y: Element, degree_bound: int, k_max: int) -> NilFiltrationCheck:
    """
    ker ad_x^{k+1} and ker ad_y^{k+1} on P_{<=N} for k = 0..k_max, given that
    C(x) and C(y) agree on the slice.
    """
    if not span_of(centralizer_basis(x, degree_bound)).equals_span(span_of(centralizer_basis(y, degree_bound))):
        raise HypothesisError("C(x) and C(y) differ on the slice")
    chain_x, _ = nil_bases(x, degree_bound, k_max + 1)
    chain_y, _ = nil_bases(y, degree_bound, k_max + 1)
    equal = tuple(span_of(a).equals_span(span_of(b)) for a, b in zip(chain_x, chain_y))
    return NilFiltrationCheck(
        degree_bound=degree_bound,
        dims_x=tuple(len(a) for a in chain_x),
        dims_y=tuple(len(b) for b in chain_y),
        spans_equal=equal,
    )


def shifted_ad_power(z: Element, x: Element, value: object, n: int) -> Element:
    """(ad_z - value)^n (x)"""
    value = Fraction(value)
    for _ in range(n):
        if x.is_zero():
            break
        x = bracket(z, x) - x.scaled(value)
    return x


def binomial_expansion_holds(z: Element, a: Element, b: Element, lam: object, mu: object, n: int) -> bool:
    """(ad_z - lam - mu)^n (ab) = sum_i C(n,i) (ad_z - lam)^i (a) (ad_z - mu)^(n-i) (b)"""
    lam, mu = Fraction(lam), Fraction(mu)
    lhs = shifted_ad_power(z, a * b, lam + mu, n)
    rhs = Element.zero(z.algebra)
    for i in range(n + 1):
        term = shifted_ad_power(z, a, lam, i) * shifted_ad_power(z, b, mu, n - i)
        rhs = rhs + term.scaled(comb(n, i))
    return lhs == rhs


def in_filtration_piece(z: Element, x: Element, value: object, k: int) -> bool:
    """x in F^k(z, value) = ker (ad_z - value)^(k+1)"""
    return shifted_ad_power(z, x, value, k + 1).is_zero()


def filtration_product_holds(z: Element, u: Element, w: Element, lam: object, mu: object, k: int, l: int) -> bool:
    """u in F^k(z, lam) and w in F^l(z, mu) put uw in F^(k+l)(z, lam + mu)"""
    if not (in_filtration_piece(z, u, lam, k) and in_filtration_piece(z, w, mu, l)):
        raise HypothesisError("factors are not in the stated filtration pieces")
    return in_filtration_piece(z, u * w, Fraction(lam) + Fraction(mu), k + l)


def automorphism_invariance(images: Sequence[Element], z: Element, degree_bound: int,
                            iterations: Optional[int] = None) -> InvarianceCheck:
    """Classify z and its image under the map given by generator images"""
    image = hom_apply(images, z)
    bound = max(degree_bound, int(image.degree) if not image.is_zero() else 0)
    return InvarianceCheck(
        before=classify(z, degree_bound, iterations),
        after=classify(image, bound, iterations),
    )

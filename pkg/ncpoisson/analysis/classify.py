"""
Evidence-graded classification of elements into the eight types.

A verdict records four relation statuses (C vs N, N vs F, D vs F, F vs P), the
eigenvalue status and the resulting label. Proper inclusions are only reported as
proven with an explicit witness or a closed finite-dimensional invariant space;
equalities observed on a slice are graded ConsistentUpToBound.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from ncpoisson.algebra.element import Element, bracket, generators
from ncpoisson.analysis.adjoint import (
    GeneratorClosure,
    closure_spectrum,
    generalized_chain,
    generator_closure,
    is_central,
    subspace_bases,
)
from ncpoisson.config import default_degree, default_iterations
from ncpoisson.exceptions import HypothesisError
from ncpoisson.graded.symbols import GrCertificate, gr_commutative
from ncpoisson.linalg.matrix import kernel_basis
from ncpoisson.tensor.product import TensorAlgebraSpec, build_gamma, build_theta
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)

THETA = "theta"
GAMMA = "gamma"


class TypeLabel(str, Enum):
    OMEGA_0 = "Ω0"
    OMEGA_0_WEAK = "Ω0'"
    OMEGA_1 = "Ω1"
    OMEGA_1_WEAK = "Ω1'"
    OMEGA_2 = "Ω2"
    OMEGA_2_WEAK = "Ω2'"
    OMEGA_3 = "Ω3"
    OMEGA_3_WEAK = "Ω3'"
    UNDETERMINED = "Undetermined"

    @property
    def family(self) -> Optional[int]:
        """0 central, 1 nilpotent, 2 semisimple, 3 Jordan"""
        if self is TypeLabel.UNDETERMINED:
            return None
        return int(self.value[1])

    @property
    def is_strict(self) -> bool:
        return self is not TypeLabel.UNDETERMINED and not self.value.endswith("'")

    @classmethod
    def of(cls, family: int, strict: bool) -> "TypeLabel":
        return cls(f"Ω{family}" + ("" if strict else "'"))


class EvidenceGrade(str, Enum):
    PROVEN = "Proven"
    CONSISTENT = "ConsistentUpToBound"


class RelationKind(str, Enum):
    PROVEN_EQUAL = "ProvenEqual"
    EQUAL_ON_SLICE = "ProvenEqualOnSlice"
    PROPER_ON_SLICE = "ProperOnSlice"
    PROVEN_PROPER = "ProvenProper"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RelationStatus:
    kind: RelationKind
    bound_used: Optional[Tuple[int, int]] = None
    witness: Optional[Element] = None
    note: str = ""

    @property
    def is_proper(self) -> bool:
        return self.kind in (RelationKind.PROVEN_PROPER, RelationKind.PROPER_ON_SLICE)

    @property
    def is_equal(self) -> bool:
        return self.kind in (RelationKind.PROVEN_EQUAL, RelationKind.EQUAL_ON_SLICE)

    @property
    def is_proven(self) -> bool:
        return self.kind in (RelationKind.PROVEN_EQUAL, RelationKind.PROVEN_PROPER)

    @property
    def is_known(self) -> bool:
        return self.kind is not RelationKind.UNKNOWN


ONLY_ZERO = "OnlyZeroFound"
NONZERO = "NonzeroWitness"


@dataclass(frozen=True)
class EvStatus:
    kind: str
    value: Optional[Fraction] = None
    witness: Optional[Element] = None
    proven: bool = False

    @property
    def nonzero(self) -> bool:
        return self.kind == NONZERO


@dataclass(frozen=True)
class TypeVerdict:
    element: Optional[Element]
    ev_status: EvStatus
    rel_CN: RelationStatus
    rel_NF: RelationStatus
    rel_DF: RelationStatus
    rel_FP: RelationStatus
    label: TypeLabel
    grade: EvidenceGrade
    bound_used: Optional[Tuple[int, int]] = None
    warnings: Tuple[str, ...] = field(default=())

    @property
    def is_proven(self) -> bool:
        return self.grade is EvidenceGrade.PROVEN and self.label is not TypeLabel.UNDETERMINED

    @property
    def is_central(self) -> bool:
        return self.label is TypeLabel.OMEGA_0

    @property
    def is_strict(self) -> bool:
        return self.label.is_strict

    def proper_cn(self) -> Optional[bool]:
        """C ⊊ N, when the verdict settles it"""
        if self.label in (TypeLabel.OMEGA_1, TypeLabel.OMEGA_1_WEAK):
            return True
        if self.label in (TypeLabel.OMEGA_0, TypeLabel.OMEGA_0_WEAK, TypeLabel.OMEGA_2, TypeLabel.OMEGA_2_WEAK):
            return False
        if self.rel_CN.is_proven:
            return self.rel_CN.is_proper
        return None


def _status(kind: RelationKind, note: str = "", witness: Optional[Element] = None,
            bound: Optional[Tuple[int, int]] = None) -> RelationStatus:
    return RelationStatus(kind=kind, bound_used=bound, witness=witness, note=note)


def label_from_relations(ev: EvStatus, rel_CN: RelationStatus, rel_NF: RelationStatus,
                         rel_DF: RelationStatus, rel_FP: RelationStatus) -> Tuple[TypeLabel, EvidenceGrade]:
    """Read the type table; Undetermined when a needed relation is unknown"""
    if not rel_FP.is_known:
        return TypeLabel.UNDETERMINED, EvidenceGrade.CONSISTENT
    strict = rel_FP.is_equal
    if ev.nonzero:
        if not rel_DF.is_known:
            return TypeLabel.UNDETERMINED, EvidenceGrade.CONSISTENT
        family = 3 if rel_DF.is_proper else 2
        used = (rel_DF, rel_FP)
    else:
        if not rel_CN.is_known:
            return TypeLabel.UNDETERMINED, EvidenceGrade.CONSISTENT
        family = 1 if rel_CN.is_proper else 0
        used = (rel_CN, rel_FP)
    proven = ev.proven and all(r.is_proven for r in used)
    grade = EvidenceGrade.PROVEN if proven else EvidenceGrade.CONSISTENT
    return TypeLabel.of(family, strict), grade


def _gk_warning(z: Element, label: TypeLabel) -> List[str]:
    alg = z.algebra
    if label.family == 3 and alg.is_weyl and alg.n_pairs == 1:
        return ["Jordan-type label in A1, where GK dimension 2 leaves no room for such elements"]
    return []


def _central_verdict(z: Element, bound: Tuple[int, int]) -> TypeVerdict:
    note = "{z, g} = 0 for every generator g"
    equal = _status(RelationKind.PROVEN_EQUAL, note, bound=bound)
    return TypeVerdict(
        element=z,
        ev_status=EvStatus(ONLY_ZERO, proven=True),
        rel_CN=equal, rel_NF=equal, rel_DF=equal, rel_FP=equal,
        label=TypeLabel.OMEGA_0,
        grade=EvidenceGrade.PROVEN,
        bound_used=bound,
    )


def _moving_generator(z: Element) -> Element:
    for g in generators(z.algebra):
        if not bracket(z, g).is_zero():
            return g
    raise ValueError("element is central")


def _closure_verdict(z: Element, closure: GeneratorClosure, bound: Tuple[int, int]) -> Optional[TypeVerdict]:
    """Proven verdict from ad_z on the closed generator space W, or None"""
    roots, irrational = closure_spectrum(closure)
    closed = f"ad_z-orbits of 1 and the generators span a closed space of dimension {closure.dim}"
    if z.degree <= z.algebra.delta:
        closed += "; degree(z) <= delta"
    fp = _status(RelationKind.PROVEN_EQUAL, closed, bound=bound)
    if irrational:
        logger.warning("ad_z on the generator closure has non-rational eigenvalues")
        return None
    matrix = closure.matrix
    nonzero = [(v, mult) for v, mult in roots if v != 0]
    if not nonzero:
        g = _moving_generator(z)
        moving = _status(RelationKind.PROVEN_PROPER, "{z, g} != 0 and ad_z is nilpotent on P", witness=g, bound=bound)
        return TypeVerdict(
            element=z,
            ev_status=EvStatus(ONLY_ZERO, proven=True),
            rel_CN=moving,
            rel_NF=_status(RelationKind.PROVEN_EQUAL, "ad_z nilpotent on the closed space", bound=bound),
            rel_DF=moving,
            rel_FP=fp,
            label=TypeLabel.OMEGA_1,
            grade=EvidenceGrade.PROVEN,
            bound_used=bound,
        )

    value = nonzero[0][0]
    witness = closure.element(kernel_basis(matrix.shifted(value))[0])
    ev = EvStatus(NONZERO, value=value, witness=witness, proven=True)
    nf = _status(RelationKind.PROVEN_PROPER, f"eigenvector for eigenvalue {value}", witness=witness, bound=bound)

    jordan_witness = None
    zero_block_witness = None
    for v, mult in roots:
        chain = generalized_chain(matrix, v, mult, closure.dim)
        if len(chain[0]) == len(chain[-1]):
            continue
        shifted = matrix.shifted(v)
        for vec in chain[1]:
            if any(shifted.apply(vec)):
                candidate = closure.element(vec)
                if jordan_witness is None:
                    jordan_witness = candidate
                if v == 0:
                    zero_block_witness = candidate
                break

    if jordan_witness is None:
        equal = _status(RelationKind.PROVEN_EQUAL, "ad_z diagonalizable on the closed space", bound=bound)
        return TypeVerdict(
            element=z, ev_status=ev,
            rel_CN=equal, rel_NF=nf, rel_DF=equal, rel_FP=fp,
            label=TypeLabel.OMEGA_2, grade=EvidenceGrade.PROVEN, bound_used=bound,
        )

    df = _status(RelationKind.PROVEN_PROPER, "generalized eigenvector outside D(z)", witness=jordan_witness, bound=bound)
    if zero_block_witness is not None:
        cn = _status(RelationKind.PROVEN_PROPER, "ad_z^2 kills it, ad_z does not", witness=zero_block_witness, bound=bound)
    else:
        cn = _status(RelationKind.UNKNOWN, "no Jordan block at 0 on the closed space", bound=bound)
    return TypeVerdict(
        element=z, ev_status=ev,
        rel_CN=cn, rel_NF=nf, rel_DF=df, rel_FP=fp,
        label=TypeLabel.OMEGA_3, grade=EvidenceGrade.PROVEN, bound_used=bound,
    )


def _slice_verdict(z: Element, degree_bound: int, iterations: int) -> TypeVerdict:
    bound = (degree_bound, iterations)
    report = subspace_bases(z, degree_bound, iterations)
    warnings = list(report.warnings)

    nonzero = report.spectrum.nonzero()
    if nonzero:
        first = nonzero[0]
        ev = EvStatus(NONZERO, value=first.value, witness=first.witness, proven=True)
        nf = _status(RelationKind.PROVEN_PROPER, f"eigenvector for eigenvalue {first.value}",
                     witness=first.witness, bound=bound)
    else:
        ev = EvStatus(ONLY_ZERO, proven=False)
        nf = _status(RelationKind.EQUAL_ON_SLICE, "only eigenvalue 0 on the invariant slice", bound=bound)

    c_dim = len(report.c_basis)
    cn = _status(RelationKind.EQUAL_ON_SLICE, "ker ad_z^m = ker ad_z on the slice", bound=bound)
    for m in range(1, report.iterations + 1):
        extra = [x for x in report.n_basis(m) if not bracket(z, x).is_zero()]
        if len(report.n_basis(m)) > c_dim and extra:
            cn = _status(RelationKind.PROVEN_PROPER, f"ad_z^{m} kills it, ad_z does not", witness=extra[0], bound=bound)
            break

    df = _status(RelationKind.EQUAL_ON_SLICE, "ad_z diagonalizable on the invariant slice", bound=bound)
    for value, chain in report.f_bases.items():
        if len(chain[-1]) > len(chain[0]):
            candidates = [x for x in chain[-1] if bracket(z, x) != x.scaled(value)]
            df = _status(RelationKind.PROVEN_PROPER, "generalized eigenvector outside D(z)",
                         witness=candidates[0], bound=bound)
            break
    if report.spectrum.irrational_flag and not df.is_proven:
        df = _status(RelationKind.UNKNOWN, "non-rational spectrum on the invariant slice", bound=bound)
    if ev.nonzero and cn.kind is RelationKind.PROVEN_PROPER and not df.is_proven:
        df = _status(RelationKind.PROVEN_PROPER, "a nonzero eigenvalue together with C ⊊ N forces D ⊊ F", bound=bound)

    if z.degree <= z.algebra.delta:
        fp = _status(RelationKind.PROVEN_EQUAL, "degree(z) <= delta keeps every slice invariant", bound=bound)
    elif report.invariant_dim == report.slice_dim:
        fp = _status(RelationKind.EQUAL_ON_SLICE, "the whole slice is ad_z-invariant", bound=bound)
    else:
        fp = _status(RelationKind.PROPER_ON_SLICE,
                     f"largest invariant subspace has dimension {report.invariant_dim} of {report.slice_dim}",
                     bound=bound)

    label, grade = label_from_relations(ev, cn, nf, df, fp)
    return TypeVerdict(
        element=z, ev_status=ev,
        rel_CN=cn, rel_NF=nf, rel_DF=df, rel_FP=fp,
        label=label, grade=grade, bound_used=bound,
        warnings=tuple(warnings),
    )


def classify(z: Element, degree_bound: Optional[int] = None, iterations: Optional[int] = None) -> TypeVerdict:
    """Type of z with evidence; Undetermined when the statuses leave it open"""
    if degree_bound is None:
        degree_bound = default_degree()
    warnings: List[str] = []
    if not z.is_zero() and degree_bound < z.degree:
        warnings.append(f"degree bound raised from {degree_bound} to degree(z) = {int(z.degree)}")
        degree_bound = int(z.degree)
    if iterations is None:
        iterations = default_iterations(degree_bound)
    bound = (degree_bound, iterations)

    if z.is_constant() or is_central(z):
        verdict = _central_verdict(z, bound)
    else:
        closure = generator_closure(z)
        verdict = _closure_verdict(z, closure, bound) if closure is not None else None
        if verdict is not None and verdict.rel_CN.kind is RelationKind.UNKNOWN:
            sliced = _slice_verdict(z, degree_bound, iterations)
            verdict = replace(verdict, rel_CN=sliced.rel_CN)
        if verdict is None:
            verdict = _slice_verdict(z, degree_bound, iterations)

    warnings.extend(verdict.warnings)
    warnings.extend(_gk_warning(z, verdict.label))
    logger.debug("classified %s as %s (%s)", z, verdict.label.value, verdict.grade.value)
    return replace(verdict, warnings=tuple(warnings))


# -- composite rules -------------------------------------------------------------

def _rule_verdict(element: Optional[Element], label: TypeLabel, note: str,
                  bound: Optional[Tuple[int, int]] = None) -> TypeVerdict:
    """Verdict whose relations are read back from a label obtained by a product rule"""
    if label is TypeLabel.UNDETERMINED:
        unknown = _status(RelationKind.UNKNOWN, note, bound=bound)
        return TypeVerdict(
            element=element, ev_status=EvStatus(ONLY_ZERO), rel_CN=unknown, rel_NF=unknown,
            rel_DF=unknown, rel_FP=unknown, label=label, grade=EvidenceGrade.CONSISTENT, bound_used=bound,
        )
    equal = _status(RelationKind.PROVEN_EQUAL, note, bound=bound)
    proper = _status(RelationKind.PROVEN_PROPER, note, bound=bound)
    unknown = _status(RelationKind.UNKNOWN, note, bound=bound)
    family = label.family
    fp = equal if label.is_strict else proper
    if family in (0, 1):
        ev = EvStatus(ONLY_ZERO, proven=True)
        cn = proper if family == 1 else equal
        return TypeVerdict(element, ev, cn, equal, cn, fp, label, EvidenceGrade.PROVEN, bound)
    ev = EvStatus(NONZERO, proven=True)
    if family == 2:
        return TypeVerdict(element, ev, equal, proper, equal, fp, label, EvidenceGrade.PROVEN, bound)
    return TypeVerdict(element, ev, unknown, proper, proper, fp, label, EvidenceGrade.PROVEN, bound)


def _require_proven(*verdicts: TypeVerdict) -> None:
    for v in verdicts:
        if not v.is_proven:
            raise HypothesisError(f"factor verdict {v.label.value} ({v.grade.value}) is not proven")


def _theta_with_central(central: TypeVerdict, other: TypeVerdict) -> TypeLabel:
    c = central.element
    if c is None:
        raise HypothesisError("central factor verdict carries no element")
    if c.is_zero():
        return TypeLabel.OMEGA_0
    if c.is_constant():
        return other.label
    proper = other.proper_cn()
    if proper is None:
        return TypeLabel.UNDETERMINED
    if proper:
        return TypeLabel.OMEGA_1 if other.label is TypeLabel.OMEGA_1 else TypeLabel.OMEGA_1_WEAK
    return TypeLabel.OMEGA_0_WEAK


def _theta_label(v1: TypeVerdict, v2: TypeVerdict, certificate: Optional[GrCertificate]) -> Tuple[TypeLabel, str]:
    if v1.is_central and v2.is_central:
        return TypeLabel.OMEGA_0, "both factors central"
    if v1.is_central:
        return _theta_with_central(v1, v2), "central left factor"
    if v2.is_central:
        return _theta_with_central(v2, v1), "central right factor"
    if certificate is None or not certificate.commutative:
        raise HypothesisError("theta rules need gr-commutative factors")
    p1, p2 = v1.proper_cn(), v2.proper_cn()
    if p1 or p2:
        both_strict = v1.label is TypeLabel.OMEGA_1 and v2.label is TypeLabel.OMEGA_1
        return (TypeLabel.OMEGA_1 if both_strict else TypeLabel.OMEGA_1_WEAK), "F = N = N(z1) (x) N(z2) with C ⊊ N"
    if p1 is False and p2 is False:
        return TypeLabel.OMEGA_0_WEAK, "F = N = N(z1) (x) N(z2) and neither factor nilpotent"
    return TypeLabel.UNDETERMINED, "C vs N of a Jordan-type factor is unknown"


def _combine_family(a: int, b: int) -> int:
    if a == 0:
        return b
    if b == 0:
        return a
    return a if a == b else 3


def _gamma_label(v1: TypeVerdict, v2: TypeVerdict) -> Tuple[TypeLabel, str]:
    if v1.is_central:
        return v2.label, "central left factor"
    if v2.is_central:
        return v1.label, "central right factor"
    family = _combine_family(v1.label.family, v2.label.family)
    strict = v1.is_strict and v2.is_strict
    return TypeLabel.of(family, strict), "F(Γ) = F(z1) (x) F(z2) and ad_Γ = ad_z1 (x) 1 + 1 (x) ad_z2"


def classify_composite(kind: str, verdict1: TypeVerdict, verdict2: TypeVerdict,
                       certificate: Optional[GrCertificate] = None,
                       element: Optional[Element] = None) -> TypeVerdict:
    """Type of z1 (x) z2 (theta) or z1 (x) 1 + 1 (x) z2 (gamma) from proven factor types"""
    _require_proven(verdict1, verdict2)
    if kind == THETA:
        label, note = _theta_label(verdict1, verdict2, certificate)
    elif kind == GAMMA:
        label, note = _gamma_label(verdict1, verdict2)
    else:
        raise ValueError(f"unknown composite kind {kind!r}")
    logger.debug("%s(%s, %s) -> %s", kind, verdict1.label.value, verdict2.label.value, label.value)
    verdict = _rule_verdict(element, label, note, verdict1.bound_used)
    if element is not None:
        verdict = replace(verdict, warnings=tuple(_gk_warning(element, label)))
    return verdict


def composite_verdict(kind: str, spec: TensorAlgebraSpec, z1: Element, z2: Element,
                      degree_bound: Optional[int] = None, iterations: Optional[int] = None) -> TypeVerdict:
    """Classify both factors, then apply the composite rules"""
    v1 = classify(z1, degree_bound, iterations)
    v2 = classify(z2, degree_bound, iterations)
    certificate = None
    if kind == THETA:
        n = degree_bound if degree_bound is not None else default_degree()
        c1, c2 = gr_commutative(spec.left, n), gr_commutative(spec.right, n)
        certificate = c1 if not c1.commutative else c2
        element = build_theta(spec, z1, z2)
    else:
        element = build_gamma(spec, z1, z2)
    return classify_composite(kind, v1, v2, certificate, element)

"""
Tests for ad_z subspaces, classification and the slice-level theorem checks
"""

import random
from dataclasses import replace
from fractions import Fraction
from math import comb

import pytest

from ncpoisson.algebra.element import Element, bracket, generators
from ncpoisson.algebra.spec import symplectic, weyl
from ncpoisson.analysis.adjoint import (
    ad_matrix,
    centralizer_basis,
    ev_discover,
    f_slice_basis,
    generator_closure,
    invariant_slice,
    is_central,
    orbit_profile,
    partner_probe,
    subspace_bases,
)
from ncpoisson.analysis.classify import (
    GAMMA,
    THETA,
    EvidenceGrade,
    RelationKind,
    TypeLabel,
    classify,
    classify_composite,
    composite_verdict,
)
from ncpoisson.analysis.theorems import (
    automorphism_invariance,
    binomial_expansion_holds,
    centralizer_generator_check,
    filtration_product_holds,
    in_filtration_piece,
    nil_filtration_equal,
    span_of,
    tensor_theorem_check,
)
from ncpoisson.exceptions import HypothesisError
from ncpoisson.graded.symbols import gr_commutative
from ncpoisson.linalg.matrix import MatrixQ
from ncpoisson.tensor.product import build_gamma, tensor_algebra

from tests.helpers import random_element


class TestAdMatrix:
    """Test cases for ad_z on slices"""

    def setup_method(self):
        """A_1 generators"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)

    def test_ad_p(self):
        """ad_p maps (1, p, q) to (0, 0, -1)"""
        m = ad_matrix(self.p, 1)
        assert m.shape == (1, 3)
        assert m.to_lists() == [[0, 0, -1]]

    def test_ad_pq_is_diagonal(self):
        """ad_pq acts as diag(0, 1, -1) on (1, p, q)"""
        assert ad_matrix(self.p * self.q, 1) == MatrixQ.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, -1]])

    def test_ad_constant(self):
        """ad of a constant is zero"""
        assert ad_matrix(Element.one(self.a1), 3).is_zero()


class TestInvariantSlice:
    """Test cases for the largest invariant subspace"""

    def setup_method(self):
        """A_1 generators"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)

    def test_low_degree_keeps_slice(self):
        """degree(z) <= delta leaves the whole slice invariant"""
        assert invariant_slice(self.p * self.q, 4).dim == 15
        assert invariant_slice(self.p, 3).is_full

    def test_fixpoint(self):
        """p^2 q needs the fixpoint; the result is invariant"""
        z = self.p ** 2 * self.q
        slice_ = invariant_slice(z, 2)
        assert slice_.dim <= 6
        members = [slice_.element([Fraction(int(i == k)) for i in range(slice_.dim)]) for k in range(slice_.dim)]
        span = span_of(members)
        for x in members:
            image = bracket(z, x)
            assert image.degree <= 2
            assert span.contains(image.terms)

    def test_cubic_slice_is_weight_filtered(self):
        """For p^3 the invariant slice is spanned by p^a q^b with a + 2b <= N"""
        z = self.p ** 3
        slice_ = invariant_slice(z, 4)
        assert slice_.dim == 9
        span = span_of(f_slice_basis(z, 4))
        for a in range(5):
            for b in range(3):
                inside = span.contains((self.p ** a * self.q ** b).terms)
                assert inside == (a + 2 * b <= 4)

    def test_f_slice_with_irrational_spectrum(self):
        """p^2 + q^2 rotates p and q, yet the whole slice lies in F"""
        z = self.p ** 2 + self.q ** 2
        assert ev_discover(z, 3).irrational_flag
        assert len(f_slice_basis(z, 3)) == 10


class TestEigenvalues:
    """Test cases for ev_discover"""

    def setup_method(self):
        """A_1 generators"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)

    def test_pq_has_integer_spectrum(self):
        """ev_discover(pq, 6) is exactly -6..6 with certified witnesses"""
        z = self.p * self.q
        spectrum = ev_discover(z, 6)
        assert spectrum.values == [Fraction(k) for k in range(-6, 7)]
        assert not spectrum.irrational_flag
        for eigen in spectrum.eigenvalues:
            assert not eigen.witness.is_zero()
            assert bracket(z, eigen.witness) == eigen.witness.scaled(eigen.value)

    def test_p_has_only_zero(self):
        """ad_p is nilpotent on every slice"""
        assert ev_discover(self.p, 4).values == [0]

    def test_constant(self):
        """A central element has eigenvalue 0 on the whole slice"""
        spectrum = ev_discover(Element.constant(self.a1, 2), 3)
        assert spectrum.values == [0]
        assert spectrum.invariant_dim == 10


class TestSubspaceBases:
    """Test cases for subspace_bases"""

    def setup_method(self):
        """A_1 generators"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)

    def test_centralizer_of_p(self):
        """C(p) on the degree-3 slice is spanned by 1, p, p^2, p^3"""
        basis = centralizer_basis(self.p, 3)
        assert span_of(basis).equals_span(span_of([self.p ** k for k in range(4)]))

    def test_nil_chain_of_p(self):
        """ker ad_p^m has dims 4, 7, 9, 10 and stabilizes"""
        report = subspace_bases(self.p, 3, 5)
        assert [len(report.n_basis(m)) for m in range(1, 6)] == [4, 7, 9, 10, 10]
        assert report.n_stabilized
        for m in range(1, 6):
            for x in report.n_basis(m):
                y = x
                for _ in range(m):
                    y = bracket(self.p, y)
                assert y.is_zero()

    def test_unstabilized_warning(self):
        """Too few iterations leave a warning"""
        report = subspace_bases(self.p, 3, 3)
        assert not report.n_stabilized
        assert report.warnings

    def test_pq_bases(self):
        """C(pq) = {1, pq, p^2 q^2} and D(pq, 1) = {p, p^2 q} on the degree-4 slice"""
        z = self.p * self.q
        report = subspace_bases(z, 4)
        assert span_of(report.c_basis).equals_span(span_of([Element.one(self.a1), z, self.p ** 2 * self.q ** 2]))
        assert span_of(report.d_bases[Fraction(1)]).equals_span(span_of([self.p, self.p ** 2 * self.q]))
        assert report.f_basis(1) == report.d_bases[Fraction(1)]
        assert report.invariant_dim == report.slice_dim == 15

    def test_centralizer_is_first_nil_piece(self):
        """C = N_1 and every D(z, 0) element commutes with z"""
        z = self.p * self.q
        report = subspace_bases(z, 3, 3)
        assert span_of(report.c_basis).equals_span(span_of(report.n_basis(1)))
        for x in report.d_bases[Fraction(0)]:
            assert bracket(z, x).is_zero()

    def test_slice_monotonicity(self):
        """Bases at bound N embed into those at N + 1"""
        z = self.p * self.q
        smaller = centralizer_basis(z, 3)
        larger = span_of(centralizer_basis(z, 4))
        assert all(larger.contains(x.terms) for x in smaller)


class TestOrbitsAndPartners:
    """Test cases for orbit_profile and partner_probe"""

    def setup_method(self):
        """A_1 generators"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)

    def test_orbit_of_q_cubed(self):
        """ad_p lowers the q-degree until the orbit dies"""
        inf = float("-inf")
        assert orbit_profile(self.p, self.q ** 3, 6) == [3, 2, 1, 0, inf, inf, inf]

    def test_orbit_of_eigenvector(self):
        """p is an eigenvector of ad_pq"""
        assert orbit_profile(self.p * self.q, self.p, 3) == [1, 1, 1, 1]

    def test_central_orbit(self):
        """A central z kills everything in one step"""
        assert orbit_profile(Element.one(self.a1), self.q ** 2, 2) == [2, float("-inf"), float("-inf")]

    @pytest.mark.parametrize("name", ["p", "q"])
    def test_partner_exists(self, name):
        """p and q have partners with {z, w} = 1"""
        z = self.p if name == "p" else self.q
        w = partner_probe(z, 2)
        assert w is not None
        assert bracket(z, w) == 1

    def test_pq_has_no_partner(self):
        """1 is not in the image of ad_pq"""
        assert partner_probe(self.p * self.q, 4) is None

    def test_generator_closure(self):
        """W for pq is spanned by 1, p, q; p^2 q has an infinite orbit"""
        closure = generator_closure(self.p * self.q)
        assert closure is not None and closure.dim == 3
        assert generator_closure(self.p ** 2 * self.q, cap=6) is None
        assert is_central(Element.constant(self.a1, 3))
        assert not is_central(self.p)


class TestClassify:
    """Test cases for classify"""

    def setup_method(self):
        """A_1 and A_2 generators"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)
        self.a2 = weyl(2)
        self.p1, self.p2, self.q1, self.q2 = generators(self.a2)

    def test_p_is_strictly_nilpotent(self):
        """classify(p) = Ω1, Proven"""
        verdict = classify(self.p, 6, 8)
        assert verdict.label is TypeLabel.OMEGA_1
        assert verdict.grade is EvidenceGrade.PROVEN
        assert verdict.rel_CN.kind is RelationKind.PROVEN_PROPER
        assert not bracket(self.p, verdict.rel_CN.witness).is_zero()

    def test_pq_is_strictly_semisimple(self):
        """classify(pq) = Ω2, Proven, with an eigen-witness"""
        verdict = classify(self.p * self.q, 6, 8)
        assert verdict.label is TypeLabel.OMEGA_2
        assert verdict.grade is EvidenceGrade.PROVEN
        ev = verdict.ev_status
        assert ev.nonzero and ev.proven
        assert bracket(self.p * self.q, ev.witness) == ev.witness.scaled(ev.value)

    @pytest.mark.parametrize("value", [0, 1, Fraction(-5, 3)])
    def test_constants_are_central(self, value):
        """Constants are Ω0"""
        verdict = classify(Element.constant(self.a1, value), 3)
        assert verdict.label is TypeLabel.OMEGA_0
        assert verdict.is_proven

    def test_gamma_p_pq_is_jordan(self):
        """p1 + p2 q2 is Ω3 in A_2"""
        verdict = classify(self.p1 + self.p2 * self.q2, 5)
        assert verdict.label is TypeLabel.OMEGA_3
        assert verdict.grade is EvidenceGrade.PROVEN
        assert verdict.rel_DF.witness is not None
        assert verdict.warnings == ()

    def test_gamma_p_p_is_nilpotent(self):
        """p1 + p2 is Ω1 in A_2"""
        verdict = classify(self.p1 + self.p2, 5)
        assert verdict.label is TypeLabel.OMEGA_1
        assert verdict.is_proven

    def test_automorphism_image(self):
        """pq + p^3 has degree 3 but keeps the type of pq"""
        verdict = classify(self.p * self.q + self.p ** 3, 6)
        assert verdict.label is TypeLabel.OMEGA_2
        assert verdict.is_proven

    def test_degree_bound_raised(self):
        """A bound below degree(z) is raised with a warning"""
        verdict = classify(self.p * self.q, 1)
        assert verdict.bound_used[0] == 2
        assert any("raised" in w for w in verdict.warnings)

    def test_class1_elements(self):
        """x is nilpotent and xy semisimple in sympoly:1"""
        x, y = generators(symplectic(1))
        assert classify(x, 4).label is TypeLabel.OMEGA_1
        assert classify(x * y, 4).label is TypeLabel.OMEGA_2


class TestClassifyComposite:
    """Test cases for the tensor rules"""

    def setup_method(self):
        """Proven verdicts for p and pq in A_1"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)
        self.nilpotent = classify(self.p, 4)
        self.semisimple = classify(self.p * self.q, 4)
        self.central = classify(Element.constant(self.a1, 2), 4)
        self.certificate = gr_commutative(self.a1, 3)

    def test_theta_nilpotent(self):
        """theta(Ω1, Ω1) = Ω1"""
        verdict = classify_composite(THETA, self.nilpotent, self.nilpotent, self.certificate)
        assert verdict.label is TypeLabel.OMEGA_1

    def test_theta_semisimple(self):
        """theta(Ω2, Ω2) = Ω0'"""
        verdict = classify_composite(THETA, self.semisimple, self.semisimple, self.certificate)
        assert verdict.label is TypeLabel.OMEGA_0_WEAK

    def test_theta_mixed(self):
        """theta(Ω1, Ω2) is weakly nilpotent"""
        verdict = classify_composite(THETA, self.nilpotent, self.semisimple, self.certificate)
        assert verdict.label is TypeLabel.OMEGA_1_WEAK

    def test_theta_needs_certificate(self):
        """Without gr-commutativity the theta rules do not apply"""
        with pytest.raises(HypothesisError):
            classify_composite(THETA, self.nilpotent, self.nilpotent)

    def test_theta_central_constant(self):
        """A nonzero constant factor keeps the other type"""
        verdict = classify_composite(THETA, self.central, self.semisimple)
        assert verdict.label is TypeLabel.OMEGA_2

    @pytest.mark.parametrize("left,right,expected", [
        ("nilpotent", "semisimple", TypeLabel.OMEGA_3),
        ("nilpotent", "nilpotent", TypeLabel.OMEGA_1),
        ("semisimple", "semisimple", TypeLabel.OMEGA_2),
        ("central", "semisimple", TypeLabel.OMEGA_2),
    ])
    def test_gamma(self, left, right, expected):
        """Gamma combines the factor families"""
        verdict = classify_composite(GAMMA, getattr(self, left), getattr(self, right))
        assert verdict.label is expected

    def test_unproven_factor(self):
        """Factor verdicts must be proven"""
        weak = replace(self.nilpotent, grade=EvidenceGrade.CONSISTENT)
        with pytest.raises(HypothesisError):
            classify_composite(GAMMA, weak, self.nilpotent)

    def test_composite_verdict_matches_direct(self):
        """Rule-based and direct classification agree on Gamma(p, pq)"""
        spec = tensor_algebra(self.a1, self.a1)
        ruled = composite_verdict(GAMMA, spec, self.p, self.p * self.q, 4)
        direct = classify(build_gamma(spec, self.p, self.p * self.q), 4)
        assert ruled.label is direct.label is TypeLabel.OMEGA_3
        theta = composite_verdict(THETA, spec, self.p * self.q, self.p * self.q, 4)
        assert theta.label is TypeLabel.OMEGA_0_WEAK


class TestTheoremChecks:
    """Slice-level checks of the tensor and filtration results"""

    def setup_method(self):
        """A_1 (x) A_1"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)
        self.spec = tensor_algebra(self.a1, self.a1)

    def test_theta_f(self):
        """F(pq (x) pq) matches N(pq) (x) N(pq) on the degree-4 slice"""
        z = self.p * self.q
        report = tensor_theorem_check("theta_F", self.spec, z, z, 4)
        assert report.passed
        assert report.lhs_dim == report.rhs_dim == 6

    def test_gamma_f_full_slice(self):
        """F(p (x) 1 + 1 (x) p) is the whole slice"""
        report = tensor_theorem_check("gamma_F", self.spec, self.p, self.p, 3)
        assert report.passed
        assert report.lhs_dim == 35

    def test_gamma_f_cubic_factor(self):
        """p^3 (x) 1 + 1 (x) p: both sides are spanned by monomials of weight a + 2b + c + d <= 4"""
        report = tensor_theorem_check("gamma_F", self.spec, self.p ** 3, self.p, 4)
        assert report.passed
        assert report.lhs_dim == report.rhs_dim == 46

    def test_gamma_f_factor_above_delta(self):
        """p^2 q (x) 1 + 1 (x) p: a degree-3 factor beside a degree-lowering one"""
        report = tensor_theorem_check("gamma_F", self.spec, self.p ** 2 * self.q, self.p, 4)
        assert report.passed
        assert report.lhs_dim == report.rhs_dim

    def test_gamma_f_irrational_factor(self):
        """p^2 + q^2 has no rational eigenvectors on p, q but F is still the whole slice"""
        z = self.p ** 2 + self.q ** 2
        report = tensor_theorem_check("gamma_F", self.spec, z, self.p, 3)
        assert report.passed
        assert report.lhs_dim == report.rhs_dim == 35

    @pytest.mark.parametrize("lam", [-1, 0, 1])
    def test_gamma_lambda_cubic_factor(self, lam):
        """F(Γ, λ) for Γ = (p^3 + q) (x) 1 + 1 (x) pq"""
        z1 = self.p ** 3 + self.q
        report = tensor_theorem_check("gamma_lambda", self.spec, z1, self.p * self.q, 4, lam)
        assert report.passed
        assert report.lhs_dim == report.rhs_dim


    @pytest.mark.parametrize("lam", [-2, -1, 0, 1, 2])
    def test_gamma_lambda(self, lam):
        """F(Γ, λ) = sum over μ of F(pq, μ) (x) F(pq, λ - μ)"""
        z = self.p * self.q
        report = tensor_theorem_check("gamma_lambda", self.spec, z, z, 4, lam)
        assert report.passed
        assert report.value == lam

    def test_gamma_d(self):
        """D(Γ, 1) for two semisimple factors"""
        z = self.p * self.q
        assert tensor_theorem_check("gamma_D", self.spec, z, z, 3, 1).passed

    def test_gamma_n(self):
        """N(p (x) 1 + 1 (x) p) = N(p) (x) N(p)"""
        assert tensor_theorem_check("gamma_N", self.spec, self.p, self.p, 3).passed

    def test_theta_needs_noncentral_factors(self):
        """A constant factor violates the theta premise"""
        with pytest.raises(HypothesisError):
            tensor_theorem_check("theta_F", self.spec, Element.one(self.a1), self.p, 3)

    def test_unknown_kind(self):
        """Only the listed checks exist"""
        with pytest.raises(ValueError):
            tensor_theorem_check("theta_X", self.spec, self.p, self.p, 3)

    def test_binomial_expansion(self):
        """(ad_z - λ - μ)^n (ab) expands binomially on 20 random instances"""
        rng = random.Random(31)
        alg = weyl(2)
        for _ in range(20):
            z, a, b = (random_element(rng, alg, 2) for _ in range(3))
            lam, mu = rng.randint(-2, 2), rng.randint(-2, 2)
            assert binomial_expansion_holds(z, a, b, lam, mu, rng.randint(0, 3))

    def test_filtration_product(self):
        """F^k(pq, λ) F^l(pq, μ) lands in F^{k+l}(pq, λ + μ)"""
        z = self.p * self.q
        assert filtration_product_holds(z, self.p, self.q, 1, -1, 0, 0)
        assert filtration_product_holds(z, self.p ** 2 * self.q, self.p ** 3, 1, 3, 0, 0)
        assert in_filtration_piece(z, self.p, 1, 0)
        assert not in_filtration_piece(z, self.p, 2, 0)
        with pytest.raises(HypothesisError):
            filtration_product_holds(z, self.p, self.q, 0, 0, 0, 0)

    def test_equal_centralizers(self):
        """C(pq) = C((pq)^2) forces equal nil filtrations on the slice"""
        x = self.p * self.q
        check = nil_filtration_equal(x, x ** 2, 6, 3)
        assert check.passed
        assert check.dims_x == check.dims_y

    def test_automorphism_invariance(self):
        """Labels survive p -> p, q -> q + p^2"""
        images = [self.p, self.q + self.p ** 2]
        for z in (self.p, self.p * self.q, self.p + self.q):
            assert automorphism_invariance(images, z, 6).agree


class TestCentralizerGenerators:
    """C(z) against explicit generating sets"""

    def setup_method(self):
        """A_2 generators"""
        self.a2 = weyl(2)
        self.p1, self.p2, self.q1, self.q2 = generators(self.a2)

    @pytest.mark.parametrize("n", [2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_sum_of_momenta(self, n):
        """C(p1 + p2) is generated by q1 - q2, p1, p2"""
        z = self.p1 + self.p2
        check = centralizer_generator_check(z, [self.q1 - self.q2, self.p1, self.p2], n)
        assert check.spans_equal
        assert check.centralizer_dim == comb(n + 3, 3)

    @pytest.mark.parametrize("n", [2, 3])
    def test_sum_of_number_operators(self, n):
        """C(p1 q1 + p2 q2) is generated by the weight-zero quadratics"""
        z = self.p1 * self.q1 + self.p2 * self.q2
        gens = [self.p1 * self.q2, self.p1 * self.q1, self.p2 * self.q2, self.q1 * self.p2]
        assert centralizer_generator_check(z, gens, n).spans_equal

    def test_noncommuting_generator(self):
        """Every generator must commute with z"""
        with pytest.raises(HypothesisError):
            centralizer_generator_check(self.p1, [self.q1], 2)

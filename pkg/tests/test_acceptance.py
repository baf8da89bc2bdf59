"""
End-to-end reproductions of the worked examples: A_1, A_2 = A_1 (x) A_1 and K[x, y][g^-1]
"""

from fractions import Fraction
from math import comb

import pytest

from ncpoisson.algebra.element import Element, bracket, generators
from ncpoisson.algebra.homomorphism import hom_apply
from ncpoisson.algebra.spec import symplectic, weyl
from ncpoisson.analysis.adjoint import ev_discover, subspace_bases
from ncpoisson.analysis.classify import EvidenceGrade, TypeLabel, classify
from ncpoisson.analysis.theorems import centralizer_generator_check, tensor_theorem_check
from ncpoisson.growth.gk import IndependentUpTo, gk_profile, independence_probe
from ncpoisson.localization.localized import (
    LocalizedAlgebra,
    MemberCertificate,
    NonMemberEvidence,
    loc_bracket,
    loc_element,
    loc_embed,
    loc_inverse_power,
    loc_torsion_check,
)
from ncpoisson.tensor.product import LEFT, RIGHT, build_gamma, tensor_algebra, tensor_elem, tensor_embed


class TestWeylOne:
    """Elements of A_1"""

    def setup_method(self):
        """A_1 generators"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)

    @pytest.mark.parametrize("name,label", [("p", TypeLabel.OMEGA_1), ("pq", TypeLabel.OMEGA_2)])
    def test_strict_types(self, name, label):
        """p is strictly nilpotent, pq strictly semisimple"""
        z = self.p if name == "p" else self.p * self.q
        verdict = classify(z, 6, 8)
        assert verdict.label is label
        assert verdict.grade is EvidenceGrade.PROVEN

    def test_spectrum_of_pq(self):
        """Ev(pq) meets the degree-6 slice in -6..6, each with a monomial witness"""
        z = self.p * self.q
        spectrum = ev_discover(z, 6)
        assert spectrum.values == [Fraction(k) for k in range(-6, 7)]
        assert not spectrum.irrational_flag
        for eigen in spectrum.eigenvalues:
            assert len(eigen.witness) == 1
            assert bracket(z, eigen.witness) == eigen.witness.scaled(eigen.value)

    def test_independence_over_nil_algebra(self):
        """p is independent over the N(pq) slice up to degree 4"""
        report = subspace_bases(self.p * self.q, 4)
        basis = report.n_basis(report.iterations)
        assert independence_probe(self.p, basis, 4) == IndependentUpTo(4)

    @pytest.mark.slow
    def test_growth(self):
        """dim V^n = (n+1)(n+2)/2 and the slope estimate is close to 2"""
        one = Element.one(self.a1)
        profile = gk_profile([one, self.p, self.q], 40)
        assert list(profile.dims) == [(n + 1) * (n + 2) // 2 for n in range(1, 41)]
        assert 1.8 <= profile.fitted_slope <= 2.0

    @pytest.mark.parametrize("name", ["p", "pq", "p+q"])
    def test_automorphism_invariance(self, name):
        """p -> p, q -> q + p^2 keeps every label"""
        z = {"p": self.p, "pq": self.p * self.q, "p+q": self.p + self.q}[name]
        image = hom_apply([self.p, self.q + self.p ** 2], z)
        before = classify(z, 6)
        after = classify(image, 6)
        assert before.label is after.label
        assert after.is_proven


class TestWeylTwo:
    """Tensor elements of A_2 = A_1 (x) A_1"""

    def setup_method(self):
        """Factors and their tensor algebra"""
        self.a1 = weyl(1)
        self.p, self.q = generators(self.a1)
        self.spec = tensor_algebra(self.a1, self.a1)
        self.one = Element.one(self.a1)

    def _left(self, x):
        return tensor_embed(self.spec, LEFT, x)

    def _right(self, x):
        return tensor_embed(self.spec, RIGHT, x)

    def test_gamma_types(self):
        """p (x) 1 + 1 (x) pq is Ω3 and p (x) 1 + 1 (x) p is Ω1"""
        jordan = classify(build_gamma(self.spec, self.p, self.p * self.q), 5)
        assert jordan.label is TypeLabel.OMEGA_3
        assert jordan.grade is EvidenceGrade.PROVEN
        nilpotent = classify(build_gamma(self.spec, self.p, self.p), 5)
        assert nilpotent.label is TypeLabel.OMEGA_1
        assert nilpotent.grade is EvidenceGrade.PROVEN

    @pytest.mark.parametrize("n", [2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_centralizer_of_gamma_p_p(self, n):
        """C(p (x) 1 + 1 (x) p) is generated by q (x) 1 - 1 (x) q, p (x) 1, 1 (x) p"""
        z = build_gamma(self.spec, self.p, self.p)
        gens = [self._left(self.q) - self._right(self.q), self._left(self.p), self._right(self.p)]
        check = centralizer_generator_check(z, gens, n)
        assert check.spans_equal
        assert check.centralizer_dim == check.generated_dim == comb(n + 3, 3)

    @pytest.mark.parametrize("n", [2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_centralizer_of_gamma_pq_pq(self, n):
        """C(pq (x) 1 + 1 (x) pq) is generated by p (x) q, pq (x) 1, 1 (x) pq, q (x) p"""
        pq = self.p * self.q
        z = build_gamma(self.spec, pq, pq)
        gens = [
            tensor_elem(self.spec, self.p, self.q),
            self._left(pq),
            self._right(pq),
            tensor_elem(self.spec, self.q, self.p),
        ]
        check = centralizer_generator_check(z, gens, n)
        assert check.spans_equal
        assert check.centralizer_dim == check.generated_dim

    def test_theta_pq_pq(self):
        """F(pq (x) pq) is K[pq] (x) K[pq] on the degree-4 slice"""
        pq = self.p * self.q
        report = tensor_theorem_check("theta_F", self.spec, pq, pq, 4)
        assert report.passed
        assert report.rhs_dim == 6

    @pytest.mark.parametrize("lam", [-2, -1, 0, 1, 2])
    def test_gamma_lambda_pq_pq(self, lam):
        """F(Γ, λ) decomposes over μ on the degree-4 slice"""
        pq = self.p * self.q
        assert tensor_theorem_check("gamma_lambda", self.spec, pq, pq, 4, lam).passed


class TestLocalization:
    """K[x, y] with y or x inverted"""

    def setup_method(self):
        """sympoly:1 generators"""
        self.alg = symplectic(1)
        self.x, self.y = generators(self.alg)

    def test_bracket_with_inverse(self):
        """{x, 1/y} = -1/y^2"""
        loc = LocalizedAlgebra(self.alg, self.y)
        value = loc_bracket(loc_embed(loc, self.x), loc_inverse_power(loc, 1))
        assert value == loc_element(loc, Element.constant(self.alg, -1), 2)

    def test_torsion_membership(self):
        """1/x is ad_x-torsion, 1/y is not"""
        member = loc_torsion_check(self.x, loc_inverse_power(LocalizedAlgebra(self.alg, self.x), 1), 6)
        assert isinstance(member, MemberCertificate)
        evidence = loc_torsion_check(self.x, loc_inverse_power(LocalizedAlgebra(self.alg, self.y), 1), 6)
        assert isinstance(evidence, NonMemberEvidence)
        factorials = [1, 1, 2, 6, 24, 120, 720]
        assert [abs(s.leading_coefficient) for s in evidence.profile] == factorials

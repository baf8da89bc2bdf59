"""
Truncated computation of the subalgebras attached to ad_z.

Every basis element reported here is a certified member of the corresponding
infinite-dimensional subalgebra: kernels are taken of exact operators on the
filtration slice P_{<=N}, and eigen-analysis is confined to the largest
ad_z-invariant subspace U of that slice.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ncpoisson.algebra.basis import FilteredBasis, element_from_coords, filtered_basis
from ncpoisson.algebra.element import Degree, Element, bracket, generators
from ncpoisson.algebra.monomials import Mono, order_key
from ncpoisson.config import DELTA_INFINITE, GENERATOR_CLOSURE_CAP, default_iterations
from ncpoisson.linalg.echelon import EchelonSpan
from ncpoisson.linalg.matrix import MatrixQ, Vector, kernel_basis, reduced_basis, solve
from ncpoisson.linalg.poly import char_poly_factors, rational_roots
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)

ZERO = Fraction(0)


@dataclass(frozen=True)
class EigenWitness:
    """lambda in Ev(z) with a certified eigenvector: {z, witness} = value * witness"""

    value: Fraction
    multiplicity: int
    witness: Element


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: Tuple[EigenWitness, ...]
    irrational_flag: bool
    invariant_dim: int

    @property
    def values(self) -> List[Fraction]:
        return [e.value for e in self.eigenvalues]

    def nonzero(self) -> List[EigenWitness]:
        return [e for e in self.eigenvalues if e.value != 0]


@dataclass(frozen=True)
class InvariantSlice:
    """U inside P_{<=N}: reduced basis vectors, pivot positions and ad_z restricted to U"""

    z: Element
    basis: FilteredBasis
    vectors: Tuple[Tuple[Fraction, ...], ...]
    pivots: Tuple[int, ...]
    restricted: MatrixQ

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def is_full(self) -> bool:
        return self.dim == len(self.basis)

    def element(self, coefficients: Sequence[Fraction]) -> Element:
        """Element of U with the given coordinates in the U basis"""
        total = [ZERO] * len(self.basis)
        for c, vec in zip(coefficients, self.vectors):
            if not c:
                continue
            for j, v in enumerate(vec):
                if v:
                    total[j] += c * v
        return element_from_coords(self.basis, total)

    def elements(self, coordinate_vectors: Sequence[Sequence[Fraction]]) -> List[Element]:
        return [self.element(v) for v in coordinate_vectors]


@dataclass(frozen=True)
class AdReport:
    """Truncated bases of C, N, D, F for one (z, N, M) query"""

    z: Element
    degree_bound: int
    iterations: int
    slice_dim: int
    invariant_dim: int
    spectrum: Spectrum
    c_basis: Tuple[Element, ...]
    n_bases: Tuple[Tuple[Element, ...], ...]
    d_bases: Dict[Fraction, Tuple[Element, ...]]
    f_bases: Dict[Fraction, Tuple[Tuple[Element, ...], ...]]
    n_stabilized: bool
    warnings: Tuple[str, ...] = field(default=())

    @property
    def ev_found(self) -> List[Fraction]:
        return self.spectrum.values

    @property
    def irrational_flag(self) -> bool:
        return self.spectrum.irrational_flag

    def n_basis(self, m: int) -> Tuple[Element, ...]:
        """Basis of ker ad_z^m on the slice, 1 <= m <= iterations"""
        return self.n_bases[m - 1]

    def f_basis(self, value: Fraction) -> Tuple[Element, ...]:
        """Largest computed generalized eigenspace for value"""
        chain = self.f_bases.get(Fraction(value), ())
        return chain[-1] if chain else ()


@dataclass(frozen=True)
class GeneratorClosure:
    """
    Finite ad_z-invariant space W containing 1 and every generator.

    ``matrix`` is ad_z on W in the basis ``elements``; its existence proves that
    every generator has a finite-dimensional orbit.
    """

    z: Element
    elements: Tuple[Element, ...]
    matrix: MatrixQ

    @property
    def dim(self) -> int:
        return len(self.elements)

    def element(self, coefficients: Sequence[Fraction]) -> Element:
        total = Element.zero(self.z.algebra)
        for c, e in zip(coefficients, self.elements):
            if c:
                total = total + e.scaled(c)
        return total


# -- operators on slices -------------------------------------------------------

def ad_codomain_bound(z: Element, degree_bound: int) -> int:
    """Degree bound of ad_z(P_{<=N}); -1 when ad_z vanishes on degree grounds"""
    if z.is_zero():
        return -1
    delta = z.algebra.delta
    if delta >= DELTA_INFINITE:
        return -1
    return max(degree_bound + int(z.degree) - delta, -1)


def _sparse_coords(x: Element, basis: FilteredBasis) -> Dict[int, Fraction]:
    return {basis.index[m]: c for m, c in x.terms.items()}


def ad_matrix(z: Element, degree_bound: int) -> MatrixQ:
    """Matrix of ad_z from P_{<=N} to P_{<=N+d-delta}; column j is {z, basis_j}"""
    domain = filtered_basis(z.algebra, degree_bound)
    out_bound = ad_codomain_bound(z, degree_bound)
    if out_bound < 0:
        return MatrixQ.zero(0, len(domain))
    codomain = filtered_basis(z.algebra, out_bound)
    columns = [_sparse_coords(bracket(z, b), codomain) for b in domain.elements()]
    return MatrixQ.from_sparse_columns(columns, len(codomain))


def _kernel_of_images(images: Sequence[Element]) -> List[Vector]:
    """Kernel of the map e_j -> images[j], with rows indexed by the monomials that occur"""
    rows: Dict[Mono, int] = {}
    columns = []
    for image in images:
        col = {}
        for m, c in image.terms.items():
            col[rows.setdefault(m, len(rows))] = c
        columns.append(col)
    return kernel_basis(MatrixQ.from_sparse_columns(columns, len(rows)))


def _vector_elements(basis: FilteredBasis, vectors: Sequence[Sequence[Fraction]]) -> Tuple[Element, ...]:
    return tuple(element_from_coords(basis, v) for v in vectors)


def centralizer_basis(z: Element, degree_bound: int) -> Tuple[Element, ...]:
    """Basis of C(z) on P_{<=N}"""
    basis = filtered_basis(z.algebra, degree_bound)
    return _vector_elements(basis, kernel_basis(ad_matrix(z, degree_bound)))


def nil_bases(z: Element, degree_bound: int, iterations: int) -> Tuple[Tuple[Tuple[Element, ...], ...], bool]:
    """
    Bases of ker ad_z^m on P_{<=N} for m = 1..iterations, and whether two
    consecutive kernel dimensions agreed.
    """
    basis = filtered_basis(z.algebra, degree_bound)
    current = basis.elements()
    chain: List[Tuple[Element, ...]] = []
    stabilized = False
    previous_dim = -1
    for m in range(1, iterations + 1):
        current = [bracket(z, x) for x in current]
        kernel = kernel_basis(MatrixQ.zero(0, len(basis))) if all(x.is_zero() for x in current) \
            else _kernel_of_images(current)
        chain.append(_vector_elements(basis, kernel))
        logger.debug("ker ad^%d on degree-%d slice: dim %d", m, degree_bound, len(kernel))
        if len(kernel) == previous_dim:
            stabilized = True
        previous_dim = len(kernel)
    return tuple(chain), stabilized


def invariant_slice(z: Element, degree_bound: int) -> InvariantSlice:
    """Largest ad_z-invariant subspace U of P_{<=N}, with ad_z restricted to it"""
    basis = filtered_basis(z.algebra, degree_bound)
    n = len(basis)
    out_bound = ad_codomain_bound(z, degree_bound)
    ambient = filtered_basis(z.algebra, max(degree_bound, out_bound))
    columns = [_sparse_coords(bracket(z, b), ambient) for b in basis.elements()]

    def image(vec: Sequence[Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for j, v in enumerate(vec):
            if v:
                for i, c in columns[j].items():
                    out[i] = out.get(i, ZERO) + v * c
        return out

    identity = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    vectors, pivots = identity, list(range(n))
    if out_bound > degree_bound:
        steps = 0
        while vectors:
            steps += 1
            k = len(vectors)
            cols = [image(v) for v in vectors]
            cols += [{j: -c for j, c in enumerate(v) if c} for v in vectors]
            kernel = kernel_basis(MatrixQ.from_sparse_columns(cols, len(ambient)))
            candidates = []
            for vec in kernel:
                combo = [ZERO] * n
                for a, c in enumerate(vec[:k]):
                    if c:
                        for j, v in enumerate(vectors[a]):
                            if v:
                                combo[j] += c * v
                candidates.append(combo)
            new_vectors, new_pivots = reduced_basis(candidates, n)
            if len(new_vectors) == k:
                break
            vectors, pivots = new_vectors, new_pivots
        logger.debug("invariant slice of degree-%d slice: dim %d after %d steps", degree_bound, len(vectors), steps)

    restricted_cols = []
    for v in vectors:
        img = image(v)
        restricted_cols.append({a: img[p] for a, p in enumerate(pivots) if img.get(p)})
    restricted = MatrixQ.from_sparse_columns(restricted_cols, len(vectors))
    return InvariantSlice(
        z=z,
        basis=basis,
        vectors=tuple(tuple(v) for v in vectors),
        pivots=tuple(pivots),
        restricted=restricted,
    )


# -- eigenvalues ---------------------------------------------------------------

def _spectrum_of(matrix: MatrixQ) -> Tuple[List[Tuple[Fraction, int]], bool]:
    multiplicities: Dict[Fraction, int] = {}
    irrational = False
    for factor in char_poly_factors(matrix):
        roots = rational_roots(factor)
        irrational = irrational or roots.has_irrational_part
        for value, mult in roots.roots:
            multiplicities[value] = multiplicities.get(value, 0) + mult
    return sorted(multiplicities.items()), irrational


def _spectrum_on(slice_: InvariantSlice) -> Spectrum:
    roots, irrational = _spectrum_of(slice_.restricted)
    found = []
    for value, mult in roots:
        kernel = kernel_basis(slice_.restricted.shifted(value))
        witness = slice_.element(kernel[0])
        if bracket(slice_.z, witness) != witness.scaled(value):
            raise ArithmeticError(f"eigenvector check failed for eigenvalue {value}")
        found.append(EigenWitness(value, mult, witness))
    if irrational:
        logger.warning("ad_z has eigenvalues outside Q on the invariant slice")
    return Spectrum(tuple(found), irrational, slice_.dim)


def ev_discover(z: Element, degree_bound: int) -> Spectrum:
    """Rational eigenvalues of ad_z on the invariant slice, each with an eigenvector"""
    spectrum = _spectrum_on(invariant_slice(z, degree_bound))
    logger.debug("eigenvalues found: %s", [str(v) for v in spectrum.values])
    return spectrum


def generalized_chain(matrix: MatrixQ, value: Fraction, multiplicity: int, cap: int) -> List[List[Vector]]:
    """ker (m - value)^k for k = 1.. until the dimension reaches multiplicity or k = cap"""
    shifted = matrix.shifted(value)
    power = shifted
    chain = []
    for k in range(1, max(cap, 1) + 1):
        kernel = kernel_basis(power)
        chain.append(kernel)
        if len(kernel) >= multiplicity:
            break
        power = power @ shifted
    return chain


def subspace_bases(z: Element, degree_bound: int, iterations: Optional[int] = None) -> AdReport:
    """C, N_m, D(z, lambda) and F^k(z, lambda) on the degree-N slice"""
    if iterations is None:
        iterations = default_iterations(degree_bound)
    basis = filtered_basis(z.algebra, degree_bound)
    c_basis = centralizer_basis(z, degree_bound)
    n_bases, stabilized = nil_bases(z, degree_bound, iterations)
    slice_ = invariant_slice(z, degree_bound)
    spectrum = _spectrum_on(slice_)
    d_bases: Dict[Fraction, Tuple[Element, ...]] = {}
    f_bases: Dict[Fraction, Tuple[Tuple[Element, ...], ...]] = {}
    for eigen in spectrum.eigenvalues:
        chain = generalized_chain(slice_.restricted, eigen.value, eigen.multiplicity, iterations)
        d_bases[eigen.value] = tuple(slice_.elements(chain[0]))
        f_bases[eigen.value] = tuple(tuple(slice_.elements(k)) for k in chain)
    warnings = []
    if not stabilized:
        warnings.append(f"nil-kernel dimensions did not stabilize within {iterations} iterations")
        logger.warning("ker ad^m did not stabilize for m <= %d", iterations)
    if spectrum.irrational_flag:
        warnings.append("spectrum on the invariant slice has a non-rational part")
    return AdReport(
        z=z,
        degree_bound=degree_bound,
        iterations=iterations,
        slice_dim=len(basis),
        invariant_dim=slice_.dim,
        spectrum=spectrum,
        c_basis=c_basis,
        n_bases=n_bases,
        d_bases=d_bases,
        f_bases=f_bases,
        n_stabilized=stabilized,
        warnings=tuple(warnings),
    )


def f_slice_basis(z: Element, degree_bound: int) -> Tuple[Element, ...]:
    """
    F(z) seen from the slice: the invariant subspace U itself.

    U is finite-dimensional and ad_z-invariant, so all of it lies in F(z)
    whatever the spectrum of ad_z on U.
    """
    slice_ = invariant_slice(z, degree_bound)
    return tuple(slice_.elements(_identity(slice_.dim)))


def generalized_slice_basis(z: Element, value: object, degree_bound: int) -> Tuple[Element, ...]:
    """F(z, value) on the invariant slice"""
    value = Fraction(value)
    slice_ = invariant_slice(z, degree_bound)
    roots, _ = _spectrum_of(slice_.restricted)
    mult = dict(roots).get(value, 0)
    if not mult:
        return ()
    return tuple(slice_.elements(generalized_chain(slice_.restricted, value, mult, slice_.dim)[-1]))


def eigenspace_slice_basis(z: Element, value: object, degree_bound: int) -> Tuple[Element, ...]:
    """D(z, value) on the invariant slice"""
    slice_ = invariant_slice(z, degree_bound)
    return tuple(slice_.elements(kernel_basis(slice_.restricted.shifted(Fraction(value)))))


def _identity(n: int) -> List[Vector]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


# -- orbits and partners -------------------------------------------------------

def orbit_profile(z: Element, x: Element, iterations: int) -> List[Degree]:
    """deg ad_z^m(x) for m = 0..M; a -inf entry proves x in N(z)"""
    degrees: List[Degree] = []
    current = x
    for _ in range(iterations + 1):
        degrees.append(current.degree)
        if not current.is_zero():
            current = bracket(z, current)
    return degrees


def partner_probe(z: Element, degree_bound: int) -> Optional[Element]:
    """Some w in P_{<=N} with {z, w} = 1, or None when the slice has none"""
    matrix = ad_matrix(z, degree_bound)
    if matrix.rows == 0:
        return None
    rhs = [ZERO] * matrix.rows
    rhs[0] = Fraction(1)
    solution = solve(matrix, rhs)
    if solution is None:
        return None
    w = element_from_coords(filtered_basis(z.algebra, degree_bound), solution)
    if bracket(z, w) != Element.one(z.algebra):
        raise ArithmeticError("partner check failed")
    return w


def is_central(z: Element) -> bool:
    """{z, g} = 0 for every generator g"""
    return all(bracket(z, g).is_zero() for g in generators(z.algebra))


def generator_closure(z: Element, cap: int = GENERATOR_CLOSURE_CAP) -> Optional[GeneratorClosure]:
    """
    Close the ad_z-orbits of 1 and of every generator.

    Returns None when some orbit adds more than ``cap`` new dimensions, which is
    evidence (not proof) of an infinite orbit.
    """
    alg = z.algebra
    span: EchelonSpan[Mono] = EchelonSpan(order_key)
    elements: List[Element] = []
    for start in [Element.one(alg)] + generators(alg):
        current = start
        added = 0
        while not span.contains(current.terms):
            if added >= cap:
                logger.debug("orbit of %s did not close within %d steps", start, cap)
                return None
            span.add(current.terms)
            elements.append(current)
            added += 1
            current = bracket(z, current)
    rows: Dict[Mono, int] = {}
    columns = []
    for e in elements:
        col = {}
        for m, c in e.terms.items():
            col[rows.setdefault(m, len(rows))] = c
        columns.append(col)
    for e in elements:
        for m in bracket(z, e).terms:
            rows.setdefault(m, len(rows))
    basis_matrix = MatrixQ.from_sparse_columns(columns, len(rows))
    ad_columns = []
    for e in elements:
        target = [ZERO] * len(rows)
        for m, c in bracket(z, e).terms.items():
            target[rows[m]] = c
        solution = solve(basis_matrix, target)
        if solution is None:
            raise ArithmeticError("closure is not invariant")
        ad_columns.append({k: v for k, v in enumerate(solution) if v})
    matrix = MatrixQ.from_sparse_columns(ad_columns, len(elements))
    logger.debug("generator closure of dimension %d", len(elements))
    return GeneratorClosure(z=z, elements=tuple(elements), matrix=matrix)


def closure_spectrum(closure: GeneratorClosure) -> Tuple[List[Tuple[Fraction, int]], bool]:
    """Rational eigenvalues (with multiplicity) of ad_z on W and the irrational flag"""
    return _spectrum_of(closure.matrix)

"""Representation analysis for the decomposition engine.

Two independent routes compute the isotypic (homogeneous) components of the
natural module restricted to an abelian normal subgroup:

* homogeneous_components: entirely over the base field, by refining along
  the Frobenius-fixed subalgebra of the enveloping algebra (whose fixed
  points are spanned by the primitive idempotents);
* homogeneous_components_split: over a splitting field, by joint eigenspace
  refinement and Galois descent of orbit sums.

They must agree; the test suite holds them against each other.  The module
also carries spinning/irreducibility (nullity-one word search in the style
of the Norton criterion, with an exhaustive line-spin fallback), single-
element eigenspace analysis with Galois orbits, the inverse-eigenvalue
pairing check, and the dichotomy filter that turns components into an
orthogonal decomposition.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvariantViolation,
    NoSuitableWord,
    NotAbelian,
    NotCoprime,
    NotIsometry,
    NotSemisimple,
    ParityViolation,
    ZeroVector,
)
from .field import FieldElem, frobenius_orbit_idx, poly_factor, splitting_field
from .form import OrthoDecomposition, QuadraticSpace, is_isometry
from .group import MatrixGroup, element_order, fixed_space, is_abelian
from .linalg import (
    Matrix,
    Subspace,
    charpoly,
    extend_scalars,
    kernel,
    minpoly,
    projective_lines,
    rational_form,
    restrict_matrix,
)


def spin(v, G):
    """Smallest G-invariant subspace containing v: close {v} under the
    generators, reducing incrementally against the growing basis."""
    F = G.field
    n = G.dim
    v = np.asarray(v, dtype=np.int32)
    if not v.any():
        raise ZeroVector("cannot spin the zero vector")
    rows = []       # (pivot, normalized row)
    queue = []

    def insert(w):
        w = w.copy()
        for pc, row in rows:
            if w[pc] != 0:
                w = F.vsub(w, F.vscale(int(w[pc]), row))
        if not w.any():
            return None
        pc = int(np.argmax(w != 0))
        inv = F.inv(int(w[pc]))
        if inv != 1:
            w = F.vscale(inv, w)
        rows.append((pc, w))
        return w

    first = insert(v)
    queue.append(first)
    gen_arrays = [g.a for g in G.gens]
    while queue and len(rows) < n:
        w = queue.pop(0)
        for ga in gen_arrays:
            u = insert(F.mat_vec(ga, w))
            if u is not None:
                queue.append(u)
    return Subspace(F, n, np.stack([r for _, r in rows]))


@dataclass(frozen=True)
class IrreducibilityResult:
    irreducible: bool
    witness: Subspace | None = None

    def __bool__(self):
        return self.irreducible


def _word_candidates(gens):
    """Deterministic algebra elements to probe for nullity one: generators,
    ordered pairwise products, then 0/1-coefficient sums of two and three
    generators."""
    for g in gens:
        yield g
    for i, g in enumerate(gens):
        for j, h in enumerate(gens):
            if i != j:
                yield g @ h
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            yield gens[i] + gens[j]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            for l in range(j + 1, len(gens)):
                yield gens[i] + gens[j] + gens[l]


def is_irreducible(G, line_bound=10 ** 6):
    """Irreducibility of the natural module, with a witness on failure.

    Searches the deterministic word list for an element of nullity exactly
    one and applies the two-sided spin test (spin the null vector; if full,
    spin the transposed null vector under the transposed generators and
    take the annihilator as witness).  Falls back to exhaustively spinning
    every line when no word qualifies.
    """
    n = G.dim
    F = G.field
    if n == 1:
        return IrreducibilityResult(True)
    for a in _word_candidates(G.gens):
        nullsp = kernel(a)
        if nullsp.dim != 1:
            continue
        v = nullsp.basis[0]
        U = spin(v, G)
        if U.dim < n:
            return IrreducibilityResult(False, U)
        transposed = MatrixGroup([g.T for g in G.gens], bound=G.bound)
        w = kernel(a.T).basis[0]
        Ut = spin(w, transposed)
        if Ut.dim < n:
            witness = kernel(Matrix(F, Ut.basis))
            return IrreducibilityResult(False, witness)
        return IrreducibilityResult(True)
    n_lines = (F.q ** n - 1) // (F.q - 1)
    if n_lines > line_bound:
        raise NoSuitableWord(
            f"no nullity-one word and {n_lines} lines exceed the bound")
    for v in projective_lines(F, n):
        U = spin(v, G)
        if U.dim < n:
            return IrreducibilityResult(False, U)
    return IrreducibilityResult(True)


class AlgebraSpan:
    """F-span of a family of n x n matrices that is closed under products
    (e.g. the image of a group); keeps an RREF basis of the flattened
    matrices for coordinate solving."""

    def __init__(self, field, n, matrices):
        self.field = field
        self.n = n
        flat = np.stack([m.a.reshape(-1) for m in matrices])
        span = Subspace(field, n * n, flat)
        self.rows = span.basis
        self.pivots = span.pivots
        self.basis = [Matrix(field, row.reshape(n, n)) for row in self.rows]

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, m):
        coords = m.a.reshape(-1)[list(self.pivots)].astype(np.int32)
        lift = self.field.mat_mul(coords.reshape(1, -1), self.rows)[0]
        if not np.array_equal(lift, m.a.reshape(-1)):
            raise InvariantViolation("matrix outside the algebra span")
        return coords

    def structure_constants(self):
        """c[i][j] = coordinates of basis[i] @ basis[j]; existence of all of
        them certifies multiplicative closure."""
        return [[self.coords(a @ b) for b in self.basis]
                for a in self.basis]


def _frobenius_fixed_basis(algebra):
    """Basis of the subalgebra fixed by x -> x^q, as matrices.  On a
    commutative semisimple algebra this is the span of the primitive
    idempotents, so its dimension counts the isotypic components."""
    F = algebra.field
    rows = []
    for b in algebra.basis:
        rows.append(algebra.coords(b.pow(F.q)))
    M = np.stack(rows).astype(np.int32)
    delta = F.vsub(M, np.eye(algebra.dim, dtype=np.int32))
    fixed_coords = kernel(Matrix(F, delta.T.copy()))
    out = []
    for coords in fixed_coords.basis:
        flat = F.mat_mul(coords.reshape(1, -1), algebra.rows)[0]
        out.append(Matrix(F, flat.reshape(algebra.n, algebra.n)))
    return out


def _coprimality_guard(L):
    p = L.field.p
    if L.order % p != 0:
        return
    pelems = [g for g in L.enumerate()
              if not g.is_identity() and element_order(g) % p == 0]
    psyl = [g.pow(element_order(g) // (p ** _pval(element_order(g), p)))
            for g in pelems]
    psyl = [g for g in psyl if not g.is_identity()]
    detail = ""
    if psyl:
        fs = fixed_space(MatrixGroup(psyl, bound=L.bound))
        detail = f"; its Sylow-{p} part fixes only a {fs.dim}-dimensional " \
                 "subspace"
    raise NotCoprime(
        f"characteristic {p} divides the group order {L.order}{detail}")


def _pval(m, p):
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def homogeneous_components(L):
    """Isotypic components of F^n restricted to the abelian group L,
    computed over the base field by idempotent refinement.

    Blocks whose restricted enveloping algebra has a one-dimensional
    Frobenius-fixed subalgebra are single components; otherwise the first
    non-scalar fixed element has a squarefree totally-split minimal
    polynomial, and its eigenspaces refine the block.
    """
    if not is_abelian(L):
        raise NotAbelian("homogeneous components need an abelian group")
    _coprimality_guard(L)
    F = L.field
    n = L.dim
    elements = L.enumerate()
    work = [Subspace.whole(F, n)]
    final = []
    while work:
        block = work.pop(0)
        restricted = [restrict_matrix(g, block) for g in elements]
        algebra = AlgebraSpan(F, block.dim, restricted)
        fixed = _frobenius_fixed_basis(algebra)
        nonscalar = _first_nonscalar(F, fixed)
        if nonscalar is None:
            final.append(block)
            continue
        mp = minpoly(nonscalar)
        roots = []
        for g, e in poly_factor(mp):
            if g.degree != 1 or e != 1:
                raise NotSemisimple(
                    "fixed-algebra element has a non-split or repeated "
                    "factor; coprimality promised otherwise")
            roots.append(F.neg(g.coeffs[0]))
        if len(roots) < 2:
            raise InvariantViolation(
                "non-scalar element with a single eigenvalue")
        for root in roots:
            eig = kernel(nonscalar - Matrix.diag(F, [root] * block.dim))
            if eig.dim == 0:
                raise InvariantViolation("empty eigenspace for a root")
            work.append(Subspace(F, n, block.lift_rows(eig.basis)))
    final.sort(key=lambda s: s.sort_key())
    if sum(s.dim for s in final) != n:
        raise InvariantViolation("components do not fill the space")
    return final


def _first_nonscalar(F, matrices):
    for m in matrices:
        d = int(m.a[0, 0])
        if not np.array_equal(
                m.a, Matrix.diag(F, [d] * m.rows).a):
            return m
    return None


def homogeneous_components_split(L):
    """Independent computation of the isotypic components: refine over a
    common splitting field into joint eigenspaces of the generators, group
    the character tuples into Galois orbits, and descend each orbit sum back
    to the base field."""
    if not is_abelian(L):
        raise NotAbelian("homogeneous components need an abelian group")
    _coprimality_guard(L)
    F = L.field
    n = L.dim
    gens = L.gens
    cp = charpoly(gens[0])
    for g in gens[1:]:
        cp = cp * charpoly(g)
    K = splitting_field(cp)
    blocks = [(Subspace.whole(K, n), ())]
    for g in gens:
        gK = extend_scalars(g, K)
        refined = []
        for Z, label in blocks:
            R = restrict_matrix(gK, Z)
            covered = 0
            rp = charpoly(R)
            for alpha in sorted(set(
                    a for a in range(K.q) if rp.eval_idx(a) == 0)):
                eig = kernel(R - Matrix.diag(K, [alpha] * Z.dim))
                if eig.dim:
                    covered += eig.dim
                    refined.append(
                        (Subspace(K, n, Z.lift_rows(eig.basis)),
                         label + (alpha,)))
            if covered != Z.dim:
                raise NotSemisimple("generator not diagonalizable over the "
                                    "splitting field")
        blocks = refined
    by_label = {label: Z for Z, label in blocks}
    seen = set()
    out = []
    for label in sorted(by_label):
        if label in seen:
            continue
        orbit = []
        cur = label
        while cur not in seen:
            seen.add(cur)
            orbit.append(cur)
            cur = tuple(K.pow(a, F.q) for a in cur)
        total = by_label[orbit[0]]
        for other in orbit[1:]:
            total = total.sum_with(by_label[other])
        out.append(rational_form(total, F))
    out.sort(key=lambda s: s.sort_key())
    return out


@dataclass(frozen=True)
class EigenData:
    """Eigenvalue data of one semisimple element over its splitting field."""
    element: Matrix
    base_field: object
    split_field: object
    eigenvalues: tuple            # K-indices, sorted
    eigenspaces: dict             # K-index -> Subspace over K
    orbits: tuple                 # tuples of K-indices under x -> x^|F|
    orbit_sums: dict              # orbit -> Subspace over K
    rational_components: dict     # orbit -> Subspace over F


def eigen_analysis(f, space):
    """Diagonalize f over the splitting field of its characteristic
    polynomial: eigenspaces, Galois orbits of eigenvalues, orbit sums and
    their rational forms over the base field."""
    F = f.field
    n = f.rows
    if f.det().idx == 0:
        raise InvariantViolation("eigen analysis needs an invertible element")
    mp = minpoly(f)
    if any(e > 1 for _, e in poly_factor(mp)):
        raise NotSemisimple(
            "minimal polynomial is not squarefree; the element order is "
            "divisible by the characteristic")
    cp = charpoly(f)
    K = splitting_field(cp)
    fK = extend_scalars(f, K)
    cpK = charpoly(fK)
    eigenvalues = sorted(a for a in range(K.q) if cpK.eval_idx(a) == 0)
    eigenspaces = {}
    total = 0
    for a in eigenvalues:
        eig = kernel(fK - Matrix.diag(K, [a] * n))
        eigenspaces[a] = eig
        total += eig.dim
    if total != n:
        raise NotSemisimple("eigenspaces do not fill the extended space")
    seen = set()
    orbits = []
    for a in eigenvalues:
        if a in seen:
            continue
        orb = tuple(frobenius_orbit_idx(K, a, F.q))
        seen.update(orb)
        dims = {eigenspaces[b].dim for b in orb}
        if len(dims) != 1:
            raise InvariantViolation(
                "Galois-conjugate eigenvalues with unequal eigenspace dims")
        orbits.append(orb)
    orbit_sums = {}
    rational = {}
    for orb in orbits:
        total_sub = eigenspaces[orb[0]]
        for b in orb[1:]:
            total_sub = total_sub.sum_with(eigenspaces[b])
        orbit_sums[orb] = total_sub
        rational[orb] = rational_form(total_sub, F)
    return EigenData(
        element=f, base_field=F, split_field=K,
        eigenvalues=tuple(eigenvalues), eigenspaces=eigenspaces,
        orbits=tuple(orbits), orbit_sums=orbit_sums,
        rational_components=rational)


def pairing_check(eigendata, space):
    """Pairs (alpha, beta) with b(W_alpha, W_beta) != 0.

    Verifies the inverse-pairing law on the way: every nonzero pairing has
    alpha * beta = 1 and is then a perfect pairing, and every pair with
    alpha * beta != 1 pairs to exactly zero.  Violations are impossible for
    an isometry and raise InvariantViolation.
    """
    E = eigendata
    if not is_isometry(E.element, space):
        raise NotIsometry("pairing analysis needs an isometry")
    K = E.split_field
    gramK = extend_scalars(space.gram, K)
    spaceK = QuadraticSpace(K, gramK)
    evs = list(E.eigenvalues)
    pairs = []
    for i, a in enumerate(evs):
        for b in evs[i:]:
            block = spaceK.gram_block(E.eigenspaces[a].basis,
                                      E.eigenspaces[b].basis)
            nonzero = bool(block.any())
            inverse_pair = K.mul(a, b) == 1
            if nonzero and not inverse_pair:
                raise InvariantViolation(
                    "nonzero pairing between eigenvalues with product != 1")
            if inverse_pair:
                if not nonzero:
                    raise InvariantViolation(
                        "inverse eigenvalue pair with zero pairing")
                da = E.eigenspaces[a].dim
                db = E.eigenspaces[b].dim
                if da != db or Matrix(K, block).rank() != da:
                    raise InvariantViolation(
                        "pairing between inverse eigenvalues is not perfect")
                pairs.append((FieldElem(K, a), FieldElem(K, b)))
    return pairs


def zalesski_dichotomy_check(components, space):
    """Turn isotypic components into an orthogonal decomposition.

    A single component is the trivial decomposition.  For several, each must
    be nondegenerate and the components pairwise orthogonal; failure means
    the components pair isotropically across each other, which cannot happen
    in odd dimension, so it raises ParityViolation.
    """
    if not components:
        raise InvariantViolation("no components given")
    if len(components) == 1:
        if components[0].dim != space.n:
            raise InvariantViolation("single component must be everything")
        return OrthoDecomposition(space, components)
    for i, u in enumerate(components):
        if space.restricted_gram(u).det().idx == 0:
            raise ParityViolation(
                f"component {i} is degenerate for the form: components pair "
                "off isotropically, impossible in odd dimension")
        for j in range(i + 1, len(components)):
            if space.gram_block(u.basis, components[j].basis).any():
                raise ParityViolation(
                    f"components {i} and {j} are not orthogonal")
    return OrthoDecomposition(space, components)

"""The main decomposition engine.

For a finite solvable irreducible group of isometries in odd dimension,
produce an orthogonal decomposition into lines permuted by the group and a
basis in which every element is monomial with entries +-1, packaged as a
machine-checkable certificate.

The recursion mirrors the existence proof: the last nontrivial derived term
is abelian and normal and avoids -I (its determinants are 1), so its
isotypic components give an invariant orthogonal decomposition with more
than one part; the setwise stabilizer of the first part acts irreducibly on
it (asserted at runtime, not assumed), the recursion solves that smaller
problem, and coset representatives transport the solution to the other
parts.  Transport preserves Q-values, so all basis lines share one scalar c
and every permuting coefficient squares to 1.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    CertificateCheckFailed,
    DimensionMismatch,
    HypothesisViolated,
    InvariantViolation,
)
from .field import FieldElem
from .form import QuadraticSpace, is_isometry, validate_decomposition
from .group import MatrixGroup, abelian_normal_term, is_abelian, \
    is_solvable, setwise_stabilizer
from .linalg import Matrix, restrict_matrix
from .modrep import homogeneous_components, is_irreducible, \
    zalesski_dichotomy_check


@dataclass(frozen=True)
class MonomialCertificate:
    """Basis w_1..w_n of pairwise-orthogonal anisotropic lines with all
    Q(w_i) = c, plus each generator's action g w_i = sign_i w_{perm[i]} and
    the coset-representative words used for transport (outermost recursion
    level first; words index into the generator list)."""

    space: QuadraticSpace
    basis: np.ndarray
    scalar: FieldElem
    generator_images: tuple   # per generator: (perm, signs)
    transport: tuple          # per level: tuple of generator-index words

    @property
    def n(self):
        return self.basis.shape[0]

    def basis_change(self):
        """Matrix P whose columns are the basis vectors."""
        return Matrix(self.space.field, self.basis.T.copy())


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    failure: str = ""

    def __bool__(self):
        return self.ok


def _check_hypotheses(G, space):
    if G.dim != space.n:
        raise DimensionMismatch("group dimension differs from the space")
    if space.n % 2 == 0:
        raise HypothesisViolated("dimension even", f"n = {space.n}")
    for g in G.gens:
        if not is_isometry(g, space):
            raise HypothesisViolated(
                "not isometries", "a generator moves the form")
    if not is_solvable(G):
        raise HypothesisViolated("not solvable")
    res = is_irreducible(G)
    if not res:
        raise HypothesisViolated(
            "not irreducible",
            f"invariant subspace of dimension {res.witness.dim}")


def find_invariant_decomposition(G, space):
    """An invariant orthogonal decomposition with more than one part, from
    the isotypic components of the last nontrivial derived term.

    A single homogeneous component would force that term to be <-I> (whose
    determinant is -1), contradicting its containment in the derived
    subgroup; such an outcome is therefore reported as InvariantViolation,
    never retried.
    """
    _check_hypotheses(G, space)
    if space.n == 1:
        raise HypothesisViolated("dimension one",
                                 "nothing to decompose for n = 1")
    if is_abelian(G):
        raise InvariantViolation(
            "abelian yet irreducible on odd dimension > 1 inside an "
            "orthogonal group: impossible, input is corrupted")
    L = abelian_normal_term(G)
    comps = homogeneous_components(L)
    if len(comps) == 1:
        raise InvariantViolation(
            "homogeneous abelian term in the derived subgroup: it would "
            "have to be <-I> with determinant -1, impossible; preserve "
            "this input as a fixture")
    D = zalesski_dichotomy_check(comps, space)
    validate_decomposition(D, G)
    return D


def _coset_representatives(G, decomposition):
    """Breadth-first search over generator words, generator-index order;
    the first word whose element maps the first part onto part i wins."""
    Z1 = decomposition.parts[0]
    found = {}
    queue = [((), G.identity)]
    seen = {G.identity}
    while queue and len(found) < decomposition.k:
        word, m = queue.pop(0)
        idx = decomposition.index_of(Z1.image(m))
        if idx is not None and idx not in found:
            found[idx] = (word, m)
        for j, g in enumerate(G.gens):
            nm = m @ g
            if nm not in seen:
                seen.add(nm)
                queue.append((word + (j,), nm))
    if len(found) < decomposition.k:
        raise InvariantViolation(
            "group is not transitive on the parts despite irreducibility")
    return [found[i] for i in range(decomposition.k)]


def _line_key(F, row):
    pc = int(np.argmax(row != 0))
    inv = F.inv(int(row[pc]))
    return F.vscale(inv, row).astype(np.int32).tobytes() if inv != 1 \
        else row.astype(np.int32).tobytes()


def _generator_images(gens, rows, space):
    F = space.field
    n = rows.shape[0]
    index = {_line_key(F, rows[i]): i for i in range(n)}
    out = []
    minus_one = F.neg(1)
    for g in gens:
        perm = [0] * n
        signs = [0] * n
        for i in range(n):
            img = F.mat_vec(g.a, rows[i])
            j = index.get(_line_key(F, img))
            if j is None:
                raise CertificateCheckFailed(
                    "generator maps a basis line outside the line set")
            pc = int(np.argmax(rows[j] != 0))
            lam = F.div(int(img[pc]), int(rows[j][pc]))
            if not np.array_equal(img, F.vscale(lam, rows[j])):
                raise CertificateCheckFailed(
                    "generator image is not proportional to a basis line")
            if lam == 1:
                signs[i] = 1
            elif lam == minus_one:
                signs[i] = -1
            else:
                raise CertificateCheckFailed(
                    "monomial coefficient is not +-1")
            perm[i] = j
        out.append((tuple(perm), tuple(signs)))
    return tuple(out)


def monomialize(G, space):
    """Monomial certificate for a finite solvable irreducible isometry
    group in odd dimension; hypotheses are re-checked at every level."""
    _check_hypotheses(G, space)
    F = space.field
    n = space.n
    if n == 1:
        c = int(space.gram.a[0, 0])
        rows = np.eye(1, dtype=np.int32)
        images = _generator_images(G.gens, rows, space)
        cert = MonomialCertificate(
            space=space, basis=rows, scalar=FieldElem(F, c),
            generator_images=images, transport=())
        _verify_internal(cert, G)
        return cert

    D = find_invariant_decomposition(G, space)
    Z1 = D.parts[0]
    H = setwise_stabilizer(G, D, 0)
    sub_space = QuadraticSpace(F, space.restricted_gram(Z1))
    restricted = [restrict_matrix(h, Z1) for h in H.gens]
    H_res = MatrixGroup(restricted, space=sub_space, bound=G.bound)
    if not is_irreducible(H_res):
        raise InvariantViolation(
            "stabilizer acts reducibly on its part; impossible for an "
            "irreducible group acting on an orthogonal decomposition")
    rec = monomialize(H_res, sub_space)
    lines1 = Z1.lift_rows(rec.basis)
    reps = _coset_representatives(G, D)
    blocks = []
    for word, m in reps:
        blocks.append(F.mat_mul(lines1, m.a.T))
    rows = np.concatenate(blocks, axis=0).astype(np.int32)
    c = space.q_value(rows[0])
    images = _generator_images(G.gens, rows, space)
    cert = MonomialCertificate(
        space=space, basis=rows, scalar=FieldElem(F, c),
        generator_images=images,
        transport=(tuple(word for word, _ in reps),) + rec.transport)
    _verify_internal(cert, G)
    return cert


def _verify_internal(cert, G):
    """Producer-side verification: orthogonality, the common scalar, and
    exactness of the recorded generator images."""
    space = cert.space
    F = space.field
    rows = cert.basis
    n = cert.n
    c = cert.scalar.idx
    if c == 0:
        raise CertificateCheckFailed("certificate scalar is zero")
    gram = space.gram_block(rows, rows)
    target = np.zeros((n, n), dtype=np.int32)
    np.fill_diagonal(target, c)
    if not np.array_equal(gram, target):
        raise CertificateCheckFailed(
            "basis is not orthogonal with constant Q-value")
    recomputed = _generator_images(G.gens, rows, space)
    if recomputed != cert.generator_images:
        raise CertificateCheckFailed("recorded generator images are wrong")


def check_certificate(cert, G):
    """Independent verifier with no trust in the producer.

    Re-checks orthogonality and the common scalar, recomputes every
    generator image against the recorded ones, and conjugates EVERY
    enumerated element of G into the certificate basis, requiring an exactly
    monomial matrix with entries +-1.  Returns a CheckReport; never raises
    for content failures.
    """
    space = cert.space
    F = space.field
    rows = cert.basis
    n = cert.n

    def fail(msg):
        return CheckReport(False, msg)

    if rows.shape != (n, space.n) or n != space.n:
        return fail("basis shape mismatch")
    P = cert.basis_change()
    try:
        P_inv = P.inverse()
    except Exception:
        return fail("basis vectors are linearly dependent")
    c = cert.scalar.idx
    if c == 0:
        return fail("scalar c is zero")
    gram = space.gram_block(rows, rows)
    for i in range(n):
        for j in range(n):
            want = c if i == j else 0
            if int(gram[i, j]) != want:
                return fail(f"gram of basis at ({i},{j}) is {int(gram[i, j])},"
                            f" expected {want}")
    if len(cert.generator_images) != len(G.gens):
        return fail("generator image count mismatch")
    try:
        recomputed = _generator_images(G.gens, rows, space)
    except CertificateCheckFailed as e:
        return fail(str(e))
    if recomputed != cert.generator_images:
        return fail("recorded generator images do not match recomputation")
    minus_one = F.neg(1)
    for g in G.enumerate():
        M = (P_inv @ g @ P).a
        for i in range(n):
            row_nz = np.flatnonzero(M[i])
            col_nz = np.flatnonzero(M[:, i])
            if len(row_nz) != 1 or len(col_nz) != 1:
                return fail("conjugated element is not monomial")
            val = int(M[i, row_nz[0]])
            if val != 1 and val != minus_one:
                return fail("monomial entry is not +-1")
    return CheckReport(True)

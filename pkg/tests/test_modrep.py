import numpy as np
import pytest

from orthomono.errors import (
    NotAbelian,
    NotCoprime,
    NotSemisimple,
    ParityViolation,
    ZeroVector,
)
from orthomono.field import GF
from orthomono.form import QuadraticSpace
from orthomono.group import MatrixGroup, is_abelian, orthogonal_group, \
    perm_matrix
from orthomono.linalg import (
    Matrix,
    Subspace,
    extend_scalars,
    primary_components,
    vec,
)
from orthomono.modrep import (
    AlgebraSpan,
    eigen_analysis,
    homogeneous_components,
    homogeneous_components_split,
    is_irreducible,
    pairing_check,
    spin,
    zalesski_dichotomy_check,
)

F3, F5, F7 = GF(3), GF(5), GF(7)
CYCLE3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]


def unit_space(F, n):
    return QuadraticSpace(F, Matrix.identity(F, n))


def diag_sign_group(F, n):
    gens = []
    for i in range(n):
        d = [1] * n
        d[i] = -1
        gens.append(Matrix.diag(F, d))
    return MatrixGroup(gens)


# --- spin -----------------------------------------------------------------


def test_spin_irreducible_gives_whole():
    G = orthogonal_group(unit_space(F3, 3))
    for v in ([1, 0, 0], [1, 1, 0], [1, 2, 2]):
        assert spin(vec(F3, v), G).dim == 3


def test_spin_diagonal_group_fixes_axis():
    G = diag_sign_group(F5, 3)
    s = spin(vec(F5, [1, 0, 0]), G)
    assert s == Subspace(F5, 3, [[1, 0, 0]])


def test_spin_fixed_vector():
    G = MatrixGroup([Matrix(F5, CYCLE3)])
    s = spin(vec(F5, [1, 1, 1]), G)
    assert s.dim == 1


def test_spin_zero_vector_rejected():
    G = MatrixGroup([Matrix(F5, CYCLE3)])
    with pytest.raises(ZeroVector):
        spin(vec(F5, [0, 0, 0]), G)


def test_spin_minimality_exhaustive():
    # every invariant subspace containing v contains spin(v): check against
    # the full lattice of invariant subspaces of a small reducible action
    G = MatrixGroup([Matrix(F3, CYCLE3)])
    from orthomono.linalg import projective_lines
    all_lines = projective_lines(F3, 3)
    spins = {tuple(map(int, v)): spin(v, G) for v in all_lines}
    for v, sv in spins.items():
        for g in G.gens:
            assert sv.image(g) == sv
        for w, sw in spins.items():
            if sw.contains_vec(vec(F3, list(v))):
                assert sw.contains(sv)


# --- irreducibility -----------------------------------------------------------


def test_is_irreducible_plus_minus_identity():
    G = MatrixGroup([Matrix.diag(F3, [2, 2, 2])])
    res = is_irreducible(G)
    assert not res
    assert res.witness == Subspace(F3, 3, [[1, 0, 0]])


def test_is_irreducible_o33():
    assert is_irreducible(orthogonal_group(unit_space(F3, 3)))


def test_is_irreducible_cycle_witness():
    G = MatrixGroup([Matrix(F5, CYCLE3)])
    res = is_irreducible(G)
    assert not res
    # the deterministic line sweep finds the 2-dim invariant complement of
    # span((1,1,1)) first; any proper invariant witness is valid
    assert 0 < res.witness.dim < 3
    fixed = Subspace(F5, 3, [[1, 1, 1]])
    assert res.witness == fixed or res.witness.dim == 2


def test_is_irreducible_witness_is_invariant():
    for G in (MatrixGroup([Matrix(F5, CYCLE3)]),
              diag_sign_group(F5, 3),
              MatrixGroup([Matrix.diag(F3, [2, 2, 2])])):
        res = is_irreducible(G)
        assert not res
        for g in G.gens:
            assert res.witness.image(g) == res.witness


def test_is_irreducible_dim1():
    assert is_irreducible(MatrixGroup([Matrix(F5, [[4]])]))


def _exhaustive_irreducible(G):
    """Reference verdict: spin every line of the module."""
    from orthomono.linalg import projective_lines
    return all(spin(v, G).dim == G.dim
               for v in projective_lines(G.field, G.dim))


def test_is_irreducible_matches_exhaustive_reference():
    from orthomono.group import perm_matrix
    catalog = [
        orthogonal_group(unit_space(F3, 3)),
        MatrixGroup([Matrix(F5, CYCLE3)]),
        MatrixGroup([Matrix(F5, CYCLE3), perm_matrix(F5, (1, 0, 2))]),
        MatrixGroup([Matrix(F5, CYCLE3), Matrix.diag(F5, [4, 1, 1])]),
        diag_sign_group(F5, 3),
        diag_sign_group(F7, 3),
        MatrixGroup([Matrix(F7, CYCLE3), Matrix.diag(F7, [6, 1, 1])]),
        MatrixGroup([Matrix.diag(F3, [2, 2, 2])]),
        MatrixGroup([Matrix(F3, [[0, 1, 0], [2, 0, 0], [0, 0, 1]])]),
        MatrixGroup([perm_matrix(F5, (1, 2, 3, 4, 0)),
                     Matrix.diag(F5, [4, 1, 1, 1, 1])]),
    ]
    for G in catalog:
        assert bool(is_irreducible(G)) == _exhaustive_irreducible(G)


# --- algebra span -----------------------------------------------------------


def test_algebra_span_closure():
    L = MatrixGroup([Matrix(F5, CYCLE3)])
    A = AlgebraSpan(F5, 3, list(L.enumerate()))
    assert A.dim == 3
    A.structure_constants()  # raises if not multiplicatively closed
    eye_flat = np.eye(3, dtype=np.int32)
    assert A.coords(Matrix(F5, eye_flat)) is not None


# --- homogeneous components ----------------------------------------------------


def test_components_scalar_group():
    L = MatrixGroup([Matrix.diag(F3, [2, 2, 2])])
    comps = homogeneous_components(L)
    assert comps == [Subspace.whole(F3, 3)]


def test_components_diagonal_group_axes():
    L = diag_sign_group(F5, 3)
    comps = homogeneous_components(L)
    assert len(comps) == 3
    assert all(c.dim == 1 for c in comps)
    got = {tuple(map(int, c.basis[0])) for c in comps}
    assert got == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_components_cycle_gf5_against_primary_oracle():
    # independent oracle for cyclic L: primary components of the generator
    L = MatrixGroup([Matrix(F5, CYCLE3)])
    comps = homogeneous_components(L)
    oracle = sorted((s for _, s in primary_components(Matrix(F5, CYCLE3))),
                    key=lambda s: s.sort_key())
    assert comps == oracle
    assert sorted(c.dim for c in comps) == [1, 2]


def test_components_invariance_and_sum():
    for L in (diag_sign_group(F5, 3),
              MatrixGroup([Matrix(F7, CYCLE3)]),
              MatrixGroup([Matrix.diag(F7, [6, 6, 1]),
                           Matrix.diag(F7, [1, 6, 6])])):
        comps = homogeneous_components(L)
        total = Subspace.zero(L.field, L.dim)
        for c in comps:
            for g in L.enumerate():
                assert c.image(g) == c
            assert total.sum_with(c).dim == total.dim + c.dim
            total = total.sum_with(c)
        assert total.dim == L.dim


def test_components_not_abelian_rejected():
    G = MatrixGroup([Matrix(F5, CYCLE3), perm_matrix(F5, (1, 0, 2))])
    with pytest.raises(NotAbelian):
        homogeneous_components(G)


def test_components_coprimality_rejected():
    L = MatrixGroup([Matrix(F3, [[1, 1], [0, 1]])])  # order 3 = p
    with pytest.raises(NotCoprime):
        homogeneous_components(L)


def test_components_unequal_dims_and_repeated_characters():
    # components of different sizes: two sign-pair characters tie axes
    # together, one axis stays alone
    F = F3
    L = MatrixGroup([Matrix.diag(F, [2, 2, 1, 1, 1]),
                     Matrix.diag(F, [1, 1, 2, 2, 1])])
    comps = homogeneous_components(L)
    assert sorted(c.dim for c in comps) == [1, 2, 2]
    assert comps == homogeneous_components_split(L)


def test_components_entangled_characters():
    # the trap case for per-generator refinements: a = rot + rot and
    # b = rot + rot^-1 give every generator the same minimal polynomial on
    # both planes (x^2 + 1), yet the planes carry distinct characters and
    # are separate isotypic components
    F = F3
    rot = [[0, 1], [2, 0]]
    rot_inv = [[0, 2], [1, 0]]
    a = np.zeros((4, 4), dtype=np.int32)
    b = np.zeros((4, 4), dtype=np.int32)
    a[:2, :2] = rot
    a[2:, 2:] = rot
    b[:2, :2] = rot
    b[2:, 2:] = rot_inv
    L = MatrixGroup([Matrix(F, a), Matrix(F, b)])
    assert is_abelian(L) and L.order == 8
    from orthomono.linalg import minpoly
    assert minpoly(L.gens[0]) == minpoly(L.gens[1])  # the trap
    comps = homogeneous_components(L)
    plane1 = Subspace(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    plane2 = Subspace(F, 4, [[0, 0, 1, 0], [0, 0, 0, 1]])
    assert set(comps) == {plane1, plane2}
    assert comps == homogeneous_components_split(L)


def test_split_route_agrees():
    cases = [
        MatrixGroup([Matrix.diag(F3, [2, 2, 2])]),
        diag_sign_group(F5, 3),
        MatrixGroup([Matrix(F5, CYCLE3)]),
        MatrixGroup([Matrix(F7, CYCLE3)]),
        # non-cyclic: even sign changes in dim 3
        MatrixGroup([Matrix.diag(F5, [4, 4, 1]), Matrix.diag(F5, [1, 4, 4])]),
        # a rotation block plus a fixed axis
        MatrixGroup([Matrix(F3, [[0, 1, 0], [2, 0, 0], [0, 0, 1]])]),
        # rotation block with a sign on the fixed axis (order 4 times 2)
        MatrixGroup([Matrix(F3, [[0, 1, 0], [2, 0, 0], [0, 0, 2]])]),
    ]
    for L in cases:
        assert homogeneous_components(L) == homogeneous_components_split(L)


# --- eigen analysis -----------------------------------------------------------


def test_eigen_minus_identity():
    s = unit_space(F3, 3)
    E = eigen_analysis(Matrix.diag(F3, [2, 2, 2]), s)
    assert E.split_field is F3
    assert E.eigenvalues == (2,)
    assert E.eigenspaces[2].dim == 3


def test_eigen_rotation_plus_axis():
    s = unit_space(F3, 3)
    f = Matrix(F3, [[0, 1, 0], [2, 0, 0], [0, 0, 1]])
    E = eigen_analysis(f, s)
    K = E.split_field
    assert (K.p, K.k) == (3, 2)
    r = K.encode((0, 1))
    assert set(E.eigenvalues) == {1, r, K.neg(r)}
    assert sorted(map(len, E.orbits)) == [1, 2]
    # orbit sums descend to the expected rational components
    rats = sorted(E.rational_components.values(),
                  key=lambda s_: s_.sort_key())
    assert rats[0] == Subspace(F3, 3, [[0, 0, 1]])
    assert rats[1] == Subspace(F3, 3, [[1, 0, 0], [0, 1, 0]])
    for orb, Z in E.rational_components.items():
        assert extend_scalars(Z, K) == E.orbit_sums[orb]


def test_eigen_cycle_gf7():
    s = unit_space(F7, 3)
    E = eigen_analysis(Matrix(F7, CYCLE3), s)
    assert E.split_field is F7
    assert E.eigenvalues == (1, 2, 4)
    assert all(len(o) == 1 for o in E.orbits)


def test_eigen_single_orbit_for_homogeneous_restriction():
    # an irreducible characteristic polynomial means the module is
    # homogeneous under <f>, and then all eigenvalues are one Galois orbit
    from orthomono.field import Poly, poly_factor
    from orthomono.linalg import charpoly
    s = unit_space(F3, 3)
    f = Matrix(F3, [[0, 0, 2], [1, 0, 1], [0, 1, 0]])  # companion matrix
    cp = charpoly(f)
    assert len(poly_factor(cp)) == 1 and poly_factor(cp)[0][0].degree == 3
    E = eigen_analysis(f, s)
    assert len(E.orbits) == 1 and len(E.orbits[0]) == 3
    assert (E.split_field.p, E.split_field.k) == (3, 3)


def test_eigen_rejects_unipotent():
    s = unit_space(F3, 2)
    with pytest.raises(NotSemisimple):
        eigen_analysis(Matrix(F3, [[1, 1], [0, 1]]), s)


def test_eigen_analysis_relative_base_field():
    # base field GF(9): splitting happens in GF(81) and descent lands back
    # in GF(9)
    from orthomono.field import Poly, poly_factor
    F9 = GF(3, 2)
    s = unit_space(F9, 3)
    irr = None
    for c0 in range(1, 9):
        for c1 in range(9):
            f = Poly(F9, (c0, c1, 1))
            if len(poly_factor(f)) == 1 and poly_factor(f)[0][0].degree == 2:
                irr = f
                break
        if irr:
            break
    # companion block of the irreducible quadratic, plus a fixed axis;
    # made an isometry of a suitable diagonal form only if lucky, so attach
    # no form requirement here and call the analysis directly
    comp = Matrix(F9, [[0, F9.neg(irr.coeffs[0]), 0],
                       [1, F9.neg(irr.coeffs[1]), 0],
                       [0, 0, 1]])
    E = eigen_analysis(comp, s)
    K = E.split_field
    assert (K.p, K.k) == (3, 4)
    assert sorted(len(o) for o in E.orbits) == [1, 2]
    two = next(o for o in E.orbits if len(o) == 2)
    Z = E.rational_components[two]
    assert Z.field == F9 and Z.dim == 2
    from orthomono.linalg import extend_scalars
    assert extend_scalars(Z, K) == E.orbit_sums[two]


# --- pairing --------------------------------------------------------------------


def test_pairing_identity():
    s = unit_space(F5, 3)
    pairs = pairing_check(eigen_analysis(Matrix.identity(F5, 3), s), s)
    assert [(a.idx, b.idx) for a, b in pairs] == [(1, 1)]


def test_pairing_rotation():
    s = unit_space(F3, 3)
    f = Matrix(F3, [[0, 1, 0], [2, 0, 0], [0, 0, 1]])
    E = eigen_analysis(f, s)
    K = E.split_field
    pairs = {(a.idx, b.idx) for a, b in pairing_check(E, s)}
    r = K.encode((0, 1))
    assert pairs == {(1, 1), (min(r, K.neg(r)), max(r, K.neg(r)))}
    assert K.mul(r, K.neg(r)) == 1


def test_pairing_involution():
    s = unit_space(F5, 3)
    f = Matrix.diag(F5, [4, 1, 1])
    pairs = {(a.idx, b.idx) for a, b in pairing_check(eigen_analysis(f, s), s)}
    assert pairs == {(1, 1), (4, 4)}


# --- dichotomy ---------------------------------------------------------------------


def test_dichotomy_single_component():
    s = unit_space(F5, 3)
    D = zalesski_dichotomy_check([Subspace.whole(F5, 3)], s)
    assert D.k == 1


def test_dichotomy_axes():
    s = unit_space(F5, 3)
    comps = homogeneous_components(diag_sign_group(F5, 3))
    D = zalesski_dichotomy_check(comps, s)
    assert D.k == 3 and D.part_dim == 1


def test_dichotomy_hyperbolic_parity_violation():
    # n even: f = diag(2, 1/2) preserves the antidiagonal form and its
    # eigenlines are isotropic, exercising the forbidden branch
    s = QuadraticSpace(F5, [[0, 1], [1, 0]])
    f = Matrix.diag(F5, [2, F5.inv(2)])
    from orthomono.form import is_isometry
    assert is_isometry(f, s)
    comps = [Subspace(F5, 2, [[1, 0]]), Subspace(F5, 2, [[0, 1]])]
    with pytest.raises(ParityViolation):
        zalesski_dichotomy_check(comps, s)

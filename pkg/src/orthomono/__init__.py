"""Orthogonal decompositions and signed-monomial certificates for finite
solvable matrix groups over small odd finite fields."""

from .errors import AlgebraError
from .field import GF, FieldElem, FieldSpec, Poly, frobenius_orbit, \
    is_square, poly_factor, splitting_field
from .form import (
    OrthoDecomposition,
    QuadraticSpace,
    all_ortho_line_decompositions,
    diagonalize_scalar,
    is_isometry,
    radical,
    validate_decomposition,
)
from .group import (
    MatrixGroup,
    PermGroup,
    abelian_normal_term,
    derived_series,
    element_order,
    fixed_space,
    is_abelian,
    is_solvable,
    orthogonal_group,
    perm_image,
    setwise_stabilizer,
)
from .linalg import Matrix, Subspace, charpoly, extend_scalars, kernel, \
    minpoly, primary_components, rational_form, rref
from .modrep import (
    eigen_analysis,
    homogeneous_components,
    homogeneous_components_split,
    is_irreducible,
    pairing_check,
    spin,
    zalesski_dichotomy_check,
)
from .monomial import MonomialCertificate, check_certificate, \
    find_invariant_decomposition, monomialize
from .wreath import (
    WreathSpec,
    conjugate_into_wreath,
    gamma_l1,
    maximality_check,
    o2minus,
    transitive_solvable_subgroups,
    uniqueness_oracle,
    wreath_construct,
)

__version__ = "0.1.0"

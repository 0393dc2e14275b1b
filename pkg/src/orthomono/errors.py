"""Exception hierarchy shared by all modules.

Errors fall into four families, and the CLI maps each family to a fixed
exit code: parse errors (1), violated hypotheses of the main results (2),
violated internal invariants, i.e. things that are provably impossible for
valid inputs (3), and resource bounds (4).
"""


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


# --- field / linear algebra -------------------------------------------------

class FieldMismatch(AlgebraError):
    """Operands live in different fields (or no embedding relates them)."""


class DivisionByZero(AlgebraError):
    pass


class ZeroInput(AlgebraError):
    pass


class ZeroVector(AlgebraError):
    pass


class NonSquare(AlgebraError):
    """A square matrix was required."""


class DimensionMismatch(AlgebraError):
    pass


class NoEmbedding(AlgebraError):
    """The target field does not contain the source field."""


class NotGaloisStable(AlgebraError):
    """Subspace over the extension is not stable under the Frobenius map."""


# --- quadratic forms ----------------------------------------------------------

class CharacteristicTwo(AlgebraError):
    """Characteristic 2 is rejected: in odd dimension the polarization of a
    quadratic form has a nonzero radical, so the geometry degenerates."""


class DegenerateForm(AlgebraError):
    pass


class EvenDimension(AlgebraError):
    """A scalar diagonal form is only guaranteed in odd dimension."""


class NonScalarForm(AlgebraError):
    """The Gram matrix was required to be c times the identity."""


class NotIsometry(AlgebraError):
    pass


class NotInvariant(AlgebraError):
    """A group element moves a subspace outside the given decomposition."""


# --- groups -------------------------------------------------------------------

class BoundExceeded(AlgebraError):
    """Element enumeration passed the configured size bound."""


class TooLarge(AlgebraError):
    """An exhaustive sweep would exceed its enumeration bound."""


class TrivialGroup(AlgebraError):
    pass


class NotAbelian(AlgebraError):
    pass


class NotCoprime(AlgebraError):
    """The field characteristic divides the group order where the theory
    requires coprimality; for valid inputs this cannot happen."""


# --- representation analysis ---------------------------------------------------

class NotSemisimple(AlgebraError):
    """Minimal polynomial is not squarefree where coprimality promised it."""


class NoSuitableWord(AlgebraError):
    """Irreducibility search exhausted its word list and the exhaustive
    fallback is over the line-count bound."""


class ParityViolation(AlgebraError):
    """Isotypic components pair isotropically, which is impossible in odd
    dimension; signals a broken hypothesis or an implementation bug."""


# --- main algorithm -------------------------------------------------------------

class HypothesisViolated(AlgebraError):
    """Input fails a stated hypothesis (dimension parity, solvability,
    irreducibility, isometry).  Carries a short machine-readable reason."""

    def __init__(self, reason, detail=""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}" + (f": {detail}" if detail else ""))


class InvariantViolation(AlgebraError):
    """A mathematically impossible situation occurred; always a reportable
    bug or a corrupted input, never a normal failure mode."""


class CertificateCheckFailed(AlgebraError):
    """The produced monomial certificate failed post-verification."""


# --- cli -------------------------------------------------------------------------

class ParseError(AlgebraError):
    pass

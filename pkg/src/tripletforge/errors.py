"""Exception types raised across the library.

Validation routines that produce certificates never raise on a failed
mathematical check; they record it.  Exceptions are reserved for inputs
that make a construction meaningless (wrong shapes, non-positive Grams,
rank collapse) or for conversions whose hypotheses are violated.
"""

__all__ = [
    "TripletForgeError",
    "NonFinite",
    "NotHermitian",
    "NotPSD",
    "NotPositive",
    "SpaceMismatch",
    "IndexMismatch",
    "ZeroOperator",
    "NotInRange",
    "NotInjective",
    "NotSpanning",
    "FactorizationResidual",
    "FactorMismatch",
    "SharedEmbeddingMismatch",
    "NotContractive",
    "NotBoundedlyInvertible",
    "BridgeFailure",
    "BadWeight",
    "Overflow",
]


class TripletForgeError(Exception):
    """Base class for all library errors."""


class NonFinite(TripletForgeError):
    """A matrix or vector contains NaN or Inf entries."""


class NotHermitian(TripletForgeError):
    """Symmetry residual of a supposedly Hermitian matrix exceeds tolerance."""


class NotPSD(TripletForgeError):
    """An eigenvalue lies below the positive-semidefinite tolerance floor."""


class NotPositive(TripletForgeError):
    """An operator or Gram matrix required to be positive definite is not."""


class SpaceMismatch(TripletForgeError):
    """Two vectors or operators do not live on compatible spaces."""


class IndexMismatch(TripletForgeError):
    """Weighted spaces with different index enumerations were combined."""


class ZeroOperator(TripletForgeError):
    """The zero operator generates no energy or range space."""


class NotInRange(TripletForgeError):
    """A vector fails the range-membership test of the dual-norm formula."""


class NotInjective(TripletForgeError):
    """An embedding-shaped operator has a nontrivial null space."""


class NotSpanning(TripletForgeError):
    """An embedding's range does not span its codomain."""


class FactorizationResidual(TripletForgeError):
    """A coisometry factorization failed to reproduce the operator."""


class FactorMismatch(TripletForgeError):
    """A user-supplied factor does not multiply back to the Hamiltonian."""


class SharedEmbeddingMismatch(TripletForgeError):
    """Two triplets expected to share their left embedding do not."""


class NotContractive(TripletForgeError):
    """The pairing bound fails: the induced operator is not a contraction.

    Attributes carry a violating pair so certificates can expose it.
    """

    def __init__(self, message, margin=None, witness_phi=None, witness_u=None):
        super().__init__(message)
        self.margin = margin
        self.witness_phi = witness_phi
        self.witness_u = witness_u


class NotBoundedlyInvertible(TripletForgeError):
    """The pairing operator has no bounded inverse at the working tolerance."""

    def __init__(self, message, sigma_min=None, sigma_max=None):
        super().__init__(message)
        self.sigma_min = sigma_min
        self.sigma_max = sigma_max


class BridgeFailure(TripletForgeError):
    """A closely-embedded triplet fails the pairing bound needed to convert it.

    Carries the violating vectors so the failed inequality can be re-checked
    by hand from the certificate.
    """

    def __init__(self, message, margin=None, witness_phi=None, witness_u=None):
        super().__init__(message)
        self.margin = margin
        self.witness_phi = witness_phi
        self.witness_u = witness_u


class BadWeight(TripletForgeError):
    """A weight is non-positive, non-finite, or otherwise unusable."""


class Overflow(TripletForgeError):
    """A derived weight left the representable floating-point range."""

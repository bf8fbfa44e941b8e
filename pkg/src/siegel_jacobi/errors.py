"""Exception types shared across the package.

Every failure mode has its own class so callers (and the CLI) can map an
exception to a machine-readable error kind via ``type(exc).__name__``.
"""


class GeometryError(Exception):
    """Base class for all domain/geometry errors raised by this package."""


class NonSymmetric(GeometryError):
    """Matrix expected to be (complex) symmetric is not, beyond tolerance."""


class NotInBall(GeometryError):
    """Point fails the bounded-domain condition 1 - W Wbar > 0."""


class NotInUpperHalfPlane(GeometryError):
    """Point fails the condition Im V > 0."""


class IndexOutOfRange(GeometryError):
    """A 1-based matrix index lies outside 1..n."""


class DimensionMismatch(GeometryError):
    """Operands built for different dimensions n."""


class InvalidInput(GeometryError):
    """Constructor invariants violated beyond tolerance."""


class SingularDenominator(GeometryError):
    """A matrix that is invertible on the domain came out numerically singular."""


class RejectionLimit(GeometryError):
    """Rejection sampling exceeded its retry budget."""


class BranchAmbiguity(GeometryError):
    """det^(k/2) branch tracking crossed the negative real axis; the value
    would depend on an arbitrary branch choice, so it is reported instead."""


class GammaPoleError(GeometryError):
    """A Gamma-function argument in the normalization constant is <= 0."""


class NotConverged(GeometryError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class StepTooLarge(GeometryError):
    """A finite-difference stencil would leave the domain."""


class NonHolomorphic(GeometryError):
    """Numerical Jacobian detected a non-vanishing dbar block for a map
    expected to be holomorphic."""

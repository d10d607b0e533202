"""Exception and warning types shared across the package.

Every error raised on purpose derives from OrderedBetaError so callers can
catch one base class at API boundaries (the CLI maps it to exit code 2).
"""


class OrderedBetaError(ValueError):
    """Base class for all validation and domain failures."""


class NonPositiveParameter(OrderedBetaError):
    """A shape parameter was zero or negative."""


class LengthMismatch(OrderedBetaError):
    """Paired parameter sequences differ in length (or one is empty)."""


class NonFiniteParameter(OrderedBetaError):
    """A parameter or argument was NaN or infinite."""


class DomainError(OrderedBetaError):
    """An evaluation point lies outside the domain of the requested operation."""


class MomentDomainError(OrderedBetaError):
    """A moment exponent shift would push a shape parameter to zero or below."""


class OverflowDomain(OrderedBetaError):
    """Arguments outside the range where the classical beta function fits in a double."""


class DimensionTooLarge(OrderedBetaError):
    """Tensor quadrature requested for more levels than it can afford."""


class RejectionStall(OrderedBetaError):
    """Rejection sampler acceptance rate collapsed below the configured floor."""


class PrecisionWarning(UserWarning):
    """Machine-double series arithmetic is expected to lose digits for these inputs."""

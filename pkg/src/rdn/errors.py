"""Exception types shared across the library."""


class RdnError(Exception):
    """Base class for all errors raised by this package."""


class InvalidMatrix(RdnError):
    """Matrix has a malformed shape or non-finite entries."""


class SpectrumDomainError(RdnError):
    """A scalar function was applied outside the domain of the spectrum."""


class SingularOperator(RdnError):
    """A linear operator that must be invertible is numerically singular."""


class DimMismatch(RdnError):
    """Operands have incompatible dimensions."""


class InvalidPoint(RdnError):
    """A matrix required to be symmetric positive definite is not."""


class StepOverflow(RdnError):
    """An exponential-map step left the numerically representable cone."""


class InvalidRange(RdnError):
    """An invalid (low, high) spectrum range was requested."""


class StationaryOfMerit(RdnError):
    """Zero search direction at a point that is not a singularity."""

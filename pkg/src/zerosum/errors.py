"""Exception hierarchy shared by every module."""


class ZeroSumError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ZeroSumError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ResourceError(ZeroSumError):
    """A request exceeds a size gate (search space, degree, variable count)."""


class VerificationFailure(ZeroSumError):
    """A checked mathematical statement failed on a concrete input."""

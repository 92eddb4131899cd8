"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class InvalidDegreeError(ValueError):
    """A declared degree is smaller than the actual polynomial degree."""


class SizeError(ValueError):
    """A problem is too large for exact enumeration."""


class AccuracyError(RuntimeError):
    """A numerical routine failed to reach its accuracy target.

    The achieved error estimate is stored on ``estimate``.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class CertificationError(AssertionError):
    """An exact identity failed to hold.

    ``differences`` maps exponent pairs to the offending coefficients.
    """

    def __init__(self, message, differences=None):
        super().__init__(message)
        self.differences = differences or {}

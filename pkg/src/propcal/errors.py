"""Exception types shared across the package."""


class PropcalError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PropcalError, ValueError):
    """A numeric input violates a model or metric precondition.

    Examples: non-positive frequency, SUI evaluated at or below its
    reference distance, a correlation over a zero-variance series.
    """


class DataError(PropcalError, ValueError):
    """Malformed or inconsistent input data.

    Examples: a CSV header that does not match the drive-test format,
    a non-numeric cell, misaligned measurement/prediction series.
    """

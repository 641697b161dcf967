"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(RuntimeError):
    """A configured size cap (iterate depth, degree) would be exceeded."""


class InconsistencyError(AssertionError):
    """An internal self-check failed. Indicates a bug, never bad input."""

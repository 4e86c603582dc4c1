"""Exception hierarchy shared by every module."""


class YBEError(Exception):
    """Base class for library errors."""


class DomainError(YBEError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UsageError(YBEError, ValueError):
    """An operation was called with an incomplete or inconsistent request."""


class UnsupportedGroupError(YBEError, ValueError):
    """The requested group is not covered by any implemented brace family."""


class ResourceBoundError(YBEError, RuntimeError):
    """A configured size bound would be exceeded."""

    def __init__(self, what, size, bound, name):
        super().__init__(f"{what} of size {size} exceeds {name}={bound}")
        self.size = size
        self.bound = bound
        self.name = name


class BraceAxiomError(DomainError):
    """A table does not define a brace; ``triple`` holds the first violation."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class ConstructionError(YBEError):
    """A constructed solution failed validation."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class InternalConsistencyError(YBEError):
    """Two independent computations that must agree did not."""

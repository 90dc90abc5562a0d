"""Exception types shared across the package."""


class HJFError(Exception):
    """Base class for all library errors."""


class DecompositionError(HJFError):
    """An expansion does not admit a theta decomposition.

    ``witness`` holds the first offending position and the two disagreeing
    coefficients, when available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SupportError(HJFError):
    """A component vector violates the support law for its index."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InsufficientPrecision(HJFError):
    pass


class UnsupportedRange(HJFError):
    """A quoted dimension formula was asked for outside its validity range."""


class FormatError(HJFError):
    """Malformed serialized data."""

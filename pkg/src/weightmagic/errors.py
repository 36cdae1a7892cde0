"""Exception types shared across the package."""


class WeightMagicError(Exception):
    """Base class for every error this package raises on purpose."""


class ParseError(WeightMagicError, ValueError):
    """Malformed textual input (weight systems, monomials, matrices)."""


class ValidationError(WeightMagicError, ValueError):
    """Well-formed input that violates a defining relation or constraint."""


class SingularMatrixError(WeightMagicError):
    """A matrix that must be inverted has determinant zero."""


class DegenerateSupportError(WeightMagicError):
    """More rows are supported on a column subset than the subset's size,
    so the square sub-determinant in the zeta formula is ill-defined."""


class DomainError(WeightMagicError):
    """A formula was applied outside its domain (non-dividing order,
    non-integral exponent, nonzero exponent sum at t = 1, ...)."""


class SearchCapExceeded(WeightMagicError):
    """Search stopped early because the result cap was reached.

    The ``partial`` attribute holds the (flagged, incomplete) results
    collected before the cap fired.
    """

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class CatalogError(WeightMagicError):
    """The embedded data file is missing, malformed, or inconsistent."""

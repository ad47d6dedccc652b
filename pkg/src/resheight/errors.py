"""Exception types shared across the package."""


class ResHeightError(Exception):
    """Base class for all package errors."""


class UniverseMismatchError(ResHeightError, ValueError):
    """Two polynomials (or a polynomial and a monomial) live over different variable sets."""


class FeasibilityError(ResHeightError):
    """The requested size is outside the supported computation envelope."""

    def __init__(self, message, **dims):
        self.dims = dims
        if dims:
            detail = ", ".join(f"{k}={v}" for k, v in dims.items())
            message = f"{message} ({detail})"
        super().__init__(message)


class DomainError(ResHeightError, ValueError):
    """Argument outside the mathematical domain of a formula."""


class BracketError(ResHeightError, ValueError):
    """Root bracket without a sign change."""


class UnsupportedIndexError(ResHeightError, ValueError):
    """No coefficient formula is available for the requested index."""

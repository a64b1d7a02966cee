"""Exception types shared across the package."""


class RiderPolyError(Exception):
    """Base class for all package-specific errors."""


class MoveSetError(RiderPolyError):
    """Invalid move data: zero vector, non-coprime coordinates, parallel moves."""


class BoardError(RiderPolyError):
    """Invalid board: unbounded, degenerate, or redundant inequality system."""


class CapacityError(RiderPolyError):
    """A computation would exceed its configured resource budget.

    Raised *before* producing a wrong or partial answer.  The optional
    ``context`` attribute carries machine-readable details (e.g. the board
    size ``n`` at which a series run hit the cap).
    """

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context


class AttackingConfigurationError(RiderPolyError):
    """A configuration violates the nonattacking requirement."""


class FitError(RiderPolyError):
    """Quasipolynomial fitting failed."""


class InsufficientDataError(FitError):
    """Not enough table rows per residue class to interpolate and validate."""


class ValidationMismatchError(FitError):
    """A held-out table value disagrees with the interpolated constituent.

    Signals a wrong period guess or corrupted counts.  ``residuals`` maps
    each failing point to (expected, actual).
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals or {}


class PeriodNotFoundError(FitError):
    """No candidate period fit the table within the allowed range."""

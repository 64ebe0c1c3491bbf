"""Exception hierarchy shared by the fitters, the generator and the CLI."""


class SphereFitError(Exception):
    """Base class for everything raised by this package."""


class InvalidInputError(SphereFitError, ValueError):
    """Input data is malformed or contains non-finite coordinates."""


class PointFileError(InvalidInputError):
    """A point file could not be read or has a malformed row."""

    def __init__(self, message, row=None):
        super().__init__(message if row is None else f"row {row}: {message}")
        self.row = row


class InsufficientPointsError(SphereFitError):
    """Fewer points than the four needed to determine a sphere."""


class DegenerateGeometryError(SphereFitError):
    """The center system is singular (coplanar or collinear data)."""


class NumericalDegeneracyError(SphereFitError):
    """The recovered squared radius is negative or zero."""

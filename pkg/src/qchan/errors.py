"""Exception hierarchy shared across the package.

CLI exit-code mapping: ``UsageError`` (and subclasses) and ``ValidationError``
terminate with status 2, ``NumericalError`` with status 3.
"""


class QchanError(Exception):
    """Base class for all package errors."""


class UsageError(QchanError):
    """Bad call: out-of-range parameter, dimension mismatch, parse failure."""


class CapacityError(UsageError):
    """Composite dimension exceeds the configured cap."""


class ValidationError(QchanError):
    """An object violates one of its construction invariants."""


class NotPositiveError(ValidationError):
    """A matrix required to be positive semidefinite has a genuinely negative eigenvalue."""

    def __init__(self, message: str, eigenvalue: float):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NotCompletelyPositiveError(ValidationError):
    """A map fails complete positivity; carries the certifying eigenvalue."""

    def __init__(self, message: str, eigenvalue: float):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class StructureError(ValidationError):
    """A unitary family lacks the algebraic structure an operation requires."""


class NumericalError(QchanError):
    """A numerical routine failed to produce a usable result."""

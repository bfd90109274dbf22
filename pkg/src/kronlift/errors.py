"""Exception hierarchy shared by all kronlift modules."""


class KronliftError(Exception):
    """Base class for every error raised by this package."""

    code = "E_INTERNAL"


class DimensionError(KronliftError, ValueError):
    """Operand shapes or lengths are inconsistent."""

    code = "E_DIMENSION"


class DomainError(KronliftError, ValueError):
    """An argument lies outside the operation's domain."""

    code = "E_DOMAIN"


class CapacityError(KronliftError):
    """A requested result would exceed the configured size cap."""

    code = "E_CAPACITY"


class DegenerateLiftError(KronliftError):
    """The system is purely linear, so there is nothing to lift."""

    code = "E_DEGENERATE_LIFT"


class SingularSystemError(KronliftError):
    """A linear solve hit a structurally singular matrix."""

    code = "E_SINGULAR"


class NumericalFailureError(KronliftError):
    """A numerical routine failed to converge or produced non-finite values."""

    code = "E_NUMERIC"


class SystemFileError(KronliftError, ValueError):
    """A system or problem file failed to parse or validate."""

    code = "E_PARSE"

    def __init__(self, message, field=None):
        if field is not None:
            message = f"field '{field}': {message}"
        super().__init__(message)
        self.field = field

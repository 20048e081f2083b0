"""Exception hierarchy shared by the kernel, the deciders and the CLI."""

from typing import Any


class RieszError(Exception):
    """Base class for every error raised by the package."""


class ArgumentError(RieszError, ValueError):
    """Dimension mismatch, empty input set or an otherwise unusable argument."""


class ParseError(RieszError):
    """Malformed rational, model file or report file."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class ModelValidationError(RieszError):
    """A model spec that does not describe a pointed generating cone."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class StructuralError(RieszError):
    """An operation was asked of a cone lacking the structure it needs."""


class CapacityError(RieszError):
    """A configured limit was exceeded."""

    def __init__(self, limit: str, value: int, maximum: int):
        super().__init__(f"{limit} = {value} exceeds the configured maximum {maximum}")
        self.limit = limit
        self.value = value
        self.maximum = maximum


class PreconditionError(RieszError):
    """A checker was called outside its documented precondition."""


class CoverConstructionError(RieszError):
    """The canonical functional representation failed verification."""

    def __init__(self, message: str, verification: Any = None):
        super().__init__(message)
        self.verification = verification


class InvariantViolation(RieszError):
    """Two independent computations of the same fact disagreed."""


class SearchBudgetExceeded(RieszError):
    """A randomized construction ran out of attempts."""

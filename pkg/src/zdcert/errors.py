"""Shared exception types."""


class MismatchError(ValueError):
    """Operands live over different ground data (field parameter d, order, or monoid)."""


class ResourceLimitError(RuntimeError):
    """A configured size bound was exceeded."""


class DeductionRefused(ValueError):
    """An endomorphism-ring deduction was attempted with a missing or negative certificate."""


class InvalidEigenvalueError(ValueError):
    """A Hecke eigenvalue fails the Weil bound or integrality."""


class InputDataError(ValueError):
    """A verification input file failed to parse or violated a structural invariant."""

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location

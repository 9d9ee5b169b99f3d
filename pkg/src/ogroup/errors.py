"""Exception hierarchy."""


class OmegaGroupError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(OmegaGroupError):
    """Input data violates a structural axiom or an operation precondition."""


class CapExceededError(OmegaGroupError):
    """An order cap was exceeded. Callers can retry with a larger cap."""

    def __init__(self, message: str, *, limit: int | None = None, needed: int | None = None):
        super().__init__(message)
        self.limit = limit
        self.needed = needed


class EngineInvariantError(OmegaGroupError):
    """An internal cross-check failed. This signals a bug, never bad input."""


class DslError(ValidationError):
    """Located parse or elaboration error in the group description language."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        self.bare_message = message
        if line is not None and col is not None:
            message = f"line {line}, column {col}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

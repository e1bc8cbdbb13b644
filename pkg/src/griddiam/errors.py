"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad arguments or malformed input supplied by the caller."""


class ParseError(UsageError):
    """A point file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantError(RuntimeError):
    """An internal invariant was violated; indicates a bug, not bad input."""

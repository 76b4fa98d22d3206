"""Exception types shared across the package."""


class InputError(ValueError):
    """Bad user input: malformed data, dimension mismatch, wrong ring, ..."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message)


class InsufficientWindow(RuntimeError):
    """A certificate was requested but the degree window is too small."""

    def __init__(self, message, required=None):
        self.required = required
        if required is not None:
            message = f"{message} (need D >= {required})"
        super().__init__(message)


class InvariantBreach(AssertionError):
    """Two routes that must agree did not; this is a bug, not a user error."""

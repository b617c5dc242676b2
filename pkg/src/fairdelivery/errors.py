"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An input violates the documented preconditions of an operation."""


class ParseError(ValueError):
    """Malformed instance or allocation text.

    ``line`` is the 1-based line number of the offending line, or ``None``
    when the problem concerns the file as a whole.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(RuntimeError):
    """A configured enumeration or work guard would be exceeded."""

    def __init__(self, message, bound=None):
        self.bound = bound
        super().__init__(message)

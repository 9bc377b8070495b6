"""Exception types shared by every module."""


class TigroupsError(Exception):
    """Base class for all library errors."""


class InvalidInput(TigroupsError):
    """Raised when arguments violate a documented precondition."""


class BoundExceeded(TigroupsError):
    """Raised when a computation would exceed a configured search bound.

    bound is the configured limit, needed the size that tripped it (when
    known). Callers that sweep many inputs catch this and record a SKIPPED
    verdict instead of aborting.
    """

    def __init__(self, message, *, bound=None, needed=None):
        super().__init__(message)
        self.bound = bound
        self.needed = needed


class ParseError(TigroupsError):
    """Raised on malformed serialized documents.

    line and column are 1-based when the underlying decoder reports them,
    None otherwise (e.g. a schema violation found after decoding).
    """

    def __init__(self, message, *, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column

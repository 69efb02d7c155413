"""Exception hierarchy shared by the library and the command line."""


class ExtractaError(Exception):
    """Base class for all library errors."""


class RingMismatchError(ExtractaError, ValueError):
    pass


class OrderError(ExtractaError, ValueError):
    """Raised for malformed or rank-deficient order matrices."""


class RefusedError(ExtractaError):
    """A mathematically undefined request, e.g. a dimension surrogate
    asked for under a non-control order."""


class DecompositionError(ExtractaError, ValueError):
    pass


class ParseError(ExtractaError, ValueError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)

"""Exception hierarchy shared by every idealsync module."""


class IdealSyncError(Exception):
    """Base class for all errors raised by idealsync."""


class InputError(IdealSyncError, ValueError):
    """Malformed or out-of-range input, or a violated construction precondition."""


class ParseError(InputError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ResourceLimitError(IdealSyncError, RuntimeError):
    """A configured size cap (subset BFS, exhaustive enumeration) would be exceeded."""


class InvariantError(IdealSyncError, RuntimeError):
    """An internal consistency check failed. Always indicates a bug."""

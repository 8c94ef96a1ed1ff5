"""Exception hierarchy shared by every module.

The CLI maps these onto process exit codes; library callers can catch
``TokenGraphError`` to handle all of them at once.
"""


class TokenGraphError(Exception):
    """Base class for all errors raised by tokengraph."""


class PreconditionError(TokenGraphError, ValueError):
    """An operation was called outside its documented domain."""


class GraphFormatError(TokenGraphError, ValueError):
    """Edge-list text or a generator spec could not be parsed."""


class CapExceededError(TokenGraphError):
    """An enumeration would exceed a configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class ConfigurationError(TokenGraphError):
    """Settings or CLI flags hold invalid values."""


EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CAP = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit code."""
    if isinstance(exc, CapExceededError):
        return EXIT_CAP
    if isinstance(exc, (PreconditionError, GraphFormatError, ConfigurationError)):
        return EXIT_PRECONDITION
    if isinstance(exc, OSError):
        return EXIT_IO
    return EXIT_FAIL

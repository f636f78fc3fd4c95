"""Exception hierarchy shared by every module.

Each error carries a stable ``code`` string so callers (and the CLI) can
dispatch on the failure kind without parsing messages.
"""

from __future__ import annotations


class GrossporoError(Exception):
    code = "ERROR"


class GrossUnsupported(GrossporoError, ValueError):
    """The expression leaves the supported gross-number fragment."""

    code = "GROSS_UNSUPPORTED"


class NonIntegerExponent(GrossporoError, ValueError):
    code = "GROSS_NONINTEGER_EXPONENT"


class DomainError(GrossporoError, ValueError):
    code = "DOMAIN_ERROR"


class TransformError(GrossporoError, ValueError):
    """Log-log transform hit a nonpositive argument.

    ``offending`` holds ``(index, h, theta)`` for every bad point.
    """

    code = "TRANSFORM_ERROR"

    def __init__(self, message: str, offending: list[tuple[int, float, float]]):
        super().__init__(message)
        self.offending = offending


class FitError(GrossporoError, ValueError):
    code = "FIT_ERROR"


class DataError(GrossporoError, ValueError):
    code = "DATA_ERROR"


class LexError(GrossporoError, ValueError):
    code = "LEX_ERROR"

    def __init__(self, position: int, found: str):
        super().__init__(f"unexpected character {found!r} at position {position}")
        self.position = position
        self.found = found


class ParseError(GrossporoError, ValueError):
    code = "PARSE_ERROR"

    def __init__(self, position: int, expected: str, found: str):
        shown = found if found else "end of input"
        super().__init__(f"expected {expected} at position {position}, found {shown!r}")
        self.position = position
        self.expected = expected
        self.found = found

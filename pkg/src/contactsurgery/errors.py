"""Exception hierarchy.

Every domain error carries a ``details`` mapping so the command line can emit a
structured diagnostic naming the variant.
"""

from __future__ import annotations

from typing import Any


class ContactSurgeryError(Exception):
    """Base class for all domain and validation errors (CLI exit code 1)."""

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def variant(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.variant, "message": self.message, "details": self.details}


class InvalidComplex(ContactSurgeryError):
    pass


class NotASubcomplex(ContactSurgeryError):
    pass


class ParseError(ContactSurgeryError):
    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}", line=line, reason=reason)
        self.line = line
        self.reason = reason


class ValidationError(ContactSurgeryError):
    pass


class EmptyHomology(ContactSurgeryError):
    pass


class SlopeTooSmall(ContactSurgeryError):
    pass


class NotFibered(ContactSurgeryError):
    pass


class NonCoprime(ContactSurgeryError):
    pass


class NonPositiveSlope(ContactSurgeryError):
    pass


class SlopeNotAbove(ContactSurgeryError):
    pass


class Indeterminate(ContactSurgeryError):
    pass


class UnknownGenerator(ContactSurgeryError):
    pass


class OracleMismatch(ContactSurgeryError):
    """Raised when an ``--oracle`` recomputation disagrees with the direct route."""

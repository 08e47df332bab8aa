"""Exception types shared across the package.

Three failure modes are kept apart on purpose:

* ``DomainError``     -- the input violates a documented precondition
                         (unknown edge id, empty shore, degree mismatch).
* ``CapabilityError`` -- the input is valid but too large for an exact
                         answer at the configured limits; never a wrong
                         answer, always a loud refusal.
* ``VerificationError`` -- an internal consistency check failed, e.g. a
                         construction trace does not satisfy one of its
                         claimed properties.  Carries the name of the
                         failed check.
"""


class MatchcoverError(Exception):
    """Base class for all package errors."""


class DomainError(MatchcoverError, ValueError):
    """Input outside the documented domain of an operation."""


class CapabilityError(MatchcoverError, RuntimeError):
    """Exact computation refused: input exceeds a configured size/budget limit."""


class ParseError(MatchcoverError, ValueError):
    """Malformed graph text input."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class VerificationError(MatchcoverError, AssertionError):
    """A verified property failed; ``check`` names the failing check."""

    def __init__(self, check: str, message: str, report: dict | None = None):
        self.check = check
        self.report = report
        super().__init__(f"{check}: {message}")

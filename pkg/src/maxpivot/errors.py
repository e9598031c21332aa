"""Exception hierarchy.

``MathError`` subclasses signal that an operation is not applicable to its
argument (a singular principal submatrix, a rule whose pattern is absent).
``InputError`` subclasses signal malformed or out-of-range input.
"""

from __future__ import annotations


class PivotError(Exception):
    """Base class for every error raised by this package."""


class MathError(PivotError):
    pass


class InputError(PivotError):
    pass


class InvalidVertexError(InputError, KeyError):
    def __init__(self, label):
        super().__init__(label)
        self.label = label

    def __str__(self):
        return f"unknown vertex {self.label!r}"


class CapExceededError(InputError):
    def __init__(self, what: str, n: int, cap: int):
        super().__init__(f"{what}: {n} vertices exceeds the cap of {cap}")
        self.n = n
        self.cap = cap


class GroundMismatchError(InputError):
    pass


class IllegalStringError(InputError):
    def __init__(self, message: str, letter: str | None = None):
        super().__init__(message)
        self.letter = letter


class NotGraphicSystemError(InputError):
    pass


class PivotUndefinedError(MathError):
    """The principal submatrix on ``vertices`` is singular."""

    def __init__(self, vertices, dual: bool = False):
        self.vertices = frozenset(vertices)
        self.dual = dual
        shown = ",".join(sorted(self.vertices)) or "{}"
        kind = "dual pivot" if dual else "pivot"
        super().__init__(f"{kind} undefined on {{{shown}}}")


class DualPivotUndefinedError(PivotUndefinedError):
    def __init__(self, vertices):
        super().__init__(vertices, dual=True)


class NotElementaryError(MathError):
    pass


class RuleInapplicableError(MathError):
    def __init__(self, rule: str, reason: str = ""):
        super().__init__(f"{rule} is not applicable" + (f": {reason}" if reason else ""))
        self.rule = rule


class InvariantViolation(AssertionError):
    """Raised when a mathematical guarantee fails; indicates a bug."""

"""
Errors raised across `pointedposets`.

Every error derives from `PosetsError` and keeps the values that triggered it as
attributes, so callers (and the CLI) can report them without parsing messages.
"""

from __future__ import annotations

from typing import Any


class PosetsError(Exception):
    """Base class for every error raised by `pointedposets`."""


# exactalg


class NotDivisible(PosetsError):
    """Raised when a polynomial quotient that must be exact leaves a remainder."""

    def __init__(self, message: str, dividend: Any, divisor: Any):
        super().__init__(message)
        self.dividend = dividend
        self.divisor = divisor


class NonzeroConstantTerm(PosetsError):
    """Raised when a series that must vanish at the origin does not."""


class NotReversible(PosetsError):
    """Raised when a series has no compositional inverse with unit linear term."""


# partitions


class LimitExceeded(PosetsError):
    """Raised when an enumeration would exceed the configured element cap."""

    def __init__(self, message: str, projected: int, cap: int):
        super().__init__(message)
        self.projected = projected
        self.cap = cap


class GroundMismatch(PosetsError):
    """Raised when two partitions of different ground sets are compared."""


class ParseError(PosetsError):
    """Raised when a canonical string cannot be parsed."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


# posetcore


class NotPure(PosetsError):
    """Raised when a cover relation does not increase the rank by one."""

    def __init__(self, message: str, lower: str, upper: str):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class NoMinimum(PosetsError):
    """Raised when a poset does not have a unique minimal element."""

    def __init__(self, message: str, minima: list[str]):
        super().__init__(message)
        self.minima = minima


class NotComparable(PosetsError):
    """Raised when an operation needs `lower <= upper` and it does not hold."""

    def __init__(self, message: str, lower: str, upper: str):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class UnequalMaxRanks(PosetsError):
    """Raised when the maximal elements of a poset do not share one rank."""

    def __init__(self, message: str, ranks: list[int]):
        super().__init__(message)
        self.ranks = ranks


class SizeLimitExceeded(PosetsError):
    """Raised when an exact search is requested beyond its configured bound."""

    def __init__(self, message: str, size: int, bound: int):
        super().__init__(message)
        self.size = size
        self.bound = bound


# homology


class NotBounded(PosetsError):
    """Raised when a bounded poset is required (proper part, Philip Hall)."""


# hopf


class NonIntegerCoefficient(PosetsError):
    """Raised when the factorial-weighted coproduct does not clear to integers."""

    def __init__(self, message: str, key: Any, value: Any):
        super().__init__(message)
        self.key = key
        self.value = value


# identities


class OutOfRange(PosetsError):
    """Raised when parameters fall outside the range a formula is stated for."""

"""Exception hierarchy. Each class carries the CLI exit code it maps to."""
from __future__ import annotations

from fractions import Fraction


class CmlineError(Exception):
    exit_code = 1


class ParseError(CmlineError, ValueError):
    """Malformed construction document or command-line value."""

    exit_code = 2


class CapabilityError(CmlineError):
    """The family lacks the data a quantity needs (usually the pushforward)."""

    exit_code = 3


class PreconditionError(CmlineError, ValueError):
    exit_code = 4


class DimensionError(PreconditionError):
    pass


class PoleError(PreconditionError, ZeroDivisionError):
    pass


class NotPolynomialError(CmlineError, ValueError):
    """A sampled function disagreed with its binomial interpolant."""


class InconsistentFamilyError(CmlineError):
    """Two independent routes to the same degree disagreed."""

    def __init__(self, label: str, quantity: str, values: dict[str, Fraction]):
        self.label = label
        self.quantity = quantity
        self.values = dict(values)
        shown = ", ".join(f"{k}={v}" for k, v in self.values.items())
        super().__init__(f"{quantity} of {label or '<family>'} disagrees between routes: {shown}")

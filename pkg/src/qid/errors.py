"""Exception types shared across the engine."""

from __future__ import annotations


class QidError(Exception):
    """Base class for all engine errors."""


class NotDivisible(QidError):
    """Exact division left a nonzero remainder."""

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class NegativeExponent(QidError):
    """A non-Laurent variable would acquire a negative exponent."""


class GradingMismatch(QidError):
    """Two series with different grading variables were combined."""


class NonUnitConstantTerm(QidError):
    """Series inversion needs an invertible scalar constant term."""


class PoleAtPoint(QidError):
    """A denominator vanishes at the requested evaluation point."""


class NotGraded(QidError):
    """A series argument carries no grading degree, so truncation cannot bound it."""


class UnexpandableDenominator(QidError):
    """A series denominator is a multivariate polynomial free of grading variables."""


class UnknownIdentity(QidError):
    """The identity id is not in the registry."""


class ParamOutOfSchema(QidError):
    """Parameters do not match the identity's schema."""


class ExhaustedResamples(QidError):
    """Too many sampled points hit a pole."""

"""Exact algebra: Q(q), Laurent polynomials over it, and truncated series."""

from .mpoly import DEFAULT_UNIVERSE, MPoly, VarUniverse
from .qrat import QRat, Rational, qpoly

__all__ = ["DEFAULT_UNIVERSE", "MPoly", "QRat", "Rational", "VarUniverse", "qpoly"]

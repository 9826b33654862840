"""Coefficient rings shared by every builder.

Builders are written once against a tiny ring surface (``q``, ``qpow``,
``var``, ``scalar``, ``zero``, ``one``, ``div``) and run either symbolically
(:class:`SymbolicRing`, elements are :class:`MPoly`) or at a rational point
(:class:`PointRing`, elements are flint ``fmpq`` rationals).  The second
route evaluates the same formulas with plain exact rational arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from flint import fmpq

from ..errors import PoleAtPoint
from .mpoly import DEFAULT_UNIVERSE, MPoly, VarUniverse
from .qrat import QRat, to_fmpq


class SymbolicRing:
    kind = "symbolic"

    def __init__(self, universe: VarUniverse = DEFAULT_UNIVERSE):
        self.universe = universe
        self._q = MPoly.qpow(1, universe)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicRing) and other.universe == self.universe

    def __hash__(self) -> int:
        return hash(("symbolic", self.universe))

    def __repr__(self) -> str:
        return f"SymbolicRing(laurent={sorted(self.universe.laurent)})"

    @property
    def q(self) -> MPoly:
        return self._q

    def qpow(self, e: int) -> MPoly:
        return MPoly.qpow(e, self.universe)

    def var(self, name: str) -> MPoly:
        return MPoly.var(name, self.universe)

    def scalar(self, value) -> MPoly:
        if isinstance(value, MPoly):
            return value
        return MPoly.const(value, self.universe)

    def zero(self) -> MPoly:
        return self.universe.zero()

    def one(self) -> MPoly:
        return self.universe.one()

    @staticmethod
    def is_zero(e) -> bool:
        return e.is_zero()

    @staticmethod
    def div(a, b):
        """``a / b`` where ``b`` is a Q(q) scalar or a divisor of ``a``."""
        if b.is_scalar() or b.is_monomial():
            return a / b
        return a.exact_div(b)

    def element(self, value):
        """Coerce a role argument (variable name or element) into the ring."""
        if isinstance(value, str):
            return self.var(value)
        return self.scalar(value)


@dataclass(frozen=True)
class RatPoint:
    """Rational values for ``q`` and the non-grading variables."""

    values: dict = field(default_factory=dict)
    avoid: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "values", {k: Fraction(v) for k, v in self.values.items()})

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.values.items())))

    def render(self) -> dict[str, str]:
        return {k: str(v) for k, v in sorted(self.values.items())}

    @classmethod
    def random(cls, rng: random.Random, names, bound: int = 97) -> RatPoint:
        """Nonzero rationals with numerator and denominator at most ``bound``.

        ``q`` avoids +-1 since every (q;q)_n vanishes there.
        """
        values = {}
        for name in ("q",) + tuple(names):
            while True:
                v = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                if v != 0 and not (name == "q" and abs(v) == 1):
                    break
            values[name] = v
        return cls(values)


class PointRing:
    kind = "point"

    def __init__(self, point: RatPoint):
        self.point = point
        self._values = {k: to_fmpq(v) for k, v in point.values.items()}
        self._q = self._values["q"]

    def __eq__(self, other) -> bool:
        return isinstance(other, PointRing) and other.point == self.point

    def __hash__(self) -> int:
        return hash(("point", self.point))

    def __repr__(self) -> str:
        return f"PointRing({self.point.render()})"

    @property
    def q(self) -> fmpq:
        return self._q

    def qpow(self, e: int) -> fmpq:
        return self._q**e

    def var(self, name: str) -> fmpq:
        try:
            return self._values[name]
        except KeyError:
            raise KeyError(f"point has no value for {name}") from None

    def scalar(self, value) -> fmpq:
        if isinstance(value, QRat):
            d = value.den(self._q)
            if d == 0:
                raise PoleAtPoint(f"{value.render()} has a pole at q={self._q}")
            return value.num(self._q) / d
        if isinstance(value, MPoly):
            return to_fmpq(value.evaluate(self.point.values))
        return to_fmpq(value)

    @staticmethod
    def zero() -> fmpq:
        return fmpq(0)

    @staticmethod
    def one() -> fmpq:
        return fmpq(1)

    @staticmethod
    def is_zero(e) -> bool:
        return e == 0

    @staticmethod
    def div(a, b):
        if b == 0:
            raise PoleAtPoint("division by a value that vanishes at this point")
        return a / b

    def element(self, value):
        if isinstance(value, str):
            return self.var(value)
        return self.scalar(value)


SYMBOLIC = SymbolicRing()

"""Elements of the rational function field Q(q).

A :class:`QRat` stores a numerator and a denominator as dense univariate
polynomials with rational coefficients (``flint.fmpq_poly``).  The stored form
is canonical: the denominator is monic and coprime to the numerator, and zero
is ``0/1``.  Two equal field elements therefore have identical fields.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

from flint import fmpq, fmpq_poly

from ..errors import PoleAtPoint

Rational = Fraction

_ZERO = fmpq_poly([])
_ONE = fmpq_poly([1])
_Q = fmpq_poly([0, 1])


def to_fmpq(value) -> fmpq:
    if isinstance(value, fmpq):
        return value
    if isinstance(value, int):
        return fmpq(value)
    if isinstance(value, _RationalABC):
        return fmpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, fmpq):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def _as_poly(value) -> fmpq_poly:
    if isinstance(value, fmpq_poly):
        return value
    if isinstance(value, (list, tuple)):
        return fmpq_poly([to_fmpq(c) for c in value])
    return fmpq_poly([to_fmpq(value)])


def render_qpoly(coeffs) -> str:
    """Render ascending coefficients as ``1+q-2*q^3``; ``0`` for the zero polynomial."""
    parts = []
    for e, c in enumerate(coeffs):
        c = to_fraction(c)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if e == 0:
            body = str(mag)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


class QRat:
    """A normalized ratio ``num(q)/den(q)``."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("QRat with zero denominator")
        if num.is_zero():
            self.num, self.den = _ZERO, _ONE
            return
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: fmpq_poly, den: fmpq_poly) -> QRat:
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def q(cls) -> QRat:
        return cls._raw(_Q, _ONE)

    @classmethod
    def qpow(cls, e: int) -> QRat:
        mono = fmpq_poly([0] * abs(e) + [1])
        return cls._raw(mono, _ONE) if e >= 0 else cls._raw(_ONE, mono)

    @classmethod
    def from_coeffs(cls, num_coeffs, den_coeffs=(1,)) -> QRat:
        return cls(_as_poly(list(num_coeffs)), _as_poly(list(den_coeffs)))

    @classmethod
    def coerce(cls, value) -> QRat:
        if isinstance(value, QRat):
            return value
        if isinstance(value, fmpq_poly):
            return cls._raw(value, _ONE)
        return cls._raw(_as_poly(value), _ONE)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def q_monomial_exponent(self):
        """Return ``e`` when this element is exactly ``q**e``, else ``None``."""
        if self.num.length() == 0:
            return None
        n = self.num.coeffs()
        d = self.den.coeffs()
        if any(c != 0 for c in n[:-1]) or n[-1] != 1:
            return None
        if any(c != 0 for c in d[:-1]):
            return None
        return (len(n) - 1) - (len(d) - 1)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return QRat(self.num + other.num, self.den)
        return QRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> QRat:
        return QRat._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return QRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> QRat:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QRat(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int) -> QRat:
        if e < 0:
            return self.inverse() ** (-e)
        return QRat._raw(self.num**e, self.den**e)

    def __eq__(self, other) -> bool:
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((str(self.num), str(self.den)))

    # -- conversions -------------------------------------------------------
    def num_coeffs(self) -> list[Fraction]:
        return [to_fraction(c) for c in self.num.coeffs()]

    def den_coeffs(self) -> list[Fraction]:
        return [to_fraction(c) for c in self.den.coeffs()]

    def evaluate(self, qval) -> Fraction:
        qv = to_fmpq(qval)
        d = self.den(qv)
        if d == 0:
            raise PoleAtPoint(f"denominator {render_qpoly(self.den.coeffs())} vanishes at q={qval}")
        return to_fraction(self.num(qv) / d)

    def render(self) -> str:
        num = render_qpoly(self.num.coeffs())
        den = render_qpoly(self.den.coeffs())
        if sum(1 for c in self.den.coeffs() if c != 0) > 1:
            den = f"({den})"
        return f"({num})/{den}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"QRat({self.render()})"


def _coerce_or_none(value):
    if isinstance(value, QRat):
        return value
    if isinstance(value, (int, _RationalABC, fmpq)):
        return QRat._raw(_as_poly(value), _ONE)
    if isinstance(value, fmpq_poly):
        return QRat._raw(value, _ONE)
    return None


def qpoly(coeffs) -> QRat:
    """Polynomial in q from ascending coefficients."""
    return QRat.from_coeffs(coeffs)

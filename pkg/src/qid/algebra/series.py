"""Truncated multigraded power series over a coefficient ring.

Truncation is by total degree in the grading variables: a series of order
``N`` stores coefficients for grading exponent vectors of total degree at
most ``N``.  Coefficients never mention the grading variables themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..errors import GradingMismatch, NonUnitConstantTerm, NotGraded
from .mpoly import MPoly
from .rings import SYMBOLIC


def exponent_vectors(nvars: int, order: int):
    """All exponent vectors of total degree at most ``order``, graded order."""
    out = []
    for d in range(order + 1):
        for vec in product(range(d + 1), repeat=nvars):
            if sum(vec) == d:
                out.append(vec)
    return out


def _sort_key(exps):
    return (sum(exps), tuple(-e for e in exps))


@dataclass(frozen=True)
class GradedMonomial:
    """``coeff * prod(g**e)`` with ``coeff`` free of the grading variables."""

    coeff: object
    exps: tuple[int, ...]
    grading: tuple[str, ...]

    @classmethod
    def of(cls, coeff, grading, **exps) -> GradedMonomial:
        grading = tuple(grading)
        unknown = set(exps) - set(grading)
        if unknown:
            raise ValueError(f"{sorted(unknown)} are not grading variables of {grading}")
        return cls(coeff, tuple(exps.get(g, 0) for g in grading), grading)

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def require_graded(self):
        if self.degree <= 0:
            raise NotGraded("series argument carries no grading variable")

    def __pow__(self, n: int) -> GradedMonomial:
        return GradedMonomial(self.coeff**n, tuple(e * n for e in self.exps), self.grading)

    def __mul__(self, other) -> GradedMonomial:
        if isinstance(other, GradedMonomial):
            if other.grading != self.grading:
                raise GradingMismatch("monomials over different gradings")
            return GradedMonomial(
                self.coeff * other.coeff,
                tuple(a + b for a, b in zip(self.exps, other.exps)),
                self.grading,
            )
        return GradedMonomial(self.coeff * other, self.exps, self.grading)

    __rmul__ = __mul__

    def __neg__(self) -> GradedMonomial:
        return GradedMonomial(-self.coeff, self.exps, self.grading)


class GradedSeries:
    """Immutable truncated series ``sum coeffs[e] * g**e``."""

    __slots__ = ("ring", "grading", "order", "coeffs")

    def __init__(self, ring, grading, order: int, coeffs=None):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.ring = ring
        self.grading = tuple(grading)
        self.order = order
        clean = {}
        is_zero = ring.is_zero
        for e, c in (coeffs or {}).items():
            e = tuple(e)
            if len(e) != len(self.grading):
                raise ValueError("exponent vector does not match the grading")
            if sum(e) <= order and not is_zero(c):
                clean[e] = c
        self.coeffs = clean

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, ring, grading, order) -> GradedSeries:
        return cls(ring, grading, order)

    @classmethod
    def const(cls, value, ring, grading, order) -> GradedSeries:
        grading = tuple(grading)
        return cls(ring, grading, order, {(0,) * len(grading): ring.scalar(value)})

    @classmethod
    def one(cls, ring, grading, order) -> GradedSeries:
        return cls.const(1, ring, grading, order)

    @classmethod
    def monomial(cls, m: GradedMonomial, ring, order) -> GradedSeries:
        return cls(ring, m.grading, order, {m.exps: m.coeff})

    @classmethod
    def from_mpoly(cls, poly: MPoly, grading, order, ring=None) -> GradedSeries:
        """Split a symbolic polynomial into grading part and coefficient part."""
        ring = ring or SYMBOLIC
        grading = tuple(grading)
        uni = poly.uni
        idx = [uni.index(g) for g in grading]
        if poly.shift is not None and any(poly.shift[i] for i in idx):
            raise NotGraded("grading variables must appear with nonnegative exponents")
        coeffs: dict[tuple, MPoly] = {}
        rest = poly
        for exps in exponent_vectors(len(grading), order):
            part = rest
            for name, e in zip(grading, exps):
                part = part.coeff_in(name, e)
                if part.is_zero():
                    break
            if not part.is_zero():
                coeffs[exps] = part
        return cls(ring, grading, order, coeffs)

    # -- helpers -------------------------------------------------------------
    def _check(self, other: GradedSeries):
        if other.grading != self.grading:
            raise GradingMismatch(f"gradings {self.grading} and {other.grading} differ")

    def _like(self, coeffs, order=None) -> GradedSeries:
        return GradedSeries(self.ring, self.grading, self.order if order is None else order, coeffs)

    def coeff(self, exps):
        if isinstance(exps, dict):
            exps = tuple(exps.get(g, 0) for g in self.grading)
        return self.coeffs.get(tuple(exps), self.ring.zero())

    def constant_term(self):
        return self.coeff((0,) * len(self.grading))

    def truncate(self, order: int) -> GradedSeries:
        return self._like(self.coeffs, min(order, self.order))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[tuple[int, ...]]:
        """Exponent vectors with nonzero coefficient, lowest degree first."""
        return sorted(self.coeffs, key=_sort_key)

    def first_nonzero(self):
        sup = self.support()
        return sup[0] if sup else None

    def map_coeffs(self, fn) -> GradedSeries:
        return self._like({e: fn(c) for e, c in self.coeffs.items()})

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GradedSeries):
            other = GradedSeries.const(other, self.ring, self.grading, self.order)
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return self._like(out, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self) -> GradedSeries:
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedSeries):
            other = GradedSeries.const(other, self.ring, self.grading, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return self._series_mul(other)
        if isinstance(other, GradedMonomial):
            if other.grading != self.grading:
                raise GradingMismatch("monomial grading differs from series grading")
            # g**e * S is known through order + |e| when S is known through order.
            shift = other.exps
            return self._like(
                {tuple(a + b for a, b in zip(e, shift)): c * other.coeff for e, c in self.coeffs.items()},
                self.order + other.degree,
            )
        return self._like({e: c * other for e, c in self.coeffs.items()})

    __rmul__ = __mul__

    def _series_mul(self, other: GradedSeries) -> GradedSeries:
        self._check(other)
        order = min(self.order, other.order)
        left = [(e, sum(e), c) for e, c in self.coeffs.items() if sum(e) <= order]
        right = [(e, sum(e), c) for e, c in other.coeffs.items() if sum(e) <= order]
        buckets: dict[tuple, list] = {}
        for e1, d1, c1 in left:
            room = order - d1
            for e2, d2, c2 in right:
                if d2 <= room:
                    key = tuple(a + b for a, b in zip(e1, e2))
                    buckets.setdefault(key, []).append(c1 * c2)
        out = {}
        for key, parts in buckets.items():
            acc = parts[0]
            for p in parts[1:]:
                acc = acc + p
            out[key] = acc
        return self._like(out, order)

    def __pow__(self, n: int) -> GradedSeries:
        if n < 0:
            return self.invert() ** (-n)
        result = GradedSeries.one(self.ring, self.grading, self.order)
        for _ in range(n):
            result = result * self
        return result

    def div_scalar(self, value) -> GradedSeries:
        """Divide every coefficient by a ring element that is a unit."""
        div = self.ring.div
        return self._like({e: div(c, value) for e, c in self.coeffs.items()})

    def invert(self) -> GradedSeries:
        """Multiplicative inverse through the truncation order."""
        ring = self.ring
        n = len(self.grading)
        zero_exps = (0,) * n
        c0 = self.coeffs.get(zero_exps)
        if c0 is None or ring.is_zero(c0):
            raise NonUnitConstantTerm("constant term is zero")
        if ring.kind == "symbolic" and not c0.is_scalar():
            raise NonUnitConstantTerm("constant term is not a scalar of Q(q)")
        inv0 = ring.div(ring.one(), c0)
        inv = {zero_exps: inv0}
        terms = [(e, c) for e, c in self.coeffs.items() if e != zero_exps]
        for exps in exponent_vectors(n, self.order)[1:]:
            acc = None
            for f, c in terms:
                rest = tuple(a - b for a, b in zip(exps, f))
                if min(rest) < 0:
                    continue
                prev = inv.get(rest)
                if prev is None:
                    continue
                part = c * prev
                acc = part if acc is None else acc + part
            if acc is not None:
                val = -(acc * inv0)
                if not ring.is_zero(val):
                    inv[exps] = val
        return self._like(inv)

    def equals(self, other: GradedSeries) -> bool:
        return (self - other).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.grading == other.grading and self.order == other.order and self.equals(other)

    __hash__ = None

    # -- grading-variable operators --------------------------------------------
    def q_derivative(self, name: str) -> GradedSeries:
        """D_g on a grading variable: ``g**m -> (1 - q**m) g**(m-1)``; order drops by one."""
        if self.order == 0:
            raise ValueError("q-derivative of an order-0 series has no defined terms")
        i = self.grading.index(name)
        ring = self.ring
        out = {}
        for e, c in self.coeffs.items():
            m = e[i]
            if m == 0:
                continue
            ne = list(e)
            ne[i] = m - 1
            out[tuple(ne)] = c * (1 - ring.qpow(m))
        return self._like(out, self.order - 1)

    def scale_grading(self, name: str, factor) -> GradedSeries:
        """Substitute ``g -> factor * g`` for a grading variable ``g``."""
        i = self.grading.index(name)
        return self._like({e: c * factor**e[i] for e, c in self.coeffs.items()})

    # -- rendering -----------------------------------------------------------
    def render(self) -> str:
        parts = []
        for e in self.support():
            mono = "*".join(f"{g}^{k}" for g, k in zip(self.grading, e) if k)
            c = self.coeffs[e]
            text = c.render() if hasattr(c, "render") else str(c)
            parts.append(f"[{text}]" + (f" * {mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"GradedSeries({self.grading}, order={self.order}, {len(self.coeffs)} terms)"

"""Multivariate Laurent polynomials with coefficients in Q(q).

An :class:`MPoly` is logically a finite map from exponent vectors (indexed by a
:class:`VarUniverse`) to :class:`QRat` coefficients.  It is stored as

    X**shift * num / den

where ``num`` is a polynomial over Q in ``q`` and the universe variables,
``den`` is a monic polynomial in ``q`` alone with ``gcd(num, den) == 1``, and
``shift`` carries negative exponents of Laurent-allowed variables (``num`` then
has minimal exponent zero in those variables).  That form is unique, so
structural equality is mathematical equality.  Keeping a single denominator
per polynomial lets products run as one sparse multiplication instead of one
field operation per coefficient pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

import numpy as np
from flint import fmpq, fmpq_mpoly, fmpq_mpoly_ctx, fmpq_poly
from flint.utils.flint_exceptions import DomainError

from ..errors import NegativeExponent, NotDivisible, PoleAtPoint
from .qrat import QRat, render_qpoly, to_fmpq, to_fraction

DEFAULT_NAMES = ("A", "x", "y", "z", "a", "u", "v", "t", "w", "s", "l", "b", "c")


@lru_cache(maxsize=None)
def _context(names: tuple[str, ...]) -> fmpq_mpoly_ctx:
    return fmpq_mpoly_ctx.get(("q",) + names, "lex")


@dataclass(frozen=True)
class VarUniverse:
    """Ordered variable names plus the set allowed to carry negative exponents.

    ``A`` stands for ``q**alpha``, ``w`` for omega, ``s`` for sigma and ``l``
    for lambda.
    """

    names: tuple[str, ...] = DEFAULT_NAMES
    laurent: frozenset[str] = frozenset({"A"})

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        if "q" in self.names:
            raise ValueError("q is the base of Q(q), not a ring variable")
        unknown = set(self.laurent) - set(self.names)
        if unknown:
            raise ValueError(f"laurent flags for unknown variables {sorted(unknown)}")
        object.__setattr__(self, "laurent", frozenset(self.laurent))

    @property
    def ctx(self) -> fmpq_mpoly_ctx:
        return _context(self.names)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def is_laurent(self, name: str) -> bool:
        return name in self.laurent

    def with_laurent(self, *names: str) -> VarUniverse:
        return VarUniverse(self.names, self.laurent | set(names))

    def var(self, name: str) -> MPoly:
        return MPoly.var(name, self)

    def const(self, value) -> MPoly:
        return MPoly.const(value, self)

    @property
    def q(self) -> MPoly:
        return MPoly.qpow(1, self)

    def zero(self) -> MPoly:
        return MPoly.const(0, self)

    def one(self) -> MPoly:
        return MPoly.const(1, self)


DEFAULT_UNIVERSE = VarUniverse()


@lru_cache(maxsize=None)
def _laurent_mask(uni: VarUniverse) -> tuple[bool, ...]:
    return tuple(n in uni.laurent for n in uni.names)


def _qpoly_to_mpoly(ctx, nvars: int, p: fmpq_poly) -> fmpq_mpoly:
    tail = (0,) * nvars
    return ctx.from_dict({(e,) + tail: c for e, c in enumerate(p.coeffs()) if c != 0})


def _mpoly_to_qpoly(m: fmpq_mpoly) -> fmpq_poly:
    d = m.to_dict()
    if not d:
        return fmpq_poly([])
    top = max(k[0] for k in d)
    coeffs = [fmpq(0)] * (top + 1)
    for k, c in d.items():
        coeffs[k[0]] = c
    return fmpq_poly(coeffs)


class MPoly:
    """Immutable Laurent polynomial over Q(q) in a fixed variable universe."""

    __slots__ = ("uni", "num", "den", "shift")

    def __init__(self, *args, **kwargs):
        raise TypeError("use MPoly.var / MPoly.const / MPoly.from_terms")

    # -- construction -------------------------------------------------------
    @classmethod
    def _raw(cls, uni, num, den, shift) -> MPoly:
        obj = object.__new__(cls)
        obj.uni = uni
        obj.num = num
        obj.den = den
        obj.shift = shift
        return obj

    @classmethod
    def _make(cls, uni, num, den, shift, gcd_hint=None) -> MPoly:
        """Bring ``X**shift * num / den`` to canonical form.

        ``gcd_hint`` is a divisor of ``den`` known to contain every common
        factor of ``num`` and ``den``.
        """
        ctx = uni.ctx
        if num.is_zero():
            return cls._raw(uni, ctx.constant(0), ctx.constant(1), None)
        if not den.is_one():
            probe = den if gcd_hint is None else gcd_hint
            if not probe.is_one():
                g = num.gcd(probe)
                if not g.is_one():
                    num = num / g
                    den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        if shift is not None:
            num, shift = _normalize_shift(ctx, num, shift)
        return cls._raw(uni, num, den, shift)

    @classmethod
    def var(cls, name: str, uni: VarUniverse = DEFAULT_UNIVERSE) -> MPoly:
        i = uni.index(name)
        exps = [0] * (uni.nvars + 1)
        exps[i + 1] = 1
        ctx = uni.ctx
        return cls._raw(uni, ctx.term(exp_vec=tuple(exps)), ctx.constant(1), None)

    @classmethod
    def const(cls, value, uni: VarUniverse = DEFAULT_UNIVERSE) -> MPoly:
        ctx = uni.ctx
        if isinstance(value, MPoly):
            return value
        if isinstance(value, QRat):
            num = _qpoly_to_mpoly(ctx, uni.nvars, value.num)
            den = _qpoly_to_mpoly(ctx, uni.nvars, value.den)
            return cls._raw(uni, num, den, None)
        return cls._raw(uni, ctx.constant(to_fmpq(value)), ctx.constant(1), None)

    @classmethod
    def qpow(cls, e: int, uni: VarUniverse = DEFAULT_UNIVERSE) -> MPoly:
        ctx = uni.ctx
        mono = ctx.term(exp_vec=(abs(e),) + (0,) * uni.nvars)
        if e >= 0:
            return cls._raw(uni, mono, ctx.constant(1), None)
        return cls._raw(uni, ctx.constant(1), mono, None)

    @classmethod
    def monomial(cls, exps, coeff=1, uni: VarUniverse = DEFAULT_UNIVERSE) -> MPoly:
        """``coeff * prod(var**e)``; ``exps`` maps names to (possibly negative) exponents."""
        vec = [0] * uni.nvars
        for name, e in dict(exps).items():
            vec[uni.index(name)] = e
        return cls.from_terms({tuple(vec): coeff}, uni)

    @classmethod
    def from_terms(cls, terms, uni: VarUniverse = DEFAULT_UNIVERSE) -> MPoly:
        """Build from ``{exponent vector: coefficient}`` with QRat/rational coefficients."""
        out = uni.zero()
        ctx = uni.ctx
        n = uni.nvars
        mask = _laurent_mask(uni)
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector must have length {n}")
            for e, lau, name in zip(exps, mask, uni.names):
                if e < 0 and not lau:
                    raise NegativeExponent(f"negative exponent for non-Laurent variable {name}")
            c = QRat.coerce(c)
            if c.is_zero():
                continue
            shift = tuple(min(e, 0) for e in exps)
            pos = tuple(e - s for e, s in zip(exps, shift))
            mono = ctx.term(exp_vec=(0,) + pos)
            num = _qpoly_to_mpoly(ctx, n, c.num) * mono
            den = _qpoly_to_mpoly(ctx, n, c.den)
            out = out + cls._make(uni, num, den, shift if any(shift) else None)
        return out

    def _coerce(self, other) -> MPoly | None:
        if isinstance(other, MPoly):
            if other.uni != self.uni:
                raise ValueError("MPoly operands come from different variable universes")
            return other
        if isinstance(other, (int, _RationalABC, fmpq, QRat)):
            return MPoly.const(other, self.uni)
        return None

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_scalar(self) -> bool:
        """True when free of every universe variable (an element of Q(q))."""
        if self.shift is not None:
            return False
        return all(d == 0 for d in self.num.degrees()[1:])

    def to_qrat(self) -> QRat:
        if not self.is_scalar():
            raise ValueError("polynomial is not a scalar of Q(q)")
        return QRat(_mpoly_to_qpoly(self.num), _mpoly_to_qpoly(self.den))

    def variables(self) -> set[str]:
        used = {n for n, d in zip(self.uni.names, self.num.degrees()[1:]) if d > 0}
        if self.shift is not None:
            used |= {n for n, s in zip(self.uni.names, self.shift) if s != 0}
        return used

    def free_of(self, names) -> bool:
        return not (self.variables() & set(names))

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        n1, n2, shift = _align(self, other)
        d1, d2 = self.den, other.den
        if d1 == d2:
            return MPoly._make(self.uni, n1 + n2, d1, shift)
        g = d1.gcd(d2)
        if g.is_one():
            return MPoly._raw_or_shift(self.uni, n1 * d2 + n2 * d1, d1 * d2, shift)
        c1 = d1 / g
        c2 = d2 / g
        return MPoly._make(self.uni, n1 * c2 + n2 * c1, d1 * c2, shift, gcd_hint=g)

    __radd__ = __add__

    @classmethod
    def _raw_or_shift(cls, uni, num, den, shift) -> MPoly:
        if num.is_zero():
            return uni.zero()
        if shift is not None:
            num, shift = _normalize_shift(uni.ctx, num, shift)
        return cls._raw(uni, num, den, shift)

    def __neg__(self) -> MPoly:
        return MPoly._raw(self.uni, -self.num, self.den, self.shift)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return self.uni.zero()
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1 = n1 / g
                d2 = d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2 = n2 / g
                d1 = d1 / g
        num = n1 * n2
        den = d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        if self.shift is None and other.shift is None:
            return MPoly._raw(self.uni, num, den, None)
        shift = _add_shifts(self.shift, other.shift, self.uni.nvars)
        return MPoly._raw_or_shift(self.uni, num, den, shift)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> MPoly:
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if self.is_scalar():
                return MPoly.const(self.to_qrat() ** e, self.uni)
            if self.is_monomial():
                (exps, c), = self.terms().items()
                return MPoly.from_terms({tuple(-k * (-e) for k in exps): c**e}, self.uni)
            raise ValueError("negative power of a non-monomial polynomial")
        result = self.uni.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        """Divide by an element of Q(q); use :meth:`exact_div` for polynomial divisors."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.is_scalar():
            if other.is_monomial():
                return self.exact_div(other)
            raise TypeError("MPoly division needs a Q(q) scalar; use exact_div")
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        inv = MPoly._make(self.uni, other.den, other.num, None)
        return self * inv

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except ValueError:
            return False
        if other is None:
            return NotImplemented
        return (
            _shift_key(self.shift) == _shift_key(other.shift)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.uni.names, _shift_key(self.shift), self.render()))

    # -- structure -----------------------------------------------------------
    def terms(self) -> dict[tuple[int, ...], QRat]:
        """The canonical ``{exponent vector: QRat}`` view."""
        groups: dict[tuple[int, ...], dict[int, fmpq]] = {}
        shift = self.shift or (0,) * self.uni.nvars
        for k, c in self.num.to_dict().items():
            key = tuple(int(e) + s for e, s in zip(k[1:], shift))
            groups.setdefault(key, {})[k[0]] = c
        den = _mpoly_to_qpoly(self.den)
        out = {}
        for key, qc in groups.items():
            coeffs = [fmpq(0)] * (max(qc) + 1)
            for e, c in qc.items():
                coeffs[e] = c
            out[key] = QRat(fmpq_poly(coeffs), den)
        return out

    def coeff(self, exps) -> QRat:
        if isinstance(exps, dict):
            vec = [0] * self.uni.nvars
            for name, e in exps.items():
                vec[self.uni.index(name)] = e
            exps = tuple(vec)
        return self.terms().get(tuple(exps), QRat(0))

    def is_monomial(self) -> bool:
        return len(self.terms()) == 1

    def nterms(self) -> int:
        return len(self.terms())

    def degree(self, name: str) -> int:
        """Largest exponent of ``name`` (``-1`` for the zero polynomial)."""
        if self.is_zero():
            return -1
        i = self.uni.index(name)
        s = self.shift[i] if self.shift else 0
        return self.num.degrees()[i + 1] + s

    def min_degree(self, name: str) -> int:
        i = self.uni.index(name)
        s = self.shift[i] if self.shift else 0
        return min(k[i + 1] for k in self.num.to_dict()) + s

    def total_degree(self, names=None) -> int:
        names = self.uni.names if names is None else names
        idx = [self.uni.index(n) for n in names]
        return max((sum(exps[i] for i in idx) for exps in self.terms()), default=-1)

    def coeff_in(self, name: str, k: int) -> MPoly:
        """Coefficient of ``name**k``, as a polynomial free of ``name``."""
        i = self.uni.index(name)
        shift = list(self.shift) if self.shift else [0] * self.uni.nvars
        target = k - shift[i]
        picked = {}
        for key, c in self.num.to_dict().items():
            if key[i + 1] == target:
                nk = list(key)
                nk[i + 1] = 0
                picked[tuple(nk)] = c
        shift[i] = 0
        num = self.uni.ctx.from_dict(picked) if picked else self.uni.ctx.constant(0)
        return MPoly._make(self.uni, num, self.den, tuple(shift) if any(shift) else None)

    # -- substitution, division, evaluation -----------------------------------
    def subst(self, rules) -> MPoly:
        """Simultaneous substitution ``var -> scale * monomial``.

        ``rules`` maps variable names to MPoly values with at most one monomial
        (or to plain scalars).  Raises :class:`NegativeExponent` when a
        non-Laurent variable would need a negative exponent.
        """
        uni = self.uni
        n = uni.nvars
        fast = {}
        general = {}
        for name, img in rules.items():
            i = uni.index(name)
            img = self._coerce(img)
            if img is None:
                raise TypeError(f"bad substitution value for {name}")
            if img.is_zero():
                fast[i] = None
                continue
            terms = img.terms()
            if len(terms) != 1:
                raise ValueError(f"substitution for {name} must be a scaled monomial")
            (mono, scale), = terms.items()
            qe = scale.q_monomial_exponent() if scale.num.length() else None
            lead = None
            if qe is None:
                nz = [c for c in scale.num.coeffs() if c != 0]
                if len(nz) == 1 and scale.den.length() >= 1:
                    dz = [c for c in scale.den.coeffs() if c != 0]
                    if len(dz) == 1:
                        lead = nz[0]
                        qe = (scale.num.degree()) - (scale.den.degree())
            else:
                lead = fmpq(1)
            if qe is not None:
                fast[i] = (lead, qe, mono)
            else:
                general[i] = (scale, mono)
        if not fast and not general:
            return self
        if not general and self._pure_scalings(fast):
            if all(qe >= 0 and not (self.shift and self.shift[i]) for i, (_, qe, _) in fast.items()):
                return self._compose_scalings(fast)
            return self._scale_terms(fast)
        shift = self.shift or (0,) * n
        buckets: dict[tuple, dict[tuple, fmpq]] = {}
        for key, c in self.num.to_dict().items():
            ev = [e + s for e, s in zip(key[1:], shift)]
            qexp = key[0]
            coef = c
            new = list(ev)
            dropped = False
            for i, spec in fast.items():
                k = ev[i]
                if k == 0:
                    continue
                new[i] -= k
                if spec is None:
                    if k < 0:
                        raise PoleAtPoint(f"substituting 0 for {uni.names[i]} with negative exponent")
                    dropped = True
                    break
                lead, qe, mono = spec
                coef = coef * lead**k
                qexp += qe * k
                for j, m in enumerate(mono):
                    if m:
                        new[j] += k * m
            if dropped:
                continue
            pattern = []
            for i, (scale, mono) in general.items():
                k = ev[i]
                pattern.append(k)
                if k:
                    new[i] -= k
                    for j, m in enumerate(mono):
                        if m:
                            new[j] += k * m
            bucket = buckets.setdefault(tuple(pattern), {})
            nk = (qexp,) + tuple(new)
            bucket[nk] = bucket.get(nk, 0) + coef
        result = uni.zero()
        gen_items = list(general.values())
        for pattern, bucket in buckets.items():
            part = _from_signed_dict(uni, bucket, self.den)
            if part.is_zero():
                continue
            for (scale, _), k in zip(gen_items, pattern):
                if k:
                    part = part * MPoly.const(scale**k, uni)
            result = result + part
        return result

    @staticmethod
    def _pure_scalings(fast) -> bool:
        """True when every rule has the form ``v -> c q^k v``."""
        for i, spec in fast.items():
            if spec is None:
                return False
            if any(m != (1 if j == i else 0) for j, m in enumerate(spec[2])):
                return False
        return True

    def _compose_scalings(self, fast) -> MPoly:
        # Scaling variables by c q^k keeps the numerator polynomial, so flint's
        # compose does the work.  A factor q of the denominator is the only
        # common factor the scaling can create.
        ctx = self.uni.ctx
        gens = list(ctx.gens())
        images = list(gens)
        q = gens[0]
        for i, (lead, qe, _) in fast.items():
            images[i + 1] = gens[i + 1] * q**qe * lead
        num = self.num.compose(*images)
        if self.den.term_content().degrees()[0] > 0:
            return MPoly._make(self.uni, num, self.den, self.shift)
        return MPoly._raw(self.uni, num, self.den, self.shift)

    def _scale_terms(self, fast) -> MPoly:
        # Pure scalings only move q exponents, so the exponent table is
        # updated in bulk and the variable exponents never collide.
        if self.is_zero():
            return self
        uni = self.uni
        ctx = uni.ctx
        monoms = self.num.monoms()
        coeffs = self.num.coeffs()
        table = np.array(monoms, dtype=np.int64)
        shift = np.array(self.shift or (0,) * uni.nvars, dtype=np.int64)
        qcol = table[:, 0].copy()
        for i, (lead, qe, _) in fast.items():
            actual = table[:, i + 1] + shift[i]
            qcol += qe * actual
            if lead == -1:
                coeffs = [-c if e % 2 else c for c, e in zip(coeffs, actual.tolist())]
            elif lead != 1:
                coeffs = [c * lead**e for c, e in zip(coeffs, actual.tolist())]
        den = self.den
        qmin = int(qcol.min())
        if qmin < 0:
            den = den * ctx.term(exp_vec=(-qmin,) + (0,) * uni.nvars)
            qcol -= qmin
        else:
            common = min(qmin, int(den.term_content().degrees()[0]))
            if common:
                den = den / ctx.term(exp_vec=(common,) + (0,) * uni.nvars)
                qcol -= common
        table[:, 0] = qcol
        num = ctx.from_dict(dict(zip(map(tuple, table.tolist()), coeffs)))
        return MPoly._raw(uni, num, den, self.shift)

    def exact_div(self, d) -> MPoly:
        """Return ``h`` with ``h * d == self``; raise :class:`NotDivisible` otherwise."""
        d = self._coerce(d)
        if d is None:
            raise TypeError("exact_div needs an MPoly divisor")
        if d.is_zero():
            raise ZeroDivisionError("exact division by zero")
        if self.is_zero():
            return self
        uni = self.uni
        ctx = uni.ctx
        n = uni.nvars
        dnum = d.num
        dshift = list(d.shift or (0,) * n)
        # Laurent monomial factors of the divisor go into the shift.
        tc = dnum.term_content().monoms()[0]
        lift = [0] * (n + 1)
        for i, lau in enumerate(_laurent_mask(uni)):
            if lau and tc[i + 1] > 0:
                lift[i + 1] = tc[i + 1]
                dshift[i] += tc[i + 1]
        if any(lift):
            dnum = dnum / ctx.term(exp_vec=tuple(lift))
        content = _q_content(ctx, n, dnum)
        if not content.is_one():
            dnum = dnum / content
        p = self.num * d.den
        try:
            quo = p / dnum
        except DomainError:
            rem = MPoly._make(uni, p % dnum, self.den * content, self.shift)
            raise NotDivisible(
                f"{self.render()} is not divisible by {d.render()}", remainder=rem
            ) from None
        shift = _add_shifts(self.shift, tuple(-s for s in dshift), n)
        den = self.den * content
        return MPoly._make(uni, quo, den, _check_shift(uni, shift))

    def evaluate(self, point) -> Fraction:
        """Exact value at a point given as ``{"q": value, name: value, ...}``."""
        values = point.values if hasattr(point, "values") and not isinstance(point, dict) else point
        qv = to_fmpq(values["q"])
        dv = self.den(qv, *([fmpq(0)] * self.uni.nvars))
        if dv == 0:
            raise PoleAtPoint(f"denominator vanishes at q={to_fraction(qv)}")
        used = self.num.degrees()
        args = [qv]
        for name, deg in zip(self.uni.names, used[1:]):
            if deg > 0:
                if name not in values:
                    raise KeyError(f"no value for variable {name}")
                args.append(to_fmpq(values[name]))
            else:
                args.append(fmpq(0))
        val = self.num(*args) / dv
        if self.shift is not None:
            for name, s in zip(self.uni.names, self.shift):
                if s:
                    v = to_fmpq(values[name])
                    if v == 0:
                        raise PoleAtPoint(f"negative power of {name} at {name}=0")
                    val = val * v**s
        return to_fraction(val)

    # -- rendering -----------------------------------------------------------
    def render(self) -> str:
        """Canonical text: graded-lex descending, ``(num)/den * x^1*y^1``."""
        items = self.terms()
        if not items:
            return "0"
        names = self.uni.names
        order = sorted(items, key=lambda e: (sum(e), e), reverse=True)
        parts = []
        for exps in order:
            mono = "*".join(f"{nm}^{e}" for nm, e in zip(names, exps) if e != 0)
            coeff = items[exps].render()
            parts.append(f"{coeff} * {mono}" if mono else coeff)
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"MPoly({self.render()})"


def _shift_key(shift):
    if shift is None or not any(shift):
        return None
    return tuple(shift)


def _add_shifts(s1, s2, n):
    a = s1 or (0,) * n
    b = s2 or (0,) * n
    out = tuple(x + y for x, y in zip(a, b))
    return out if any(out) else None


def _check_shift(uni, shift):
    if shift is None:
        return None
    for name, s, lau in zip(uni.names, shift, _laurent_mask(uni)):
        if s < 0 and not lau:
            raise NegativeExponent(f"negative exponent for non-Laurent variable {name}")
    return shift


def _normalize_shift(ctx, num, shift):
    # canonical shifts are nonpositive; positive parts move into num
    if any(s > 0 for s in shift):
        num = num * ctx.term(exp_vec=(0,) + tuple(max(s, 0) for s in shift))
        shift = tuple(min(s, 0) for s in shift)
    tc = num.term_content().monoms()[0]
    lift = [0] * len(tc)
    new = list(shift)
    for i, s in enumerate(shift):
        if s < 0 and tc[i + 1] > 0:
            e = min(tc[i + 1], -s)
            lift[i + 1] = e
            new[i] += e
    if any(lift):
        num = num / ctx.term(exp_vec=tuple(lift))
    return num, (tuple(new) if any(new) else None)


def _align(f: MPoly, g: MPoly):
    if f.shift is None and g.shift is None:
        return f.num, g.num, None
    n = f.uni.nvars
    s1 = f.shift or (0,) * n
    s2 = g.shift or (0,) * n
    s = tuple(min(a, b) for a, b in zip(s1, s2))
    ctx = f.uni.ctx
    n1, n2 = f.num, g.num
    if s1 != s:
        n1 = n1 * ctx.term(exp_vec=(0,) + tuple(a - b for a, b in zip(s1, s)))
    if s2 != s:
        n2 = n2 * ctx.term(exp_vec=(0,) + tuple(a - b for a, b in zip(s2, s)))
    return n1, n2, (s if any(s) else None)


def _q_content(ctx, nvars, num) -> fmpq_mpoly:
    """Gcd of the q-polynomial coefficients of ``num`` (monic, in q alone)."""
    groups: dict[tuple, dict[int, fmpq]] = {}
    for k, c in num.to_dict().items():
        groups.setdefault(k[1:], {})[k[0]] = c
    g = None
    for qc in groups.values():
        coeffs = [fmpq(0)] * (max(qc) + 1)
        for e, c in qc.items():
            coeffs[e] = c
        p = fmpq_poly(coeffs)
        g = p if g is None else g.gcd(p)
        if g.degree() == 0:
            return ctx.constant(1)
    lc = g.leading_coefficient()
    return _qpoly_to_mpoly(ctx, nvars, g / lc)


def _from_signed_dict(uni: VarUniverse, terms: dict, den) -> MPoly:
    """MPoly from ``{(qexp, var exps...): coeff}`` with possibly negative exponents."""
    terms = {k: c for k, c in terms.items() if c != 0}
    ctx = uni.ctx
    if not terms:
        return uni.zero()
    n = uni.nvars
    mins = [min(k[i] for k in terms) for i in range(n + 1)]
    mask = _laurent_mask(uni)
    shift = [0] * n
    for i in range(n):
        m = mins[i + 1]
        if m < 0:
            if not mask[i]:
                raise NegativeExponent(
                    f"substitution gives a negative exponent for non-Laurent variable {uni.names[i]}"
                )
            shift[i] = m
    qmin = min(mins[0], 0)
    offset = (qmin,) + tuple(shift)
    num = ctx.from_dict({tuple(a - b for a, b in zip(k, offset)): c for k, c in terms.items()})
    if qmin < 0:
        den = den * ctx.term(exp_vec=(-qmin,) + (0,) * n)
    return MPoly._make(uni, num, den, tuple(shift) if any(shift) else None)

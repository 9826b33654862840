"""q-shifted factorials, q-binomial coefficients and basic hypergeometric series.

Every builder takes a ``ring`` keyword (symbolic by default) so the same code
produces exact polynomials or exact values at a rational point.  Arguments
that name a variable role accept either the variable name or a ring element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .algebra.qrat import QRat
from .algebra.rings import SYMBOLIC
from .algebra.series import GradedMonomial, GradedSeries
from .errors import NotGraded, UnexpandableDenominator


# -- alpha modes ---------------------------------------------------------------
@dataclass(frozen=True)
class Alpha:
    """How ``q**alpha`` is realised: an integer power, the variable ``A``, or the limit alpha -> oo."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("int", "sym", "inf"):
            raise ValueError(f"unknown alpha mode {self.kind!r}")
        if self.kind == "int" and self.n < 0:
            raise ValueError("integer alpha must be nonnegative")

    @classmethod
    def integer(cls, n: int) -> Alpha:
        return cls("int", n)

    @classmethod
    def parse(cls, text: str) -> Alpha:
        text = text.strip()
        if text == "sym":
            return SYM
        if text == "inf":
            return INF
        if text.startswith("int:"):
            return cls("int", int(text[4:]))
        raise ValueError(f"alpha must be int:K, sym or inf, got {text!r}")

    def __str__(self) -> str:
        return f"int:{self.n}" if self.kind == "int" else self.kind


SYM = Alpha("sym")
INF = Alpha("inf")


def qalpha(alpha: Alpha, ring=SYMBOLIC):
    """The ring value standing for ``q**alpha`` (zero in the infinite limit)."""
    if alpha.kind == "int":
        return ring.qpow(alpha.n)
    if alpha.kind == "sym":
        return ring.var("A")
    return ring.zero()


# -- scalars in Q(q) -------------------------------------------------------------
@lru_cache(maxsize=None)
def qfactorial(n: int) -> QRat:
    """``(q;q)_n``."""
    out = QRat(1)
    for i in range(1, n + 1):
        out = out * (1 - QRat.qpow(i))
    return out


@lru_cache(maxsize=None)
def qpoch_scalar(e: int, n: int, sign: int = 1) -> QRat:
    """``(sign * q**e; q)_n`` as an element of Q(q)."""
    out = QRat(1)
    for i in range(n):
        out = out * (1 - sign * QRat.qpow(e + i))
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> QRat:
    """Gaussian binomial coefficient; zero outside ``0 <= k <= n``."""
    if k < 0 or k > n or n < 0:
        return QRat(0)
    return qfactorial(n) / (qfactorial(k) * qfactorial(n - k))


@lru_cache(maxsize=None)
def _q_norm(k: int) -> QRat:
    return QRat.qpow(-comb(k, 2)) / qfactorial(k)


@lru_cache(maxsize=None)
def _negq_norm(k: int) -> QRat:
    return QRat.qpow(-comb(k, 2)) / qpoch_scalar(1, k, -1)


def tau(r: int, s: int, k: int) -> int:
    return r * comb(k, 2) - s * comb(k + 1, 2)


# -- products in the ring ----------------------------------------------------------
def qpoch(base, n: int, ring=SYMBOLIC):
    """``(base; q)_n = prod_{k<n} (1 - base q^k)``."""
    base = ring.element(base)
    out = ring.one()
    for k in range(n):
        out = out * (1 - base * ring.qpow(k))
    return out


def qpoch_multi(bases, n: int, ring=SYMBOLIC):
    out = ring.one()
    for b in bases:
        out = out * qpoch(b, n, ring)
    return out


def gen_qbinom_q(alpha: Alpha, k: int, ring=SYMBOLIC):
    """Generalized q-binomial ``[alpha, k]_q``.

    Uses ``(q^-alpha;q)_k (-1)^k q^(alpha k) = prod_{i<k} (q^i - q^alpha)``.
    """
    qa = qalpha(alpha, ring)
    num = ring.one()
    for i in range(k):
        num = num * (ring.qpow(i) - qa)
    return num * ring.scalar(_q_norm(k))


def gen_qbinom_negq(alpha: Alpha, k: int, ring=SYMBOLIC):
    """Generalized ``[alpha, k]_{-q}``.

    Uses ``(-q^-alpha;q)_k q^(alpha k) = prod_{i<k} (q^alpha + q^i)``; in the
    infinite limit the product tends to ``q^C(k,2)`` and the result is
    ``1/(-q;q)_k``.
    """
    qa = qalpha(alpha, ring)
    num = ring.one()
    for i in range(k):
        num = num * (qa + ring.qpow(i))
    return num * ring.scalar(_negq_norm(k))


def neg_alpha_poch(alpha: Alpha, k: int, ring=SYMBOLIC):
    """``(-q^-alpha; q)_k q^(k alpha)``, the alpha-dependent weight of the generating functions."""
    qa = qalpha(alpha, ring)
    out = ring.one()
    for i in range(k):
        out = out * (qa + ring.qpow(i))
    return out


# -- series builders ------------------------------------------------------------
def _graded(m: GradedMonomial) -> GradedMonomial:
    if not isinstance(m, GradedMonomial):
        raise NotGraded("series argument must be a graded monomial")
    m.require_graded()
    return m


def euler_pos(m: GradedMonomial, N: int, ring=SYMBOLIC) -> GradedSeries:
    """``(m; q)_oo = sum (-1)^n q^C(n,2) m^n / (q;q)_n`` through total degree ``N``."""
    m = _graded(m)
    coeffs = {}
    n = 0
    while n * m.degree <= N:
        w = QRat.qpow(comb(n, 2)) / qfactorial(n)
        p = m**n
        coeffs[p.exps] = p.coeff * ring.scalar(-w if n % 2 else w)
        n += 1
    return GradedSeries(ring, m.grading, N, coeffs)


def euler_neg(m: GradedMonomial, N: int, ring=SYMBOLIC) -> GradedSeries:
    """``1/(m; q)_oo = sum m^n / (q;q)_n`` through total degree ``N``."""
    m = _graded(m)
    coeffs = {}
    n = 0
    while n * m.degree <= N:
        p = m**n
        coeffs[p.exps] = p.coeff * ring.scalar(1 / qfactorial(n))
        n += 1
    return GradedSeries(ring, m.grading, N, coeffs)


def qpoch_series(m: GradedMonomial, j: int, N: int, ring=SYMBOLIC) -> GradedSeries:
    """The polynomial ``(m; q)_j`` as a series."""
    out = GradedSeries.one(ring, m.grading, N)
    for i in range(j):
        factor = GradedSeries.one(ring, m.grading, N) - GradedSeries.monomial(
            m * ring.qpow(i), ring, N
        )
        out = out * factor
    return out


def qpoch_finite_inverse(
    m: GradedMonomial, j: int, N: int, ring=SYMBOLIC, method: str = "binomial"
) -> GradedSeries:
    """``1/(m; q)_j`` through total degree ``N``.

    ``binomial`` sums ``(q^j;q)_n m^n/(q;q)_n``; ``invert`` inverts the
    finite product as a series.  Both are exact and agree.
    """
    m = _graded(m)
    if method == "invert":
        return qpoch_series(m, j, N, ring).invert()
    if method != "binomial":
        raise ValueError(f"unknown method {method!r}")
    if j == 0:
        return GradedSeries.one(ring, m.grading, N)
    coeffs = {}
    n = 0
    while n * m.degree <= N:
        p = m**n
        w = qpoch_scalar(j, n) / qfactorial(n)
        coeffs[p.exps] = p.coeff * ring.scalar(w)
        n += 1
    return GradedSeries(ring, m.grading, N, coeffs)


@dataclass(frozen=True)
class CauchyRatio:
    """Numerator parameter ``top/bottom``; ``(top/bottom;q)_n bottom^n`` is kept as ``p_n(bottom, top)``."""

    top: object
    bottom: object


@dataclass(frozen=True)
class Terminator:
    """Numerator parameter ``q**(-m)``; the series stops at ``n = m``."""

    m: int


def _is_inverse_qpower(value, ring):
    if ring.kind != "symbolic" or not hasattr(value, "is_scalar") or not value.is_scalar():
        return None
    e = value.to_qrat().q_monomial_exponent()
    if e is not None and e <= 0:
        return -e
    return None


def phi_rs(numerators, denominators, argument: GradedMonomial, N: int, ring=SYMBOLIC) -> GradedSeries:
    """Truncated ``rPhi_s[numerators; denominators; q; argument]``.

    Numerator parameters may be ring elements, graded monomials,
    :class:`CauchyRatio` or :class:`Terminator`.  Denominator parameters are
    either graded monomials (their Pochhammer symbols are expanded as series)
    or units of the coefficient ring.  A symbolic numerator equal to ``q**-m``
    is recognised and terminates the sum.
    """
    from .families import cauchy_p

    arg = _graded(argument)
    grading = arg.grading
    r, s = len(numerators), len(denominators)
    power = 1 + s - r
    stop = N // arg.degree
    nums = []
    for p in numerators:
        if isinstance(p, (CauchyRatio, Terminator, GradedMonomial)):
            nums.append(p)
            continue
        p = ring.element(p)
        m = _is_inverse_qpower(p, ring)
        nums.append(Terminator(m) if m is not None else p)
    for p in nums:
        if isinstance(p, Terminator):
            stop = min(stop, p.m)
    dens = []
    for d in denominators:
        if isinstance(d, GradedMonomial):
            if d.grading != grading:
                raise NotGraded("denominator grading differs from the argument grading")
            d.require_graded()
            dens.append(d)
            continue
        d = ring.element(d)
        if ring.kind == "symbolic" and not d.is_scalar():
            raise UnexpandableDenominator(
                f"denominator parameter {d.render()} is not a scalar of Q(q) and carries no grading"
            )
        dens.append(d)

    total = GradedSeries.zero(ring, grading, N)
    for n in range(stop + 1):
        sign = -1 if (n * power) % 2 else 1
        scalar = ring.scalar(QRat.qpow(comb(n, 2) * power) / qfactorial(n)) * sign
        coeff = arg.coeff**n
        series_factors = []
        for p in nums:
            if isinstance(p, Terminator):
                coeff = coeff * ring.scalar(qpoch_scalar(-p.m, n))
            elif isinstance(p, CauchyRatio):
                top, bottom = ring.element(p.top), ring.element(p.bottom)
                coeff = ring.div(coeff, bottom**n) * cauchy_p(n, bottom, top, ring)
            elif isinstance(p, GradedMonomial):
                series_factors.append(qpoch_series(p, n, N, ring))
            else:
                coeff = coeff * qpoch(p, n, ring)
        for d in dens:
            if isinstance(d, GradedMonomial):
                series_factors.append(qpoch_finite_inverse(d, n, N, ring))
            else:
                coeff = ring.div(coeff, qpoch(d, n, ring))
        if ring.is_zero(coeff):
            continue
        term = GradedSeries(ring, grading, N, {tuple(e * n for e in arg.exps): coeff * scalar})
        for f in series_factors:
            term = term * f
        total = total + term
    return total


def phi_terminating_cleared(m: int, numerators, denominators, argument, ring=SYMBOLIC):
    """``(b_1,...,b_s; q)_m`` times ``rPhi_s[q^-m, numerators; denominators; q; argument]``.

    Clearing the denominators turns a terminating series into a polynomial:
    ``(b;q)_m / (b;q)_n = (b q^n; q)_{m-n}``.
    """
    r = len(numerators) + 1
    s = len(denominators)
    power = 1 + s - r
    arg = ring.element(argument)
    dens = [ring.element(b) for b in denominators]
    total = ring.zero()
    for n in range(m + 1):
        w = QRat.qpow(comb(n, 2) * power) * qpoch_scalar(-m, n) / qfactorial(n)
        term = ring.scalar(w) * (-1 if (n * power) % 2 else 1) * arg**n
        for p in numerators:
            term = term * qpoch(p, n, ring)
        for b in dens:
            term = term * qpoch(b * ring.qpow(n), m - n, ring)
        total = total + term
    return total

"""The homogeneous difference operator D_xy, the q-derivative D_a and T(bD_a).

Operators act on symbolic polynomials and, coefficient by coefficient, on
graded series.  A q-derivative taken with respect to a grading variable acts
on the grading exponents directly.
"""

from __future__ import annotations

from .algebra.mpoly import MPoly
from .algebra.series import GradedMonomial, GradedSeries
from .primitives import qfactorial


def _on_coeffs(f, fn):
    if isinstance(f, GradedSeries):
        return f.map_coeffs(fn)
    return fn(f)


def dxy_apply(f, x: str = "x", y: str = "y"):
    """``[f(x, y/q) - f(qx, y)] / (x - y/q)``, by exact division.

    Raises :class:`~qid.errors.NotDivisible` when ``f`` lies outside the
    operator's polynomial domain.
    """

    def one(p: MPoly) -> MPoly:
        uni = p.uni
        q = MPoly.qpow(1, uni)
        xv, yv = uni.var(x), uni.var(y)
        diff = p.subst({y: yv / q}) - p.subst({x: q * xv})
        if diff.is_zero():
            return diff
        return diff.exact_div(xv - yv / q)

    return _on_coeffs(f, one)


def dxy_power(f, k: int, x: str = "x", y: str = "y"):
    """k-fold iterate of :func:`dxy_apply`, computed step by step."""
    for _ in range(k):
        f = dxy_apply(f, x, y)
    return f


def da_apply(f, a: str = "a"):
    """``[f(a) - f(qa)] / a``.

    On a series graded by ``a`` this is the grading q-derivative and lowers
    the truncation order by one.
    """
    if isinstance(f, GradedSeries) and a in f.grading:
        return f.q_derivative(a)

    def one(p: MPoly) -> MPoly:
        av = p.uni.var(a)
        diff = p - p.subst({a: MPoly.qpow(1, p.uni) * av})
        if diff.is_zero():
            return diff
        return diff.exact_div(av)

    return _on_coeffs(f, one)


def da_power(f, n: int, a: str = "a"):
    for _ in range(n):
        f = da_apply(f, a)
    return f


def _is_zero(f) -> bool:
    return f.is_zero()


def t_exp_apply(b, f, a: str, N: int | None = None):
    """``T(b D_a) f = sum_n b^n D_a^n f / (q;q)_n``.

    With ``b`` a graded monomial the sum stops at the truncation order ``N``;
    with ``b`` a plain polynomial (or variable name) ``f`` must be a
    polynomial in ``a`` so that the sum terminates.
    """
    if isinstance(b, GradedMonomial):
        b.require_graded()
        if not isinstance(f, GradedSeries):
            from .algebra.rings import SYMBOLIC

            f = GradedSeries.const(f, SYMBOLIC, b.grading, N)
        if N is None:
            N = f.order
        ring = f.ring
        total = GradedSeries.zero(ring, b.grading, N)
        current = f
        n = 0
        while n * b.degree <= N:
            if current.is_zero():
                break
            term = current * (b**n)
            total = total + term.map_coeffs(lambda c, n=n: c * ring.scalar(1 / qfactorial(n)))
            n += 1
            if isinstance(current, GradedSeries) and a in current.grading and current.order == 0:
                break
            current = da_apply(current, a)
        return total.truncate(N)

    from .errors import NotGraded

    if isinstance(f, GradedSeries):
        raise NotGraded("T(bD) on a series needs a graded b")
    bb = f.uni.var(b) if isinstance(b, str) else f.uni.const(b) if not isinstance(b, MPoly) else b
    if f.degree(a) < 0:
        return f
    if a in f.variables() and f.shift is not None:
        raise NotGraded(f"{a} carries negative exponents; T(bD_{a}) would not terminate")
    total = f.uni.zero()
    current = f
    n = 0
    while not current.is_zero():
        total = total + bb**n * current / qfactorial(n)
        current = da_apply(current, a)
        n += 1
    return total

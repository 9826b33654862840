"""Polynomial families built from the q-primitives.

Variable roles are keyword arguments holding a variable name or a ring
element, so one constructor serves every renaming (``u, v`` in place of
``x, y``, swapped arguments, scaled arguments).  Symbolic results are cached;
caching is keyed on every argument, so cached and uncached paths agree.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .algebra.qrat import QRat
from .algebra.rings import SYMBOLIC, PointRing
from .primitives import (
    INF,
    Alpha,
    gen_qbinom_negq,
    gen_qbinom_q,
    qbinom,
    qfactorial,
    qpoch,
    tau,
)


def _memo(fn):
    cached = lru_cache(maxsize=4096)(fn)

    def wrapper(*args, **kwargs):
        # values at a random point are one-off; keep the cache for polynomials
        if any(isinstance(v, PointRing) for v in (*args, *kwargs.values())):
            return fn(*args, **kwargs)
        try:
            return cached(*args, **kwargs)
        except TypeError:  # unhashable role argument
            return fn(*args, **kwargs)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.cache_clear = cached.cache_clear
    return wrapper


@lru_cache(maxsize=None)
def _ltilde_weight(n: int, k: int, r: int, s: int) -> QRat:
    """``[n,k]_q q^(tau(r,s,k) + C(k,2))``."""
    return qbinom(n, k) * QRat.qpow(tau(r, s, k) + comb(k, 2))


@_memo
def cauchy_p(n: int, first="x", second="y", ring=SYMBOLIC):
    """Cauchy polynomial ``p_n(first, second) = prod_{i<n} (first - q^i second)``."""
    x = ring.element(first)
    y = ring.element(second)
    out = ring.one()
    for i in range(n):
        out = out * (x - ring.qpow(i) * y)
    return out


@_memo
def ltilde(n: int, r: int, s: int, alpha: Alpha, x="x", y="y", z="z", a="a", ring=SYMBOLIC):
    """Generalized polynomial with double q-binomial coefficients.

    ``sum_k [n,k]_q [alpha,k]_{-q} q^(tau(r,s,k)+C(k,2)) (a;q)_k p_{n-k}(x,y) z^k``.
    """
    zz = ring.element(z)
    out = ring.zero()
    for k in range(n + 1):
        w = ring.scalar(_ltilde_weight(n, k, r, s))
        term = w * gen_qbinom_negq(alpha, k, ring) * qpoch(a, k, ring)
        if ring.is_zero(term):
            continue
        out = out + term * cauchy_p(n - k, x, y, ring) * zz**k
    return out


@_memo
def l_jia(n: int, m: int, nn: int, alpha: Alpha, x="x", z="z", a="a", ring=SYMBOLIC):
    """The ``y = 0`` specialisation written directly with ``x^(n-k)``."""
    xx, zz = ring.element(x), ring.element(z)
    out = ring.zero()
    for k in range(n + 1):
        w = ring.scalar(_ltilde_weight(n, k, m, nn))
        term = w * gen_qbinom_negq(alpha, k, ring) * qpoch(a, k, ring)
        out = out + term * zz**k * xx ** (n - k)
    return out


def _falling_qfactorial(n: int, k: int) -> QRat:
    """``(q;q)_n / (q;q)_{n-k}``."""
    return qfactorial(n) / qfactorial(n - k)


@_memo
def cigler_c(n: int, alpha: Alpha, b="b", x="x", y="y", ring=SYMBOLIC):
    """``sum_k (-1)^k q^C(k,2) [alpha,k]_q b^k (q;q)_n/(q;q)_{n-k} p_{n-k}(x,y)``."""
    bb = ring.element(b)
    out = ring.zero()
    for k in range(n + 1):
        w = ring.scalar(QRat.qpow(comb(k, 2)) * _falling_qfactorial(n, k)) * (-1) ** k
        out = out + w * gen_qbinom_q(alpha, k, ring) * bb**k * cauchy_p(n - k, x, y, ring)
    return out


@_memo
def cigler_d(n: int, alpha: Alpha, b="b", x="x", y="y", ring=SYMBOLIC):
    """Same sum with the bracket ``(-1)^(n+k) q^-C(n,2) p_{n-k}(y,x)``."""
    bb = ring.element(b)
    out = ring.zero()
    for k in range(n + 1):
        w = ring.scalar(QRat.qpow(comb(k, 2) - comb(n, 2)) * _falling_qfactorial(n, k))
        w = w * (-1) ** (n + k)
        out = out + w * gen_qbinom_q(alpha, k, ring) * bb**k * cauchy_p(n - k, y, x, ring)
    return out


@_memo
def hahn_phi(n: int, sigma="s", x="x", ring=SYMBOLIC):
    """Hahn (Al-Salam--Carlitz) polynomial ``sum_k [n,k]_q (sigma;q)_k x^k``."""
    xx = ring.element(x)
    out = ring.zero()
    for k in range(n + 1):
        out = out + ring.scalar(qbinom(n, k)) * qpoch(sigma, k, ring) * xx**k
    return out


@_memo
def rs_r(n: int, x="x", y="y", ring=SYMBOLIC):
    """Generalized Rogers--Szego polynomial ``sum_k [n,k]_q x^k y^(n-k)``."""
    xx, yy = ring.element(x), ring.element(y)
    out = ring.zero()
    for k in range(n + 1):
        out = out + ring.scalar(qbinom(n, k)) * xx**k * yy ** (n - k)
    return out


@_memo
def f_trivariate(n: int, x="x", y="y", z="z", ring=SYMBOLIC):
    """Trivariate polynomial obtained from ``ltilde`` at alpha -> oo, r = s = 0.

    ``F_n(x,y,z) = (-1)^n q^-C(n,2) ltilde_n(oo; y, x, -z, -q)``; the
    ``(-q;q)_k`` from ``(a;q)_k`` cancels the limiting denominator.
    """
    zz = ring.element(z)
    base = ltilde(n, 0, 0, INF, x=y, y=x, z=-zz, a=-ring.q, ring=ring)
    return base * ring.scalar(QRat.qpow(-comb(n, 2))) * (-1) ** n


def rho_e_reduced(n: int, ring=SYMBOLIC):
    """``ltilde_n`` at ``(r, s) = (0, -1)``, alpha = n, ``(x, y, z, a) = (1, 0, x, -qy)``."""
    return ltilde(n, 0, -1, Alpha.integer(n), x=ring.one(), y=ring.zero(), z="x", a=-ring.q * ring.var("y"), ring=ring)


def h_reduced(n: int, ring=SYMBOLIC):
    """``ltilde_n`` at ``(r, s) = (-1, 0)``, alpha -> oo, ``z = 1``, ``a = -q``."""
    return ltilde(n, -1, 0, INF, x="x", y="y", z=ring.one(), a=-ring.q, ring=ring)


def g_reduced(n: int, ring=SYMBOLIC):
    """``ltilde_n`` at ``(r, s) = (-1, 0)``, alpha -> oo, ``x -> x q^-n``, ``y = 0``, ``a = -q``."""
    return ltilde(n, -1, 0, INF, x=ring.var("x") * ring.qpow(-n), y=ring.zero(), z="z", a=-ring.q, ring=ring)


def reduction_suite(n_max: int = 6, ring=SYMBOLIC):
    """Specialisations of ``ltilde``.

    Returns ``(name, lhs, rhs)`` triples.  The first two kinds compare with
    independently defined families; the last three have no independent
    definition here, so ``rhs`` is ``None`` and ``lhs`` is the reduced
    polynomial itself.
    """
    from .primitives import SYM

    out = []
    for n in range(n_max + 1):
        for (r, s, alpha) in ((1, -1, Alpha.integer(2)), (0, 0, SYM), (-1, 2, INF)):
            out.append(
                (
                    f"y0[n={n},r={r},s={s},alpha={alpha}]",
                    ltilde(n, r, s, alpha, y=ring.zero(), ring=ring),
                    l_jia(n, r, s, alpha, ring=ring),
                )
            )
        # F_n against its own closed k-sum (no shared ltilde code path):
        # (-1)^n q^C(n,2) F_n = sum_k [n,k] (-1)^k q^C(k,2) z^k p_{n-k}(y,x).
        direct = ring.zero()
        zz = ring.var("z")
        for k in range(n + 1):
            w = ring.scalar(qbinom(n, k) * QRat.qpow(comb(k, 2))) * (-1) ** k
            direct = direct + w * zz**k * cauchy_p(n - k, "y", "x", ring)
        weighted = f_trivariate(n, ring=ring) * ring.scalar(QRat.qpow(comb(n, 2))) * (-1) ** n
        out.append((f"F[n={n}]", weighted, direct))
        out.append((f"rho_e[n={n}]", rho_e_reduced(n, ring), None))
        out.append((f"h[n={n}]", h_reduced(n, ring), None))
        out.append((f"g[n={n}]", g_reduced(n, ring), None))
    return out

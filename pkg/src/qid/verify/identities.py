"""Builders for every registered identity.

Each builder maps resolved parameters and a coefficient ring to a list of
:class:`Check` objects.  Builders that only use ring operations also run at
rational points; those needing substitution or exact polynomial division are
symbolic only.

Sum bounds: a k-sum carrying ``(zt)^k`` or ``(wz)^k`` stops at ``k = N``
because the next term has grading degree ``N + 1``; j-sums stop at their
``(q^-k;q)_j`` or ``(q^-m;q)_j`` terminator or at the grading degree ``N``
their ``t^j`` or ``x^j`` factor carries.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from math import comb

from ..algebra.mpoly import DEFAULT_UNIVERSE
from ..algebra.qrat import QRat
from ..algebra.rings import SymbolicRing
from ..algebra.series import GradedMonomial, GradedSeries
from ..families import (
    cauchy_p,
    f_trivariate,
    hahn_phi,
    l_jia,
    ltilde,
    reduction_suite,
    rs_r,
)
from ..operators import da_apply, da_power, dxy_apply, t_exp_apply
from ..primitives import (
    Alpha,
    CauchyRatio,
    euler_neg,
    euler_pos,
    gen_qbinom_negq,
    neg_alpha_poch,
    phi_rs,
    phi_terminating_cleared,
    qalpha,
    qbinom,
    qfactorial,
    qpoch,
    qpoch_finite_inverse,
    qpoch_scalar,
    qpoch_series,
    tau,
)
from .registry import (
    POINTS,
    SERIES,
    Check,
    IdentityDescriptor,
    alpha_param,
    int_param,
    register,
)

DEFAULT_ALPHAS = ("int:0", "int:1", "int:2", "int:3", "int:4", "sym")
NARROW_ALPHAS = ("int:0", "int:1", "int:2", "int:3", "sym")
WIDE_RS = tuple(range(-2, 3))
NARROW_RS = tuple(range(-1, 2))


@lru_cache(maxsize=None)
def symbolic_ring(laurent: frozenset = frozenset({"A"})) -> SymbolicRing:
    if laurent == DEFAULT_UNIVERSE.laurent:
        return SymbolicRing(DEFAULT_UNIVERSE)
    return SymbolicRing(DEFAULT_UNIVERSE.with_laurent(*laurent))


# -- grid helpers ------------------------------------------------------------------
def _alphas(cfg, default):
    return tuple(cfg.alphas) if getattr(cfg, "alphas", None) else default


def _rs_pairs(cfg, default):
    rs = getattr(cfg, "rs", None)
    if rs is None:
        return [(r, s) for r in default for s in default]
    return list(rs)


def _order(cfg, default=8):
    return getattr(cfg, "order", None) or default


def _n_max(cfg, default):
    n = getattr(cfg, "n_max", None)
    return default if n is None else n


def _rs_alpha_grid(cfg, base, alpha_default, rs_default):
    out = []
    for (r, s), al in product(_rs_pairs(cfg, rs_default), _alphas(cfg, alpha_default)):
        out.append(dict(base, r=r, s=s, alpha=al))
    return out


# -- shared pieces --------------------------------------------------------------------
def _gm(coeff, grading, **exps) -> GradedMonomial:
    return GradedMonomial.of(coeff, grading, **exps)


def _ratio(ring, grading, var, top, bottom, N) -> GradedSeries:
    """``(top*g; q)_oo / (bottom*g; q)_oo`` in the grading variable ``g = var``."""
    one = {var: 1}
    return euler_pos(_gm(ring.element(top), grading, **one), N, ring) * euler_neg(
        _gm(ring.element(bottom), grading, **one), N, ring
    )


@lru_cache(maxsize=None)
def _q2q2(k: int) -> QRat:
    """``(q^2; q^2)_k``."""
    return qfactorial(k) * qpoch_scalar(1, k, -1)


def gf_weight(alpha: Alpha, r: int, s: int, k: int, ring, a="a"):
    """``(-q^-alpha, a; q)_k q^(k alpha + tau) / (q^2;q^2)_k``."""
    return (
        neg_alpha_poch(alpha, k, ring)
        * qpoch(a, k, ring)
        * ring.scalar(_gf_scalar(r, s, k))
    )


@lru_cache(maxsize=None)
def _gf_scalar(r: int, s: int, k: int) -> QRat:
    return QRat.qpow(tau(r, s, k)) / _q2q2(k)


def _alpha(p) -> Alpha:
    return Alpha.parse(p["alpha"])


# -- q-shifted factorial inversion -------------------------------------------------------
def build_qpoch_inversion(p, ring):
    a = ring.var("a")
    q = ring.q
    checks = []
    for n in range(p["n_max"] + 1):
        lhs = qpoch(a * ring.qpow(-n), n, ring)
        rhs = qpoch(q / a, n, ring) * (-a) ** n * ring.qpow(-n - comb(n, 2))
        checks.append(Check(f"n={n}", lhs, rhs))
    return checks


register(
    IdentityDescriptor(
        id="qpoch-inversion",
        statement="(a q^-n; q)_n = (q/a; q)_n (-a)^n q^(-n-C(n,2)), Laurent in a",
        modes=(SERIES,),
        grading=(),
        params={"n_max": int_param(12, 0, 40)},
        build=build_qpoch_inversion,
        grid=lambda cfg: [{"n_max": 12}],
        laurent=frozenset({"A", "a"}),
    )
)


# -- seven-variable q-difference equation ---------------------------------------------
def qde_sides(f, r: int, s: int, alpha: Alpha, printed: bool = False):
    """Both sides of the q-difference equation characterising the ltilde expansions.

    ``printed=True`` uses the brace orientation ``f(qx,y) - f(x,y/q)`` and
    omits the ``z`` on the middle group; that variant is not satisfied by
    ``ltilde`` and is kept so the discrepancy stays testable.
    """
    uni = f.uni
    q = uni.q
    x, y, z, a = (uni.var(v) for v in "xyza")
    qa = qalpha(alpha, SymbolicRing(uni))

    def at(x_scale: bool, y_scale: bool, z_exp: int):
        rules = {"z": z * uni.const(QRat.qpow(z_exp))}
        if x_scale:
            rules["x"] = q * x
        if y_scale:
            rules["y"] = y / q
        return f.subst(rules)

    def brace(e: int):
        shifted_x = at(True, False, e)
        shifted_y = at(False, True, e)
        return shifted_x - shifted_y if printed else shifted_y - shifted_x

    lhs = (x - y / q) * (f - at(False, False, 2))
    qs = uni.const(QRat.qpow(-s))
    middle_z = uni.one() if printed else z
    rhs = (
        qs * qa * z * brace(r - s)
        + qs * (1 - a * qa) * middle_z * brace(1 + r - s)
        - a * z * qs * brace(2 + r - s)
    )
    return lhs, rhs


def build_qde(p, ring):
    al = _alpha(p)
    checks = []
    for n in range(p["n_max"] + 1):
        f = ltilde(n, p["r"], p["s"], al, ring=ring)
        lhs, rhs = qde_sides(f, p["r"], p["s"], al)
        checks.append(Check(f"n={n}", lhs, rhs))
    return checks


register(
    IdentityDescriptor(
        id="qde-membership",
        statement="ltilde_n satisfies the seven-variable q-difference equation in (alpha,x,y,a,z,r,s)",
        modes=(SERIES,),
        grading=(),
        params={
            "n_max": int_param(6, 0, 12),
            "r": int_param(0, -4, 4),
            "s": int_param(0, -4, 4),
            "alpha": alpha_param("sym"),
        },
        build=build_qde,
        grid=lambda cfg: _rs_alpha_grid(cfg, {"n_max": _n_max(cfg, 6)}, DEFAULT_ALPHAS, WIDE_RS),
    )
)


# -- A_k recursion ---------------------------------------------------------------------
def build_ak(p, ring):
    N, K = p["N"], p["k_max"]
    r, s, al = p["r"], p["s"], _alpha(p)
    G = ("t",)
    a = ring.var("a")
    qa = qalpha(al, ring)
    a0 = _ratio(ring, G, "t", "y", "x", N)
    gen = GradedSeries(
        ring, G, N, {(n,): ltilde(n, r, s, al, ring=ring) * ring.scalar(1 / qfactorial(n)) for n in range(N + 1)}
    )
    checks = []
    powers = [a0]
    iterated = a0
    for k in range(1, min(K, N) + 1):
        powers.append(dxy_apply(powers[-1]))
        step = (
            ring.scalar(QRat.qpow(r * (k - 1) - s * k) / (qfactorial(k) / qfactorial(k - 1) * (1 + QRat.qpow(k))))
            * (qa + ring.qpow(k - 1))
            * (1 - a * ring.qpow(k - 1))
        )
        iterated = dxy_apply(iterated) * step
        closed = powers[k] * gf_weight(al, r, s, k, ring)
        checks.append(Check(f"k={k}:iterated", iterated, closed))
        checks.append(
            Check(f"k={k}:Dxy^k ratio = t^k ratio", powers[k], a0.truncate(N - k) * _gm(ring.one(), G, t=k))
        )
        zk = gen.map_coeffs(lambda c, k=k: c.coeff_in("z", k))
        checks.append(Check(f"k={k}:z^k coefficient", zk, closed))
    return checks


register(
    IdentityDescriptor(
        id="ak-recursion",
        statement="A_k from the single-step D_xy recursion equals the closed q^(k alpha+tau)(-q^-alpha,a;q)_k/(q^2;q^2)_k D_xy^k A_0 form",
        modes=(SERIES,),
        grading=("t",),
        params={
            "N": int_param(8, 1, 16),
            "k_max": int_param(4, 0, 8),
            "r": int_param(0, -4, 4),
            "s": int_param(0, -4, 4),
            "alpha": alpha_param("sym"),
        },
        build=build_ak,
        grid=lambda cfg: _rs_alpha_grid(cfg, {"N": _order(cfg), "k_max": 4}, NARROW_ALPHAS, NARROW_RS),
        truncation_param="N",
    )
)


# -- generating functions in t ------------------------------------------------------------
def _ksum_series(ring, G, N, al, r, s, z="z", extra=None):
    """``sum_k (-q^-alpha, a; q)_k q^(k alpha + tau) (z t)^k / (q^2;q^2)_k``."""
    zz = ring.element(z)
    coeffs = {}
    for k in range(N + 1):
        c = gf_weight(al, r, s, k, ring) * zz**k
        if extra is not None:
            c = c * extra(k)
        coeffs[(k,) + (0,) * (len(G) - 1)] = c
    return GradedSeries(ring, G, N, coeffs)


def build_gf_main(p, ring):
    N, r, s, al = p["N"], p["r"], p["s"], _alpha(p)
    G = ("t",)
    lhs = GradedSeries(
        ring, G, N, {(n,): ltilde(n, r, s, al, ring=ring) * ring.scalar(1 / qfactorial(n)) for n in range(N + 1)}
    )
    rhs = _ratio(ring, G, "t", "y", "x", N) * _ksum_series(ring, G, N, al, r, s)
    return [Check("t-series", lhs, rhs)]


register(
    IdentityDescriptor(
        id="gf-main",
        statement="sum ltilde_n t^n/(q;q)_n = (yt;q)_oo/(xt;q)_oo sum_k (-q^-alpha,a;q)_k q^(k alpha+tau) (zt)^k/(q^2;q^2)_k",
        modes=(SERIES, POINTS),
        grading=("t",),
        params={
            "N": int_param(8, 0, 16),
            "r": int_param(0, -4, 4),
            "s": int_param(0, -4, 4),
            "alpha": alpha_param("sym"),
        },
        build=build_gf_main,
        grid=lambda cfg: _rs_alpha_grid(cfg, {"N": _order(cfg)}, DEFAULT_ALPHAS, WIDE_RS),
        point_vars=("x", "y", "z", "a", "A"),
        truncation_param="N",
    )
)


def build_gf_cauchy(p, ring):
    N, al = p["N"], _alpha(p)
    G = ("t",)
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    coeffs = {}
    for n in range(N + 1):
        inner = ring.zero()
        for k in range(n + 1):
            w = ring.scalar(qbinom(n, k) * QRat.qpow(k * (k - n))) * (-1) ** k
            term = w * gen_qbinom_negq(al, k, ring) * qpoch("a", k, ring) * z**k
            inner = inner + ring.div(term, cauchy_p(k, y, x * ring.qpow(1 - n), ring))
        coeffs[(n,)] = cauchy_p(n, x, y, ring) * ring.scalar(1 / qfactorial(n)) * inner
    lhs = GradedSeries(ring, G, N, coeffs)
    rhs = _ratio(ring, G, "t", "y", "x", N) * _ksum_series(ring, G, N, al, 0, 0)
    return [Check("t-series", lhs, rhs)]


register(
    IdentityDescriptor(
        id="gf-cauchy-2phi1",
        statement="r = s = 0 form with the k-sum divided by p_k(y, x q^(1-n)) equals the Euler ratio times a 2phi1 in z t q^alpha",
        modes=(POINTS,),
        grading=("t",),
        params={"N": int_param(4, 0, 12), "alpha": alpha_param("sym")},
        build=build_gf_cauchy,
        grid=lambda cfg: [{"N": min(_order(cfg), 4), "alpha": al} for al in _alphas(cfg, DEFAULT_ALPHAS + ("inf",))],
        point_vars=("x", "y", "z", "a", "A"),
        truncation_param="N",
        notes="t^n coefficient is a rational function of total degree below 4n^2+8; 25 points on a 97-height grid is a probabilistic check",
    )
)


def build_gf_y0(p, ring):
    N, r, s, al = p["N"], p["r"], p["s"], _alpha(p)
    G = ("t",)
    lhs = GradedSeries(
        ring, G, N, {(n,): l_jia(n, r, s, al, ring=ring) * ring.scalar(1 / qfactorial(n)) for n in range(N + 1)}
    )
    rhs = euler_neg(_gm(ring.var("x"), G, t=1), N, ring) * _ksum_series(ring, G, N, al, r, s)
    return [Check("t-series", lhs, rhs)]


register(
    IdentityDescriptor(
        id="gf-y0",
        statement="y = 0 case: sum L_(r,s)(alpha,x,z,a) t^n/(q;q)_n = 1/(xt;q)_oo times the same k-sum",
        modes=(SERIES,),
        grading=("t",),
        params={
            "N": int_param(8, 0, 16),
            "r": int_param(0, -4, 4),
            "s": int_param(0, -4, 4),
            "alpha": alpha_param("sym"),
        },
        build=build_gf_y0,
        grid=lambda cfg: _rs_alpha_grid(cfg, {"N": _order(cfg)}, NARROW_ALPHAS + ("inf",), NARROW_RS),
        truncation_param="N",
    )
)


def build_gf_fn(p, ring):
    N = p["N"]
    G = ("t",)
    lhs = GradedSeries(
        ring,
        G,
        N,
        {
            (n,): f_trivariate(n, ring=ring) * ring.scalar(QRat.qpow(comb(n, 2)) / qfactorial(n)) * (-1) ** n
            for n in range(N + 1)
        },
    )
    t1 = lambda v: _gm(ring.var(v), G, t=1)  # noqa: E731
    rhs = euler_pos(t1("x"), N, ring) * euler_pos(t1("z"), N, ring) * euler_neg(t1("y"), N, ring)
    return [Check("t-series", lhs, rhs)]


register(
    IdentityDescriptor(
        id="gf-Fn",
        statement="sum F_n (-1)^n q^C(n,2) t^n/(q;q)_n = (xt, zt; q)_oo/(yt; q)_oo",
        modes=(SERIES,),
        grading=("t",),
        params={"N": int_param(8, 0, 16)},
        build=build_gf_fn,
        grid=lambda cfg: [{"N": _order(cfg)}],
        truncation_param="N",
    )
)


# -- q-derivative identities --------------------------------------------------------------
def _random_apoly(rng: random.Random, uni, deg: int):
    a, y = uni.var("a"), uni.var("y")
    out = uni.zero()
    for i in range(deg + 1):
        c = uni.const(QRat.from_coeffs([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]))
        if rng.random() < 0.3:
            c = c + rng.randint(-2, 2) * y
        out = out + c * a**i
    return out


def build_leibniz(p, ring):
    uni = ring.universe
    rng = random.Random(p["seed"])
    q = uni.q
    a = uni.var("a")
    checks = []
    for i in range(p["pairs"]):
        f = _random_apoly(rng, uni, rng.randint(0, p["deg"]))
        g = _random_apoly(rng, uni, rng.randint(0, p["deg"]))
        fg = f * g
        df = [f]
        for _ in range(p["n_max"]):
            df.append(da_apply(df[-1]))
        lhs_n = fg
        for n in range(p["n_max"] + 1):
            if n:
                lhs_n = da_apply(lhs_n)
            rhs = uni.zero()
            for k in range(n + 1):
                gk = g.subst({"a": q**k * a})
                rhs = rhs + uni.const(QRat.qpow(k * (k - n)) * qbinom(n, k)) * df[k] * da_power(gk, n - k)
            checks.append(Check(f"pair={i},n={n}", lhs_n, rhs))
    return checks


register(
    IdentityDescriptor(
        id="leibniz",
        statement="D_a^n {f g} = sum_k q^(k(k-n)) [n,k] D_a^k{f} D_a^(n-k){g(a q^k)} on seeded random polynomials",
        modes=(SERIES,),
        grading=(),
        params={
            "pairs": int_param(50, 1, 500),
            "n_max": int_param(4, 0, 8),
            "deg": int_param(5, 0, 10),
            "seed": int_param(42, 0, 2**31),
        },
        build=build_leibniz,
        grid=lambda cfg: [{"pairs": 50, "n_max": 4, "deg": 5, "seed": getattr(cfg, "seed", 42)}],
    )
)


def build_da_ratio(p, ring):
    N = p["N"]
    G = ("a",)
    s_, w_ = ring.var("s"), ring.var("w")
    checks = []
    for n in range(p["n_max"] + 1):
        big = euler_pos(_gm(s_, G, a=1), N + n, ring) * euler_neg(_gm(w_, G, a=1), N + n, ring)
        lhs = da_power(big, n, "a")
        rhs = big.truncate(N) * qpoch_finite_inverse(_gm(s_, G, a=1), n, N, ring) * cauchy_p(n, w_, s_, ring)
        checks.append(Check(f"n={n}", lhs, rhs))
    return checks


register(
    IdentityDescriptor(
        id="da-ratio",
        statement="D_a^n {(as;q)_oo/(aw;q)_oo} = w^n (s/w;q)_n/(as;q)_n (as;q)_oo/(aw;q)_oo as series in a",
        modes=(SERIES,),
        grading=("a",),
        params={"N": int_param(8, 0, 16), "n_max": int_param(4, 0, 8)},
        build=build_da_ratio,
        grid=lambda cfg: [{"N": _order(cfg), "n_max": 4}],
        truncation_param="N",
    )
)


def _dte_phi(ring, G, N, j, top="y", bottom="x", den_var="y", arg_var="x", grade_den="w", grade_arg="t"):
    """``2phi1[top/bottom, 0; den_var*w*q^j; q; arg_var*t]``."""
    den = _gm(ring.element(den_var) * ring.qpow(j), G, **{grade_den: 1})
    arg = _gm(ring.element(arg_var), G, **{grade_arg: 1})
    return phi_rs([CauchyRatio(top, bottom), ring.zero()], [den], arg, N, ring)


def build_toperator(p, ring):
    N, K = p["N"], p["k_max"]
    G = ("t", "w")
    x, y = ring.var("x"), ring.var("y")
    ratio = _ratio(ring, G, "w", "y", "x", N)
    phis = {}
    checks = []
    for k in range(K + 1):
        f = ratio * _gm(ring.one(), G, w=k)
        lhs = t_exp_apply(_gm(ring.one(), G, t=1), f, "w", N)
        acc = GradedSeries.zero(ring, G, N)
        for j in range(min(k, N) + 1):
            M = N - j
            if j not in phis:
                phis[j] = (
                    qpoch_series(_gm(x, G, w=1), j, N, ring)
                    * qpoch_finite_inverse(_gm(y, G, w=1), j, N, ring)
                    * _dte_phi(ring, G, N, j)
                )
            w = QRat.qpow(k * j - comb(j, 2)) * qpoch_scalar(-k, j) / qfactorial(j) * (-1) ** j
            block = phis[j].truncate(M) * ring.scalar(w)
            acc = acc + block * _gm(ring.one(), G, t=j, w=k - j)
        rhs = ratio * acc
        checks.append(Check(f"k={k}", lhs, rhs))
    return checks


register(
    IdentityDescriptor(
        id="toperator-lemma",
        statement="T(tD_w){(yw;q)_oo/(xw;q)_oo w^k} = same ratio w^k sum_(j<=k) ... 2phi1[y/x,0; ywq^j; q; xt]",
        modes=(SERIES,),
        grading=("t", "w"),
        params={"N": int_param(8, 0, 12), "k_max": int_param(4, 0, 8)},
        build=build_toperator,
        grid=lambda cfg: [{"N": _order(cfg), "k_max": 4}],
        truncation_param="N",
    )
)


# -- Rogers formulas ----------------------------------------------------------------------
def _double_lhs(ring, G, N, poly):
    coeffs = {}
    for n in range(N + 1):
        for m in range(N + 1 - n):
            coeffs[(n, m)] = poly(n + m) * ring.scalar(1 / (qfactorial(n) * qfactorial(m)))
    return GradedSeries(ring, G, N, coeffs)


def build_rogers(p, ring):
    N, r, s, al = p["N"], p["r"], p["s"], _alpha(p)
    G = ("t", "w")
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")
    lhs = _double_lhs(ring, G, N, lambda n: ltilde(n, r, s, al, ring=ring))
    # weights c_k = q^(k alpha + tau) (-q^-alpha, a; q)_k / (-q;q)_k
    ck = [
        neg_alpha_poch(al, k, ring) * qpoch("a", k, ring) * ring.scalar(QRat.qpow(tau(r, s, k)) / qpoch_scalar(1, k, -1))
        * z**k
        for k in range(N + 1)
    ]
    acc = GradedSeries.zero(ring, G, N)
    for j in range(N + 1):
        M = N - j
        pk = GradedSeries(
            ring, G, M, {(0, k - j): ck[k] * ring.scalar(1 / qfactorial(k - j)) for k in range(j, j + M + 1)}
        )
        block = (
            qpoch_series(_gm(x, G, w=1), j, M, ring)
            * qpoch_finite_inverse(_gm(y, G, w=1), j, M, ring)
            * _dte_phi(ring, G, M, j)
        )
        block = (block * pk) * ring.scalar(1 / qfactorial(j))
        acc = acc + block * _gm(ring.one(), G, t=j)
    rhs = _ratio(ring, G, "w", "y", "x", N) * acc
    return [Check("(t,w)-series", lhs, rhs)]


register(
    IdentityDescriptor(
        id="rogers-main",
        statement="sum ltilde_(n+m) t^n w^m/((q;q)_n (q;q)_m) = (yw;q)_oo/(xw;q)_oo sum_k sum_(j<=k) ... 2phi1[y/x,0; ywq^j; q; xt]",
        modes=(SERIES,),
        grading=("t", "w"),
        params={
            "N": int_param(8, 0, 12),
            "r": int_param(0, -4, 4),
            "s": int_param(0, -4, 4),
            "alpha": alpha_param("sym"),
        },
        build=build_rogers,
        grid=lambda cfg: _rs_alpha_grid(cfg, {"N": _order(cfg)}, NARROW_ALPHAS, NARROW_RS),
        truncation_param="N",
    )
)


def build_rogers_r0s0(p, ring):
    return build_rogers(dict(p, r=0, s=0), ring)


register(
    IdentityDescriptor(
        id="rogers-r0s0",
        statement="Rogers formula at r = s = 0, where the weight reduces to q^(k alpha)",
        modes=(SERIES,),
        grading=("t", "w"),
        params={"N": int_param(8, 0, 12), "alpha": alpha_param("sym")},
        build=build_rogers_r0s0,
        grid=lambda cfg: [{"N": _order(cfg), "alpha": al} for al in _alphas(cfg, ("int:0", "int:2", "sym", "inf"))],
        truncation_param="N",
    )
)


def build_rogers_fn(p, ring):
    N = p["N"]
    G = ("t", "w")
    x, y, z = ring.var("x"), ring.var("y"), ring.var("z")

    def weighted_f(n):
        return f_trivariate(n, ring=ring) * ring.scalar(QRat.qpow(comb(n, 2))) * (-1) ** n

    lhs = _double_lhs(ring, G, N, weighted_f)
    acc = GradedSeries.zero(ring, G, N)
    for j in range(N + 1):
        M = N - j
        block = (
            qpoch_series(_gm(y, G, w=1), j, M, ring)
            * qpoch_finite_inverse(_gm(x, G, w=1), j, M, ring)
            * qpoch_finite_inverse(_gm(z, G, w=1), j, M, ring)
            * _dte_phi(ring, G, M, j, top="x", bottom="y", den_var="x", arg_var="y")
        )
        w = QRat.qpow(comb(j, 2)) / qfactorial(j) * (-1) ** j
        acc = acc + block * ring.scalar(w) * _gm(z**j, G, t=j)
    w1 = lambda v: _gm(ring.var(v), G, w=1)  # noqa: E731
    rhs = euler_pos(w1("x"), N, ring) * euler_pos(w1("z"), N, ring) * euler_neg(w1("y"), N, ring) * acc
    return [Check("(t,w)-series", lhs, rhs)]


register(
    IdentityDescriptor(
        id="rogers-Fn",
        statement="bilinear Rogers formula for F_(n+m) (-1)^(n+m) q^C(n+m,2) with (xw, zw;q)_oo/(yw;q)_oo prefactor",
        modes=(SERIES,),
        grading=("t", "w"),
        params={"N": int_param(8, 0, 12)},
        build=build_rogers_fn,
        grid=lambda cfg: [{"N": _order(cfg)}],
        truncation_param="N",
    )
)


# -- Hahn polynomials and mixed generating functions -----------------------------------------
def build_srivastava(p, ring):
    N = p["N"]
    G = ("t",)
    lam = ring.var("l")
    lhs = GradedSeries(
        ring,
        G,
        N,
        {(n,): hahn_phi(n, ring=ring) * qpoch(lam, n, ring) * ring.scalar(1 / qfactorial(n)) for n in range(N + 1)},
    )
    phi = phi_rs([lam, ring.var("s")], [_gm(lam, G, t=1)], _gm(ring.var("x"), G, t=1), N, ring)
    rhs = _ratio(ring, G, "t", lam, ring.one(), N) * phi
    return [Check("t-series", lhs, rhs)]


register(
    IdentityDescriptor(
        id="srivastava-agarwal",
        statement="sum phi_n^(s)(x) (l;q)_n t^n/(q;q)_n = (lt;q)_oo/(t;q)_oo 2phi1[l, s; lt; q; xt]",
        modes=(SERIES, POINTS),
        grading=("t",),
        params={"N": int_param(8, 0, 16)},
        build=build_srivastava,
        grid=lambda cfg: [{"N": _order(cfg)}],
        point_vars=("s", "l", "x"),
        truncation_param="N",
    )
)


def build_chu(p, ring):
    checks = []
    a, c = ring.var("a"), ring.var("c")
    for n in range(p["n_max"] + 1):
        lhs = phi_terminating_cleared(n, [a], [c], ring.q, ring)
        checks.append(Check(f"n={n}", lhs, cauchy_p(n, a, c, ring)))
    return checks


register(
    IdentityDescriptor(
        id="chu-vandermonde",
        statement="(c;q)_n 2phi1[q^-n, a; c; q; q] = (c/a;q)_n a^n = p_n(a, c)",
        modes=(SERIES,),
        grading=(),
        params={"n_max": int_param(10, 0, 20)},
        build=build_chu,
        grid=lambda cfg: [{"n_max": 10}],
    )
)


def _hahn_lhs(ring, G, N, coefficient):
    """``sum_n phi_n^(s)(x) c_n t^n/(q;q)_n`` with ``x`` a grading variable."""
    coeffs = {}
    for n in range(N + 1):
        cn = coefficient(n) * ring.scalar(1 / qfactorial(n))
        for k in range(min(n, N - n) + 1):
            coeffs[(n, k)] = cn * ring.scalar(qbinom(n, k)) * qpoch("s", k, ring)
    return GradedSeries(ring, G, N, coeffs)


def _mixed_j_blocks(ring, G, N, K_of_j):
    """``sum_j q^j/(q;q)_j M_j(x) (ut;q)_j/(vt;q)_j K_j(t)`` with ``M_j = sum_m (s;q)_m (q^-m;q)_j x^m/(q;q)_m``."""
    u, v = ring.var("u"), ring.var("v")
    acc = GradedSeries.zero(ring, G, N)
    for j in range(N + 1):
        M = N - j
        mj = GradedSeries(
            ring,
            G,
            M,
            {
                (0, m - j): qpoch("s", m, ring) * ring.scalar(qpoch_scalar(-m, j) / qfactorial(m))
                for m in range(j, N + 1)
            },
        )
        block = (
            mj
            * qpoch_series(_gm(u, G, t=1), j, M, ring)
            * qpoch_finite_inverse(_gm(v, G, t=1), j, M, ring)
        )
        kj = K_of_j(j, M)
        if kj is not None:
            block = block * kj
        block = block * ring.scalar(QRat.qpow(j) / qfactorial(j))
        acc = acc + block * _gm(ring.one(), G, x=j)
    return acc


def build_mixed_main(p, ring):
    N, r, s, al = p["N"], p["r"], p["s"], _alpha(p)
    G = ("t", "x")
    z = ring.var("z")
    lhs = _hahn_lhs(ring, G, N, lambda n: ltilde(n, r, s, al, x="u", y="v", ring=ring))

    def kj(j, M):
        coeffs = {(k, 0): gf_weight(al, r, s, k, ring) * (z * ring.qpow(j)) ** k for k in range(M + 1)}
        return GradedSeries(ring, G, M, coeffs)

    rhs = _ratio(ring, G, "t", "v", "u", N) * _mixed_j_blocks(ring, G, N, kj)
    return [Check("(t,x)-series", lhs, rhs)]


register(
    IdentityDescriptor(
        id="mixed-main",
        statement="sum phi_n^(s)(x) ltilde_n(alpha,u,v,z,a) t^n/(q;q)_n as a triple m,k,j sum with (q^-m, ut;q)_j terminator",
        modes=(SERIES,),
        grading=("t", "x"),
        params={
            "N": int_param(8, 0, 12),
            "r": int_param(0, -4, 4),
            "s": int_param(0, -4, 4),
            "alpha": alpha_param("sym"),
        },
        build=build_mixed_main,
        grid=lambda cfg: _rs_alpha_grid(cfg, {"N": _order(cfg)}, NARROW_ALPHAS, NARROW_RS),
        truncation_param="N",
    )
)


def build_mixed_b0(p, ring):
    N = p["N"]
    G = ("t", "x")
    final = _hahn_lhs(ring, G, N, lambda n: cauchy_p(n, "u", "v", ring))
    ratio = _ratio(ring, G, "t", "v", "u", N)
    jform = ratio * _mixed_j_blocks(ring, G, N, lambda j, M: None)
    phi = phi_rs(
        [CauchyRatio("v", "u"), ring.var("s")],
        [_gm(ring.var("v"), G, t=1)],
        _gm(ring.var("u"), G, t=1, x=1),
        N,
        ring,
    )
    return [
        Check("j-sum form", jform, final),
        Check("2phi1 form", ratio * phi, final),
    ]


register(
    IdentityDescriptor(
        id="mixed-b0",
        statement="B_0 = (vt;q)_oo/(ut;q)_oo 2phi1[v/u, s; vt; q; uxt] = sum phi_n^(s)(x) p_n(u,v) t^n/(q;q)_n",
        modes=(SERIES,),
        grading=("t", "x"),
        params={"N": int_param(8, 0, 12)},
        build=build_mixed_b0,
        grid=lambda cfg: [{"N": _order(cfg)}],
        truncation_param="N",
    )
)


def build_mixed_fn(p, ring):
    N = p["N"]
    G = ("t", "x")
    u, v, z, sig = (ring.var(n) for n in "uvzs")

    def weighted_f(n):
        return f_trivariate(n, x="u", y="v", z="z", ring=ring) * ring.scalar(QRat.qpow(comb(n, 2))) * (-1) ** n

    lhs = _hahn_lhs(ring, G, N, weighted_f)
    acc = GradedSeries.zero(ring, G, N)
    for j in range(N + 1):
        M = N - j
        # 1/(q/x;q)_j = (-x)^j q^(-C(j+1,2)) / (x q^-j; q)_j
        block = (
            qpoch_series(_gm(v, G, t=1), j, M, ring)
            * qpoch_finite_inverse(_gm(u, G, t=1), j, M, ring)
            * qpoch_finite_inverse(_gm(z, G, t=1), j, M, ring)
            * qpoch_finite_inverse(_gm(ring.qpow(-j), G, x=1), j, M, ring)
        )
        w = QRat.qpow(j - comb(j + 1, 2)) / qfactorial(j) * (-1) ** j
        acc = acc + block * (qpoch(sig, j, ring) * ring.scalar(w)) * _gm(ring.one(), G, x=j)
    pre = (
        euler_pos(_gm(sig, G, x=1), N, ring)
        * euler_pos(_gm(u, G, t=1), N, ring)
        * euler_pos(_gm(z, G, t=1), N, ring)
        * euler_neg(_gm(v, G, t=1), N, ring)
        * euler_neg(_gm(ring.one(), G, x=1), N, ring)
    )
    return [Check("(t,x)-series", lhs, pre * acc)]


register(
    IdentityDescriptor(
        id="mixed-Fn",
        statement="sum phi_n^(s)(x) F_n(u,v,z) (-1)^n q^C(n,2) t^n/(q;q)_n = (sx,ut,zt;q)_oo/(vt,x;q)_oo 4phi3[s,vt,0,0; ut,zt,q/x; q; q]",
        modes=(SERIES,),
        grading=("t", "x"),
        params={"N": int_param(8, 0, 12)},
        build=build_mixed_fn,
        grid=lambda cfg: [{"N": _order(cfg)}],
        truncation_param="N",
    )
)


# -- operator representation and reductions ------------------------------------------------
def build_rs_operator(p, ring):
    y = ring.var("y")
    return [Check(f"n={n}", t_exp_apply("x", y**n, "y"), rs_r(n, ring=ring)) for n in range(p["n_max"] + 1)]


register(
    IdentityDescriptor(
        id="rs-operator",
        statement="r_n(x,y) = T(xD_y){y^n}",
        modes=(SERIES,),
        grading=(),
        params={"n_max": int_param(10, 0, 20)},
        build=build_rs_operator,
        grid=lambda cfg: [{"n_max": 10}],
    )
)


def build_reductions(p, ring):
    return [Check(name, lhs, rhs) for name, lhs, rhs in reduction_suite(p["n_max"], ring) if rhs is not None]


register(
    IdentityDescriptor(
        id="reductions",
        statement="ltilde at y = 0 equals L_(r,s); ltilde at (oo,0,0; y,x,-z,-q) equals (-1)^n q^C(n,2) F_n",
        modes=(SERIES,),
        grading=(),
        params={"n_max": int_param(6, 0, 12)},
        build=build_reductions,
        grid=lambda cfg: [{"n_max": _n_max(cfg, 6)}],
    )
)

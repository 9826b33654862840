from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from qid.algebra import DEFAULT_UNIVERSE as U
from qid.primitives import INF, SYM, Alpha
from qid import families as fam

q = U.q
x, y, z, a, b, s, A = (U.var(n) for n in ("x", "y", "z", "a", "b", "s", "A"))


# -- independent oracle: plain Fraction arithmetic at a rational point ----------------------
def _poch(base, n, qv):
    out = Fraction(1)
    for k in range(n):
        out *= 1 - base * qv**k
    return out


def _gauss(n, k, qv):
    if k < 0 or k > n:
        return Fraction(0)
    return _poch(qv, n, qv) / (_poch(qv, k, qv) * _poch(qv, n - k, qv))


def _cauchy(n, u, v, qv):
    out = Fraction(1)
    for i in range(n):
        out *= u - qv**i * v
    return out


def _qalpha(alpha, P):
    if alpha.kind == "int":
        return P["q"] ** alpha.n
    return P["A"] if alpha.kind == "sym" else Fraction(0)


def _negq_binom(alpha, k, P):
    # [alpha,k]_{-q} = prod_{i<k}(q^alpha + q^i) / (q^C(k,2) (-q;q)_k)
    qv = P["q"]
    qa = _qalpha(alpha, P)
    num = Fraction(1)
    for i in range(k):
        num *= qa + qv**i
    return num / (qv ** comb(k, 2) * _poch(-qv, k, qv))


def _q_binom_gen(alpha, k, P):
    qv = P["q"]
    qa = _qalpha(alpha, P)
    num = Fraction(1)
    for i in range(k):
        num *= qv**i - qa
    return num / (qv ** comb(k, 2) * _poch(qv, k, qv))


def oracle_ltilde(n, r, s_, alpha, P, xv=None, yv=None, zv=None, av=None):
    qv = P["q"]
    xv = P["x"] if xv is None else xv
    yv = P["y"] if yv is None else yv
    zv = P["z"] if zv is None else zv
    av = P["a"] if av is None else av
    total = Fraction(0)
    for k in range(n + 1):
        tau = r * comb(k, 2) - s_ * comb(k + 1, 2)
        total += (
            _gauss(n, k, qv)
            * _negq_binom(alpha, k, P)
            * qv ** (tau + comb(k, 2))
            * _poch(av, k, qv)
            * _cauchy(n - k, xv, yv, qv)
            * zv**k
        )
    return total


def oracle_cigler(n, alpha, P, kind):
    qv = P["q"]
    total = Fraction(0)
    for k in range(n + 1):
        fall = _poch(qv, n, qv) / _poch(qv, n - k, qv)
        term = qv ** comb(k, 2) * _q_binom_gen(alpha, k, P) * P["b"] ** k * fall
        if kind == "C":
            term *= (-1) ** k * _cauchy(n - k, P["x"], P["y"], qv)
        else:
            # no outer (-1)^k here; the bracket carries the sign
            term *= (-1) ** (n + k) * qv ** (-comb(n, 2)) * _cauchy(n - k, P["y"], P["x"], qv)
        total += term
    return total


def _points(count=3, seed=7):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        P = {v: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for v in ("x", "y", "z", "a", "b", "s", "A")}
        P["q"] = Fraction(rng.randint(1, 8), rng.randint(9, 13))
        out.append(P)
    return out


POINTS = _points()
MODES = [Alpha.integer(0), Alpha.integer(2), SYM, INF]


# -- examples -----------------------------------------------------------------------------------
def test_cauchy_examples():
    assert fam.cauchy_p(0) == 1
    assert fam.cauchy_p(2) == x**2 - (1 + q) * x * y + q * y**2
    assert all(fam.cauchy_p(n, "x", U.zero()) == x**n for n in range(6))


def test_ltilde_examples():
    for r, s_ in [(0, 0), (1, -1), (-2, 2)]:
        assert fam.ltilde(0, r, s_, SYM) == 1
        expected = (x - y) + q ** (-s_) * (1 + A) / (1 + q) * (1 - a) * z
        assert fam.ltilde(1, r, s_, SYM) == expected


def test_l_jia_examples():
    assert fam.l_jia(0, 0, 0, SYM) == 1
    assert fam.l_jia(1, 0, 0, Alpha.integer(1)) == x + (1 - a) * z


@pytest.mark.parametrize("alpha", MODES, ids=str)
def test_ltilde_at_y_zero_is_l_jia(alpha):
    for n in range(7):
        for r, s_ in [(0, 0), (1, -1), (-1, 2)]:
            assert fam.ltilde(n, r, s_, alpha, y=U.zero()) == fam.l_jia(n, r, s_, alpha)


def test_cigler_examples():
    assert fam.cigler_c(0, SYM) == 1
    assert fam.cigler_d(0, SYM) == 1
    for k in range(4):
        al = Alpha.integer(k)
        assert fam.cigler_c(1, al) == (x - y) - (1 - q**k) / (1 - q) * b * (1 - q)


def test_hahn_examples():
    assert fam.hahn_phi(0) == 1
    assert fam.hahn_phi(1) == 1 + (1 - s) * x
    assert fam.hahn_phi(2) == 1 + (1 + q) * (1 - s) * x + (1 - s) * (1 - s * q) * x**2


def test_rs_examples():
    assert fam.rs_r(0) == 1
    assert fam.rs_r(2) == x**2 + (1 + q) * x * y + y**2
    assert all(fam.rs_r(n, "x", U.zero()) == x**n for n in range(6))


def test_trivariate_start():
    assert fam.f_trivariate(0) == 1
    # (-1)^1 q^0 ltilde_1(oo; y, x, -z, -q) = -(y - x) - (1 + q)/(1 + q) (-z) = x - y + z
    assert fam.f_trivariate(1) == x - y + z


# -- brute-force oracle ---------------------------------------------------------------------
@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("alpha", MODES, ids=str)
def test_ltilde_matches_oracle(n, alpha):
    for r, s_ in [(0, 0), (2, -1), (-1, 1)]:
        poly = fam.ltilde(n, r, s_, alpha)
        for P in POINTS:
            assert poly.evaluate(P) == oracle_ltilde(n, r, s_, alpha, P)


@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("alpha", [Alpha.integer(0), Alpha.integer(3), SYM], ids=str)
def test_cigler_matches_oracle(n, alpha):
    for P in POINTS:
        assert fam.cigler_c(n, alpha).evaluate(P) == oracle_cigler(n, alpha, P, "C")
        assert fam.cigler_d(n, alpha).evaluate(P) == oracle_cigler(n, alpha, P, "D")


@pytest.mark.parametrize("n", range(7))
def test_simple_families_match_oracle(n):
    for P in POINTS:
        qv = P["q"]
        hahn = sum(_gauss(n, k, qv) * _poch(P["s"], k, qv) * P["x"] ** k for k in range(n + 1))
        rs = sum(_gauss(n, k, qv) * P["x"] ** k * P["y"] ** (n - k) for k in range(n + 1))
        assert fam.hahn_phi(n).evaluate(P) == hahn
        assert fam.rs_r(n).evaluate(P) == rs
        assert fam.cauchy_p(n).evaluate(P) == _cauchy(n, P["x"], P["y"], qv)
        assert fam.l_jia(n, 1, 2, SYM).evaluate(P) == oracle_ltilde(n, 1, 2, SYM, P, yv=Fraction(0))


@pytest.mark.parametrize("n", range(7))
def test_reduced_families_match_oracle(n):
    for P in POINTS:
        qv = P["q"]
        f_val = (-1) ** n * qv ** (-comb(n, 2)) * oracle_ltilde(
            n, 0, 0, INF, P, xv=P["y"], yv=P["x"], zv=-P["z"], av=-qv
        )
        assert fam.f_trivariate(n).evaluate(P) == f_val
        rho = oracle_ltilde(n, 0, -1, Alpha.integer(n), P, xv=Fraction(1), yv=Fraction(0), zv=P["x"], av=-qv * P["y"])
        assert fam.rho_e_reduced(n).evaluate(P) == rho
        h = oracle_ltilde(n, -1, 0, INF, P, zv=Fraction(1), av=-qv)
        assert fam.h_reduced(n).evaluate(P) == h
        g = oracle_ltilde(n, -1, 0, INF, P, xv=P["x"] * qv ** (-n), yv=Fraction(0), av=-qv)
        assert fam.g_reduced(n).evaluate(P) == g


# -- invariants -------------------------------------------------------------------------------
@pytest.mark.parametrize("n", range(7))
def test_ltilde_degenerations(n):
    for alpha in MODES:
        poly = fam.ltilde(n, 1, -1, alpha)
        assert poly.subst({"a": U.one()}) == fam.cauchy_p(n)
        assert poly.subst({"z": U.zero()}) == fam.cauchy_p(n)
        assert poly.total_degree(("x", "y", "z")) == n


@pytest.mark.parametrize("n", range(8))
def test_hahn_at_sigma_one(n):
    assert fam.hahn_phi(n).subst({"s": U.one()}) == 1


@pytest.mark.parametrize("n", range(10))
def test_rs_symmetry(n):
    assert fam.rs_r(n, "x", "y") == fam.rs_r(n, "y", "x")


def test_reduction_suite_shape():
    items = fam.reduction_suite(4)
    names = [name for name, _, _ in items]
    assert len(names) == len(set(names))
    for name, lhs, rhs in items:
        if rhs is not None:
            assert lhs == rhs, name
        else:
            assert name.split("[")[0] in {"rho_e", "h", "g"}


def test_role_arguments_reuse_the_constructor():
    u, v = U.var("u"), U.var("v")
    assert fam.cauchy_p(3, "u", "v") == fam.cauchy_p(3).subst({"x": u, "y": v})

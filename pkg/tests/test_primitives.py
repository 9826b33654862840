from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qid.algebra import DEFAULT_UNIVERSE as U
from qid.algebra import QRat
from qid.algebra.rings import SYMBOLIC
from qid.algebra.series import GradedMonomial, GradedSeries
from qid.errors import NotGraded, UnexpandableDenominator
from qid.families import cauchy_p
from qid.primitives import (
    INF,
    SYM,
    Alpha,
    CauchyRatio,
    euler_neg,
    euler_pos,
    gen_qbinom_negq,
    gen_qbinom_q,
    phi_rs,
    phi_terminating_cleared,
    qbinom,
    qfactorial,
    qpoch,
    qpoch_finite_inverse,
    qpoch_multi,
    qpoch_series,
    tau,
)

q = U.q
x, y, a, b, c, t, w, A = (U.var(n) for n in ("x", "y", "a", "b", "c", "t", "w", "A"))
QQ = QRat.q()


def gm(coeff, **exps):
    return GradedMonomial.of(SYMBOLIC.element(coeff), tuple(exps), **exps)


def gauss_oracle(n: int, k: int, qv: Fraction) -> Fraction:
    """Gaussian binomial from the product formula, in plain Fractions."""
    if k < 0 or k > n:
        return Fraction(0)
    num = den = Fraction(1)
    for i in range(k):
        num *= 1 - qv ** (n - i)
        den *= 1 - qv ** (i + 1)
    return num / den


# -- q-shifted factorials ----------------------------------------------------------------
def test_qpoch_examples():
    assert qpoch("a", 0) == 1
    assert qpoch(q, 2) == 1 - q - q**2 + q**3
    assert qpoch(-q, 1) == 1 + q


def test_qpoch_multi_examples():
    assert qpoch_multi(["a", "b"], 1) == (1 - a) * (1 - b)
    assert qpoch_multi([], 5) == 1
    assert qpoch_multi([q, q], 1) == (1 - q) ** 2


@pytest.mark.parametrize("n", range(13))
def test_reversed_pochhammer(n):
    # (a q^-n; q)_n = (q/a; q)_n (-a)^n q^(-n - C(n,2)) with a Laurent
    uni = U.with_laurent("a")
    qq, av = uni.q, uni.var("a")
    lhs = uni.one()
    rhs = uni.one()
    for k in range(n):
        lhs = lhs * (1 - av * qq ** (k - n))
        rhs = rhs * (1 - qq ** (k + 1) / av)
    rhs = rhs * (-av) ** n * qq ** (-n - comb(n, 2))
    assert lhs == rhs


# -- q-binomials ---------------------------------------------------------------------------
def test_qbinom_examples():
    assert qbinom(2, 1) == 1 + QQ
    assert all(qbinom(n, 0) == 1 for n in range(6))
    assert qbinom(3, 5) == 0


@pytest.mark.parametrize("n", range(1, 13))
def test_qbinom_pascal(n):
    for k in range(1, n + 1):
        assert qbinom(n, k) == qbinom(n - 1, k - 1) + QQ**k * qbinom(n - 1, k)


@pytest.mark.parametrize("n", range(11))
def test_qbinom_matches_product_oracle(n):
    for k in range(n + 1):
        assert qbinom(n, k).evaluate(Fraction(3, 7)) == gauss_oracle(n, k, Fraction(3, 7))


@pytest.mark.parametrize("n", range(11))
def test_gen_qbinom_q_integer_is_gaussian(n):
    for k in range(n + 1):
        assert gen_qbinom_q(Alpha.integer(n), k) == U.const(qbinom(n, k))


def test_gen_qbinom_examples():
    for mode in (SYM, INF, Alpha.integer(3)):
        assert gen_qbinom_q(mode, 0) == 1
        assert gen_qbinom_negq(mode, 0) == 1
    # k=1 expands to (1 - A)/(1 - q)
    assert gen_qbinom_q(SYM, 1) == (1 - A) / (1 - q)
    assert gen_qbinom_negq(Alpha.integer(1), 1) == 1
    assert gen_qbinom_negq(INF, 2) == U.one() / ((1 + q) * (1 + q**2))


@pytest.mark.parametrize("n", range(9))
def test_gen_qbinom_negq_symbolic_specializes(n):
    for k in range(9):
        sym = gen_qbinom_negq(SYM, k).subst({"A": q**n})
        assert sym == gen_qbinom_negq(Alpha.integer(n), k)


@pytest.mark.parametrize("k", range(5))
def test_infinity_mode_is_the_large_alpha_limit(k):
    # q^alpha -> 0 as alpha grows when |q| < 1; evaluate at q = 1/2
    qv = Fraction(1, 2)
    limit = gen_qbinom_negq(INF, k).evaluate({"q": qv})
    errors = [abs(gen_qbinom_negq(SYM, k).evaluate({"q": qv, "A": qv**m}) - limit) for m in (20, 30, 40)]
    assert errors[0] >= errors[1] >= errors[2]
    assert errors[2] < Fraction(1, 10**9)


def test_tau_examples():
    assert all(tau(0, 0, k) == 0 for k in range(6))
    assert all(tau(1, 1, k) == -k for k in range(6))
    assert tau(-1, 0, 3) == -3


# -- Euler expansions ---------------------------------------------------------------------
N = 8


def test_euler_examples():
    assert euler_pos(gm(1, t=1), N).coeff((0,)) == 1
    assert euler_pos(gm(1, t=1), 1).coeff((1,)) == U.const(-1 / (1 - QQ))
    assert euler_neg(gm(x, t=1), 2).coeff((2,)) == x**2 / ((1 - q) * (1 - q**2))


def test_euler_pair_is_reciprocal():
    m = gm(x * q, t=1)
    one = GradedSeries.one(SYMBOLIC, ("t",), N)
    assert (euler_pos(m, N) * euler_neg(m, N)).equals(one)
    assert euler_neg(m, N).equals(euler_pos(m, N).invert())


def test_euler_ratio_generates_cauchy_polynomials():
    ratio = euler_pos(gm(y, t=1), N) * euler_neg(gm(x, t=1), N)
    for n in range(N + 1):
        assert ratio.coeff((n,)) == cauchy_p(n) / qfactorial(n)


def test_euler_needs_grading():
    with pytest.raises(NotGraded):
        euler_pos(gm(x), 4)
    with pytest.raises(NotGraded):
        euler_neg(x, 4)


# -- finite inverses -----------------------------------------------------------------------
def test_finite_inverse_examples():
    assert qpoch_finite_inverse(gm(y, w=1), 0, N).equals(GradedSeries.one(SYMBOLIC, ("w",), N))
    geo = GradedSeries(SYMBOLIC, ("w",), N, {(n,): y**n for n in range(N + 1)})
    assert qpoch_finite_inverse(gm(y, w=1), 1, N).equals(geo)
    assert qpoch_finite_inverse(gm(1, t=1), 2, N).coeff((1,)) == 1 + q


@pytest.mark.parametrize("j", range(7))
def test_finite_inverse_paths_agree(j):
    m = gm(x * q, t=1)
    for order in (1, 4, 8):
        binom = qpoch_finite_inverse(m, j, order, method="binomial")
        inv = qpoch_finite_inverse(m, j, order, method="invert")
        assert binom.equals(inv)
        assert (binom * qpoch_series(m, j, order)).equals(GradedSeries.one(SYMBOLIC, ("t",), order))


# -- basic hypergeometric series ------------------------------------------------------------
def test_phi_terminates_on_q_to_zero():
    s = phi_rs([U.one(), "a"], [q**3], gm(1, t=1), N)
    assert s.equals(GradedSeries.one(SYMBOLIC, ("t",), N))


def test_phi_cauchy_ratio_term():
    # 2phi1[y/x, 0; y w q^j; q; x t], term n carries p_n(x,y) t^n
    j = 2
    s = phi_rs([CauchyRatio("y", "x"), U.zero()], [gm(y * q**j, w=1, t=0)], gm(x, w=0, t=1), N)
    for n in range(4):
        coeff_w0 = s.coeff((0, n))
        assert coeff_w0 == cauchy_p(n) / qfactorial(n)


def test_phi_rejects_polynomial_denominator():
    with pytest.raises(UnexpandableDenominator):
        phi_rs(["a"], [x + y], gm(1, t=1), 3)


def _chu_rhs(m):
    # (c/a; q)_m a^m, written as prod (a - c q^i) = p_m(a, c)
    return cauchy_p(m, "a", "c")


@pytest.mark.parametrize("m", range(6))
def test_chu_vandermonde_cleared(m):
    lhs = phi_terminating_cleared(m, ["a"], ["c"], q)
    assert lhs == _chu_rhs(m)


def test_chu_vandermonde_n2_by_hand():
    # sum_{n<=2} (q^-2;q)_n (a;q)_n / ((q;q)_n (c;q)_n) q^n, times (c;q)_2
    lhs = U.zero()
    for n in range(3):
        term = U.one()
        for i in range(n):
            term = term * (1 - q ** (i - 2)) * (1 - a * q**i) / (1 - q ** (i + 1))
        tail = U.one()
        for i in range(n, 2):
            tail = tail * (1 - c * q**i)
        lhs = lhs + term * q**n * tail
    assert lhs == (a - c) * (a - c * q)
    assert phi_terminating_cleared(2, ["a"], ["c"], q) == lhs


@given(st.integers(0, 6), st.fractions(Fraction(-3), Fraction(3), max_denominator=9))
def test_qpoch_point_evaluation(n, av):
    qv = Fraction(2, 5)
    expected = Fraction(1)
    for k in range(n):
        expected *= 1 - av * qv**k
    assert qpoch("a", n).evaluate({"q": qv, "a": av}) == expected

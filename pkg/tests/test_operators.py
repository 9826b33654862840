from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qid.algebra import DEFAULT_UNIVERSE as U
from qid.algebra import QRat
from qid.algebra.rings import SYMBOLIC
from qid.algebra.series import GradedMonomial, GradedSeries
from qid.errors import NotDivisible
from qid.families import cauchy_p, rs_r
from qid.operators import da_apply, da_power, dxy_apply, dxy_power, t_exp_apply
from qid.primitives import euler_neg, euler_pos, qbinom, qfactorial

q = U.q
x, y, a, t = (U.var(n) for n in ("x", "y", "a", "t"))


def gm(coeff, **exps):
    return GradedMonomial.of(SYMBOLIC.element(coeff), tuple(exps), **exps)


# -- D_xy ---------------------------------------------------------------------------------
def test_dxy_examples():
    assert dxy_apply(cauchy_p(1)) == 1 - q
    assert dxy_apply(U.one()).is_zero()
    assert dxy_power(cauchy_p(3), 0) == cauchy_p(3)


@pytest.mark.parametrize("n", range(1, 9))
def test_dxy_lowers_cauchy_degree(n):
    assert dxy_apply(cauchy_p(n)) == (1 - q**n) * cauchy_p(n - 1)


@pytest.mark.parametrize("n", range(7))
def test_dxy_powers_on_cauchy(n):
    for k in range(n + 1):
        expected = cauchy_p(n - k) * (qfactorial(n) / qfactorial(n - k))
        assert dxy_power(cauchy_p(n), k) == expected


def test_dxy_power_example():
    assert dxy_power(cauchy_p(4), 2) == cauchy_p(2) * (qfactorial(4) / qfactorial(2))


def test_dxy_outside_domain():
    # y alone is not a polynomial in the Cauchy basis p_n(x, y)
    with pytest.raises(NotDivisible):
        dxy_apply(y)


@pytest.mark.parametrize("k", range(5))
def test_dxy_on_euler_ratio_shifts_by_t(k):
    N = 8
    ratio = euler_pos(gm(y, t=1), N) * euler_neg(gm(x, t=1), N)
    lhs = dxy_power(ratio, k)
    shifted = ratio * GradedMonomial.of(U.one(), ("t",), t=k)
    for n in range(N - k + 1):
        assert lhs.coeff((n + k,)) == shifted.coeff((n + k,))


@given(st.integers(0, 4), st.integers(0, 4), st.integers(-3, 3), st.integers(-3, 3))
def test_dxy_linear(n, m, c1, c2):
    f, g = cauchy_p(n), cauchy_p(m) * q**m
    assert dxy_apply(c1 * f + c2 * g) == c1 * dxy_apply(f) + c2 * dxy_apply(g)


# -- D_a ----------------------------------------------------------------------------------
@pytest.mark.parametrize("n", range(8))
def test_da_on_powers(n):
    expected = (1 - q**n) * a ** (n - 1) if n else U.zero()
    assert da_apply(a**n) == expected


def test_da_kills_constants():
    assert da_apply(U.one()).is_zero()
    assert da_power(x * y, 3).is_zero()


def _random_apoly(rng, deg):
    out = U.zero()
    for e in range(deg + 1):
        out = out + rng.randint(-3, 3) * q ** rng.randint(0, 2) * x ** rng.randint(0, 1) * a**e
    return out


def _leibniz_rhs(f, g, n):
    out = U.zero()
    for k in range(n + 1):
        w = U.const(QRat.qpow(k * (k - n)) * qbinom(n, k))
        shifted = g.subst({"a": q**k * a})
        out = out + w * da_power(f, k) * da_power(shifted, n - k)
    return out


def test_leibniz_example():
    assert da_power(a * a, 2) == _leibniz_rhs(a, a, 2)


@pytest.mark.parametrize("seed", range(50))
def test_leibniz_random_pairs(seed):
    rng = random.Random(seed)
    f, g = _random_apoly(rng, 5), _random_apoly(rng, 5)
    n = rng.randint(0, 4)
    assert da_power(f * g, n) == _leibniz_rhs(f, g, n)


# -- T(b D_a) -------------------------------------------------------------------------------
@pytest.mark.parametrize("n", range(11))
def test_texp_builds_rogers_szego(n):
    assert t_exp_apply("x", y**n, "y") == rs_r(n)


def test_texp_on_constant():
    assert t_exp_apply("b", U.one(), "a") == 1
    s = t_exp_apply(gm(x, t=1), U.one(), "a", 5)
    assert s.equals(GradedSeries.one(SYMBOLIC, ("t",), 5))


def test_texp_graded_is_truncated_sum():
    N = 6
    f = (1 - a) * (1 - q * a) * (1 + a**3)
    s = t_exp_apply(gm(x, t=1), f, "a", N)
    for n in range(N + 1):
        assert s.coeff((n,)) == x**n * da_power(f, n) / qfactorial(n)

"""Ball arithmetic: containment through every operation, certified
comparisons, and the escalation driver."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import workprec

from smforge.ball import (
    CBall,
    PrecisionExhausted,
    RBall,
    UncertainComparison,
    ball_prod,
    ball_sum,
    escalating,
    poly_eval,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=997)
# dyadic radii are exactly representable, so the test intervals are exact
dyadic_rads = st.integers(min_value=0, max_value=64).map(
    lambda k: Fraction(k, 64)
)


def frac(x) -> Fraction:
    """Exact rational value of an mpf."""
    sign, man, exp, _ = x._mpf_
    man, exp = int(man), int(exp)
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def interval(a: Fraction, r: Fraction) -> RBall:
    return RBall.exact(a) + RBall(0, float(r))


def contains(ball: RBall, x) -> bool:
    return frac(ball.lower()) <= Fraction(x) <= frac(ball.upper())


@given(rationals, dyadic_rads, rationals, dyadic_rads)
def test_add_mul_containment(a, ra, b, rb):
    """Any point of either input ball stays inside the output ball."""
    x = interval(a, ra)
    y = interval(b, rb)
    for pa in (a - ra, a, a + ra):
        for pb in (b - rb, b, b + rb):
            assert contains(x + y, pa + pb)
            assert contains(x - y, pa - pb)
            assert contains(x * y, pa * pb)


@given(rationals, rationals)
def test_exact_sum_containment(a, b):
    assert contains(RBall.exact(a) + RBall.exact(b), a + b)


@given(rationals, dyadic_rads)
def test_division_containment(a, ra):
    x = interval(a, ra)
    if abs(a) <= ra:
        with pytest.raises(UncertainComparison):
            RBall.exact(1) / x
        return
    inv = RBall.exact(1) / x
    for p in (a - ra, a, a + ra):
        if p:
            assert contains(inv, Fraction(1) / p)


@given(st.fractions(min_value=Fraction(1, 100), max_value=1000,
                    max_denominator=997))
def test_sqrt_log_exp_roundtrip(a):
    x = RBall.exact(a)
    r = x.sqrt()
    assert contains(r * r, a)
    assert contains(x.log().exp(), a)


@given(rationals, st.integers(min_value=0, max_value=7))
def test_pow_int_containment(a, n):
    assert contains(RBall.exact(a).pow_int(n), a ** n)


def test_comparisons_certified():
    a = RBall.exact(0) + RBall(0, 1.0)
    b = RBall.exact(1) + RBall(0, 1.0)
    with pytest.raises(UncertainComparison):
        a < b
    assert RBall.exact(1) < RBall.exact(2)
    assert RBall.exact(2) > RBall.exact(1)


def test_unique_integer():
    assert (RBall.exact(3) + RBall(0, 0.1)).unique_integer() == 3
    with pytest.raises(UncertainComparison):
        (RBall.exact(Fraction(5, 2)) + RBall(0, 0.6)).unique_integer()


@given(rationals, rationals, rationals, rationals)
def test_cball_mul_containment(ar, ai, br, bi):
    z = CBall.exact(ar, ai) * CBall.exact(br, bi)
    assert contains(z.real(), ar * br - ai * bi)
    assert contains(z.imag(), ar * bi + ai * br)


@given(rationals, rationals)
def test_cball_abs_enclosure(ar, ai):
    x = CBall.exact(ar, ai)
    m2 = Fraction(ar) ** 2 + Fraction(ai) ** 2
    a = x.abs()
    assert frac(a.lower()) ** 2 <= m2
    assert m2 <= frac(a.upper()) ** 2 or m2 == 0
    if m2 > 0:
        la = x.log_abs()
        assert math.exp(float(la.lower())) <= math.sqrt(float(m2)) * 1.0001


def test_poly_eval_exact_root():
    # x^2 - 5x + 6 vanishes at 2 and 3 and nowhere else
    for root in (2, 3):
        assert poly_eval([6, -5, 1], CBall.exact(root)).contains_zero()
    assert not poly_eval([6, -5, 1], CBall.exact(4)).contains_zero()


def test_ball_sum_prod():
    vals = [RBall.exact(k) for k in range(1, 6)]
    assert contains(ball_sum(vals), 15)
    assert contains(ball_prod(vals), 120)


def test_escalating_doubles_until_success():
    seen = []

    def f(p):
        seen.append(p)
        if p < 1024:
            raise UncertainComparison("resolution too low")
        return p

    assert escalating(f) == 1024
    assert seen == [256, 512, 1024]


def test_escalating_exhausts():
    def f(p):
        raise UncertainComparison("never")

    with pytest.raises(PrecisionExhausted):
        escalating(f)


@settings(max_examples=30)
@given(rationals, dyadic_rads)
def test_precision_independence_of_containment(a, ra):
    """The same interval built at different precisions contains its
    rational endpoints."""
    for prec in (64, 256, 1024):
        with workprec(prec):
            assert contains(interval(a, ra), a + ra)
            assert contains(interval(a, ra), a - ra)

"""Y0(2) membership: exact surd arithmetic cross-checked against the
numeric modular polynomial."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import workprec

from smforge.forms import enumerate_forms
from smforge.modular import eval_j, tau_of_form
from smforge.y0 import (
    QuadSurd,
    c_matrices,
    im_ratio_constraint,
    on_y02,
    parse_surd,
    phi_n_eval,
    reduce_surd,
    surd_of_form,
)

small_discs = st.integers(min_value=3, max_value=300).map(lambda n: -n) \
    .filter(lambda d: d % 4 in (0, 1))


def test_c_matrices():
    assert c_matrices(1).matrices == ((1, 0, 1),)
    assert c_matrices(2).matrices == ((1, 0, 2), (1, 1, 2), (2, 0, 1))
    # |C(N)| = psi(N) = N prod (1 + 1/p)
    assert c_matrices(6).count == 12
    assert c_matrices(12).count == 24


def test_parse_surd_roundtrip():
    s = parse_surd("(-1/2+1/2*sqrt(-23))")
    assert s.p == Fraction(-1, 2) and s.q == Fraction(1, 2) and s.d == -23
    with pytest.raises(ValueError):
        parse_surd("3 + 4i")


@given(st.fractions(min_value=-5, max_value=5, max_denominator=12),
       st.fractions(min_value=Fraction(1, 12), max_value=5,
                    max_denominator=12),
       st.sampled_from([-1, -2, -3, -7, -15, -23]))
def test_reduce_surd_lands_in_domain(p, q, d):
    tau = QuadSurd(p, q, d)
    red, word = reduce_surd(tau)
    assert Fraction(-1, 2) <= red.re < Fraction(1, 2)
    assert red.norm() >= 1
    if red.norm() == 1:
        assert red.re <= 0
    # the word is in SL2
    for a, b, c, dd in word:
        assert a * dd - b * c == 1


@given(small_discs)
def test_form_surds_are_already_reduced(d):
    for f in enumerate_forms(d):
        tau = surd_of_form(d, f.a, f.b)
        red, word = reduce_surd(tau)
        assert red == tau
        assert word == []


def quadratic_pairs():
    # (disc, disc') pairs with Delta = 4 Delta' (known Y0(2) partners)
    return [(-60, -15), (-92, -23), (-124, -31)]


def test_on_y02_known_pairs():
    for dx, dy in quadratic_pairs():
        tx = surd_of_form(dx, 1, dx % 2)
        ty = surd_of_form(dy, 1, dy % 2)
        member, witness = on_y02(tx, ty)
        assert member and witness is not None


def test_on_y02_negative():
    # generic unrelated CM points are not 2-isogenous
    tx = surd_of_form(-23, 1, 1)
    ty = surd_of_form(-31, 1, 1)
    assert on_y02(tx, ty) == (False, None)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([(-60, -15), (-92, -23), (-124, -31), (-23, -31),
                        (-20, -40), (-52, -13)]))
def test_exact_vs_numeric_phi2(pair):
    """The exact Y0(2) verdict agrees with a certified numeric evaluation
    of Phi_2(j, j')."""
    dx, dy = pair
    tx = surd_of_form(dx, 1, dx % 2)
    ty = surd_of_form(dy, 1, dy % 2)
    member, _ = on_y02(tx, ty)
    with workprec(320):
        x = eval_j(tx.to_ball())
        tau_y = ty.to_ball()
        val = phi_n_eval(x, tau_y, 2)
        if member:
            assert val.contains_zero()
        else:
            assert not val.contains_zero()


def test_phi2_against_dominant_forms():
    """Phi_2 vanishes on every matched dominant pair Delta = 4 Delta'."""
    with workprec(256):
        for d in (-15, -23, -31):
            x = eval_j(tau_of_form(4 * d, enumerate_forms(4 * d)[0]))
            val = phi_n_eval(x, tau_of_form(d, enumerate_forms(d)[0]), 2)
            assert val.contains_zero()


def test_im_ratio_constraint():
    tx = surd_of_form(-92, 1, 0)   # Im = sqrt(92)/2 > 2
    ty = surd_of_form(-23, 1, 1)   # Im = sqrt(23)/2 > 2
    chk = im_ratio_constraint(tx, ty)
    assert chk.applicable and chk.ratio == 2
    small = QuadSurd(0, Fraction(1, 2), -3)
    assert not im_ratio_constraint(tx, small).applicable

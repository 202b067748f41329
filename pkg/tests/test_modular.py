"""Certified j-values, class polynomials, and the magnitude estimates."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, workprec

from smforge.ball import CBall, RBall, escalating
from smforge.forms import class_number, dominant_form, enumerate_forms
from smforge.modular import (
    class_polynomial,
    cm_point,
    conjugate_points,
    dominance_check,
    eval_j,
    height_of,
    j_coefficients,
    q_of_tau,
    tau_of_form,
    verify_estimates,
)

# leading q-expansion coefficients of j (OEIS A000521)
J_COEFFS = [1, 744, 196884, 21493760, 864299970, 20245856256]

# class polynomials, leading coefficient first (classical tables)
HCP_ORACLE = {
    -3: [1, 0],
    -4: [1, -1728],
    -7: [1, 3375],
    -8: [1, -8000],
    -11: [1, 32768],
    -15: [1, 191025, -121287375],
    -19: [1, 884736],
    -20: [1, -1264000, -681472000],
    -23: [1, 3491750, -5151296875, 12771880859375],
    -163: [1, 262537412640768000],
}


def test_j_coefficients_oracle():
    assert j_coefficients(len(J_COEFFS)) == J_COEFFS


def test_eval_j_special_points():
    with workprec(512):
        i = CBall.exact(0, 1)
        v = eval_j(i)
        assert v.unique_integer() == 1728
        assert float(v.rad) < 2.0 ** -40
        tau = CBall.exact(Fraction(-1, 2), 0) + CBall.exact(0, 1) * (
            RBall.exact(163).sqrt() / 2
        )
        v = eval_j(tau)
        assert v.unique_integer() == -262537412640768000
        assert float(v.rad) < 2.0 ** -40


def test_eval_j_modular_invariance():
    from smforge.y0 import _reduce_ball

    with workprec(192):
        tau = CBall.exact(Fraction(1, 3), 2)
        a = eval_j(tau)
        b = eval_j(_reduce_ball(tau + 5))
        c = eval_j(_reduce_ball(CBall.exact(-1) / tau))
        for other in (b, c):
            assert (a - other).contains_zero()


@pytest.mark.parametrize("disc", sorted(HCP_ORACLE))
def test_class_polynomial_oracle(disc):
    poly = class_polynomial(disc)
    assert list(reversed(poly.coefficients)) == HCP_ORACLE[disc]
    assert poly.degree == class_number(disc)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=3, max_value=600).map(lambda n: -n)
       .filter(lambda d: d % 4 in (0, 1)))
def test_class_polynomial_degree_and_root(d):
    poly = class_polynomial(d)
    assert poly.degree == class_number(d)
    with workprec(192):
        # every conjugate is a root
        for f in enumerate_forms(d):
            v = poly.eval_ball(eval_j(tau_of_form(d, f)))
            assert v.contains_zero()


def test_magnitude_estimates_margin():
    """|j(tau) - 1/q| <= 2079 and the companions, all conjugates,
    |disc| <= 2000 in steps (full range is covered by acceptance)."""
    for d in range(-3, -2000, -97):
        for disc in (d, d - 1):
            if disc % 4 not in (0, 1):
                continue
            for f in enumerate_forms(disc):
                rep = escalating(
                    lambda p, disc=disc, f=f: verify_estimates(
                        cm_point(disc, f, p)
                    )
                )
                assert rep.all_hold, (disc, f)


def test_dominance():
    for disc in (-23, -31, -47, -92):
        rep = dominance_check(disc)
        assert rep.holds
    # the dominant conjugate comes from the a = 1 form
    pts = conjugate_points(-23)
    dom = max(pts, key=lambda p: float(p.j_value.abs().mid))
    assert dom.form == dominant_form(-23)


def test_height_positive():
    rep = height_of(-23)
    assert float(rep.height.mid) > 0


def test_q_of_tau():
    with workprec(128):
        q = q_of_tau(CBall.exact(0, 1))
        # e^{-2 pi} = 0.00186744...
        assert abs(float(q.real().mid) - 0.0018674427) < 1e-9
        assert q.imag().contains_zero()

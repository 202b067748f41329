"""Elimination machinery: certified ratio intervals, Baker-type constants,
continued-fraction rejection, and the threshold chains."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import workprec

from smforge.ball import RBall
from smforge.elimination import (
    CFReport,
    EliminationReport,
    PAPER_BOUND_123,
    PAPER_BOUND_134,
    PAPER_MULT_4D,
    PAPER_MULT_PRIME4_QUOTED,
    PAPER_MULT_SAME,
    _interval_convergents,
    big_disc_linear,
    census_partner_check,
    cf_reject,
    conjugate_systems,
    distinct_field_pairs,
    linear_discriminant_list,
    mult_matched_ratio_eliminate,
    mult_ratio_eliminate,
    mult_threshold_prime4,
    mult_threshold_quarter,
    mult_threshold_same,
    paper_matveev_coefficient,
    paper_matveev_coefficient_distinct,
    ratio_interval,
    small_disc_linear,
)


def test_matveev_constants_exact():
    assert paper_matveev_coefficient() == 1671257674219520
    assert paper_matveev_coefficient_distinct() == 2748779069440


def test_threshold_chains():
    assert mult_threshold_same() == PAPER_MULT_SAME == 109
    assert mult_threshold_quarter() == PAPER_MULT_4D == 12
    assert PAPER_MULT_PRIME4_QUOTED == 310
    assert mult_threshold_prime4(div=8) == 367
    assert mult_threshold_prime4(div=64) == 542


def test_linear_discriminant_list():
    discs = linear_discriminant_list()
    assert discs[0] == -23
    assert all(d % 8 == 1 for d in discs)
    assert -39 in discs and -92 not in discs


def test_distinct_field_pairs():
    pairs = distinct_field_pairs(min_degree=3)
    assert len(pairs) == 15


def test_census_partner_check():
    matches = census_partner_check(-1031)
    assert [m[0].a for m in matches] == [1, 8, 16, 32]
    assert [m[1].a for m in matches] == [1, 2, 4, 8]


def test_big_disc_uniform_intervals():
    rep = big_disc_linear()
    assert rep.outcome == "eliminated"
    assert rep.constants["within_paper_bounds"] is True
    lo, hi = rep.constants["interval_123"]
    assert PAPER_BOUND_123[0] <= lo < hi <= PAPER_BOUND_123[1]
    lo, hi = rep.constants["interval_134"]
    assert PAPER_BOUND_134[0] <= lo < hi <= PAPER_BOUND_134[1]


def test_big_disc_specific_discriminant():
    rep = big_disc_linear(disc_prime=-1031)
    assert rep.outcome == "eliminated"


def test_r_classification_samples():
    assert conjugate_systems(4 * -39, -39)[0].r == 3
    assert conjugate_systems(4 * -23, -23)[0].r == 2
    assert conjugate_systems(4 * -71, -71)[0].r >= 4


def test_ratio_interval_certified():
    """Certified m/n intervals from two couple choices are proper
    intervals with the effective constant below 1."""
    system = conjugate_systems(4 * -71, -71)[0]
    with workprec(256):
        for i, j in ((2, 3), (2, 4)):
            ri = ratio_interval(system, i, j)
            assert ri.lower < ri.upper
            assert 0 < ri.m_bound < 1


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------


@given(st.fractions(min_value=Fraction(1, 50), max_value=50,
                    max_denominator=9973))
def test_interval_convergents_are_convergents(x):
    eps = Fraction(1, 10 ** 12)
    convs, _ = _interval_convergents(x - eps, x + eps, Fraction(10 ** 4))
    # convs may be empty when the endpoint digits diverge immediately
    for p, q in convs:
        assert q >= 1
        assert abs(x - Fraction(p, q)) <= Fraction(1, q * q)


def test_cf_reject_eliminates_generic_ratio():
    def logs():
        return RBall.exact(3).log(), RBall.exact(2).log()

    rep = cf_reject(
        logs_fn=logs,
        c3p=RBall.exact(Fraction(1, 10 ** 6)),
        c4=RBall.exact(Fraction(1, 2)),
        c6=RBall.exact(500),
    )
    assert rep.outcome == "eliminated"
    assert rep.convergents_checked > 0
    assert rep.rejected == rep.convergents_checked


def test_cf_reject_never_rejects_planted_dependence():
    """theta = 5/7 exactly: the pair (5, 7) is a genuine solution, so the
    run must never report eliminated (it stalls honestly instead)."""
    def logs():
        la = RBall.exact(3).log()
        return la, la * RBall.exact(Fraction(5, 7))

    rep = cf_reject(
        logs_fn=logs,
        c3p=RBall.exact(Fraction(1, 10 ** 6)),
        c4=RBall.exact(Fraction(1, 2)),
        c6=RBall.exact(500),
    )
    assert rep.outcome == "inconclusive"


def test_cf_reject_exact_check_resolves_near_hits():
    """theta within 1e-40 of 5/7: the convergent (5, 7) cannot be rejected
    numerically and must go through the exact fallback."""
    calls = []
    near = Fraction(5, 7) + Fraction(1, 10 ** 40)

    def logs():
        la = RBall.exact(3).log()
        return la, la * RBall.exact(near)

    def exact_check(p, q):
        calls.append((p, q))
        return True  # caller certifies the pair is impossible exactly

    rep = cf_reject(
        logs_fn=logs,
        c3p=RBall.exact(Fraction(1, 10 ** 6)),
        c4=RBall.exact(Fraction(1, 2)),
        c6=RBall.exact(500),
        exact_check=exact_check,
    )
    assert rep.outcome == "eliminated"
    assert (5, 7) in calls


# ---------------------------------------------------------------------------
# pipeline pieces
# ---------------------------------------------------------------------------


def test_small_disc_survivor():
    rep = small_disc_linear(-23)
    assert rep.outcome == "survivor"
    assert tuple(rep.discs) == (-92, -23)


def test_small_disc_r4_eliminated():
    rep = small_disc_linear(-71)
    assert rep.outcome == "eliminated"
    assert rep.case == "linear_small_r4"


def test_mult_ratio_eliminates_same_disc():
    ok, detail = mult_ratio_eliminate(-71, -71, "positive")
    assert ok, detail


def test_mult_matched_ratio():
    system = conjugate_systems(4 * -39, -39)[0]
    ok, detail = mult_matched_ratio_eliminate(system)
    assert ok, detail


def test_report_determinism():
    a = small_disc_linear(-71).to_dict()
    b = small_disc_linear(-71).to_dict()
    assert a == b


def test_report_shape():
    rep = EliminationReport("linear_big", (), "inconclusive")
    d = rep.to_dict()
    assert set(d) == {"case", "discs", "outcome", "constants", "transcript"}
    with pytest.raises(AssertionError):
        EliminationReport("bogus", (), "eliminated")

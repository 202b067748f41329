"""End-to-end acceptance run: one test per headline claim, each printing a
single PASS line with its measured numbers (visible with pytest -s/-rA)."""

import itertools
import math
import time
from fractions import Fraction

import pytest
from mpmath import workprec

from smforge.ball import CBall, RBall, escalating
from smforge.elimination import (
    EXPECTED_LINEAR_SURVIVORS,
    PAPER_BOUND_123,
    PAPER_BOUND_134,
    big_disc_linear,
    cf_reject,
    conjugate_systems,
    eliminate_linear,
    eliminate_mult,
    linear_discriminant_list,
    mult_threshold_prime4,
    mult_threshold_quarter,
    mult_threshold_same,
    paper_matveev_coefficient,
    paper_matveev_coefficient_distinct,
    small_disc_linear,
)
from smforge.forms import (
    ReducedForm,
    class_number,
    discriminants_in_range,
    enumerate_forms,
)
from smforge.modular import (
    class_polynomial,
    cm_point,
    eval_j,
    set_cache_dir,
    verify_estimates,
)
from smforge.numberfield import (
    build_field,
    element_valuations,
    is_root_of_unity,
    mult_independent,
    usable_prime,
)
from smforge.y0 import on_y02, phi_n_eval, surd_of_form


def _pass(num: int, msg: str):
    print(f"criterion {num}: PASS ({msg})")


# ---------------------------------------------------------------------------
# shared expensive runs
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def linear_run():
    t0 = time.monotonic()
    reports = eliminate_linear()
    return reports, time.monotonic() - t0


@pytest.fixture(scope="module")
def mult_run():
    t0 = time.monotonic()
    reports = eliminate_mult()
    return reports, time.monotonic() - t0


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def _brute_force_forms(d):
    out = []
    for a in range(1, math.isqrt(abs(d) // 3) + 1):
        for b in range(-a, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            f = ReducedForm(a, b, num // (4 * a))
            if f.is_reduced():
                out.append(f)
    return sorted(out, key=lambda f: (f.a, f.b))


def test_criterion_01_forms_oracle():
    t0 = time.monotonic()
    h1, h2 = [], 0
    for d in range(-3, -4001, -1):
        if d % 4 not in (0, 1):
            continue
        forms = list(enumerate_forms(d))
        assert forms == _brute_force_forms(d), d
        if len(forms) == 1:
            h1.append(d)
        elif len(forms) == 2:
            h2 += 1
    dt = time.monotonic() - t0
    assert h1 == [-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43,
                  -67, -163]
    assert len(h1) == 13
    assert h2 == 29
    assert dt < 60
    _pass(1, f"forms oracle to -4000 in {dt:.1f}s; 13 rational, 29 quadratic")


def test_criterion_02_j_numerics():
    with workprec(512):
        v = eval_j(CBall.exact(0, 1))
        assert v.unique_integer() == 1728
        assert float(v.rad) < 2.0 ** -40
        tau = CBall.exact(Fraction(-1, 2), 0) + CBall.exact(0, 1) * (
            RBall.exact(163).sqrt() / 2
        )
        v = eval_j(tau)
        assert v.unique_integer() == -262537412640768000
        assert float(v.rad) < 2.0 ** -40
    checked = 0
    for d in range(-3, -2001, -1):
        if d % 4 not in (0, 1):
            continue
        for f in enumerate_forms(d):
            rep = escalating(
                lambda p, d=d, f=f: verify_estimates(cm_point(d, f, p))
            )
            assert rep.all_hold, (d, f)
            checked += 1
    _pass(2, f"special values exact; margins hold on {checked} conjugates")


def test_criterion_03_class_polynomials(tmp_path):
    # a fresh cache forces recomputation; stability under precision
    # doubling is asserted inside class_polynomial itself
    set_cache_dir(str(tmp_path))
    try:
        t0 = time.monotonic()
        n = 0
        for d in range(-3, -1025, -1):
            if d % 4 not in (0, 1):
                continue
            poly = class_polynomial(d)
            assert poly.degree == class_number(d), d
            n += 1
        dt = time.monotonic() - t0
    finally:
        set_cache_dir(None)
    assert dt < 300
    _pass(3, f"{n} class polynomials stable, degree = h, in {dt:.1f}s")


def test_criterion_04_uniform_big_disc_intervals():
    samples = [-1031 - 408 * k for k in range(10)]
    for d in samples:
        rep = big_disc_linear(disc_prime=d)
        assert rep.outcome == "eliminated", d
        lo, hi = rep.constants["interval_123"]
        assert PAPER_BOUND_123[0] <= lo < hi <= PAPER_BOUND_123[1], d
        lo2, hi2 = rep.constants["interval_134"]
        assert PAPER_BOUND_134[0] <= lo2 < hi2 <= PAPER_BOUND_134[1], d
        assert hi < lo2  # disjoint
    _pass(4, f"10 sampled discriminants down to {samples[-1]}: intervals "
             "inside the stated bounds and disjoint")


def test_criterion_05_r_census():
    r3, rlt3 = [], []
    for d in linear_discriminant_list():
        r = conjugate_systems(4 * d, d)[0].r
        if r == 3:
            r3.append(d)
        elif r < 3:
            rlt3.append(d)
    assert r3 == [-39, -47, -55, -63, -79, -103, -127]
    assert rlt3 == [-23, -31]
    _pass(5, "r = 3 exactly for the stated seven; r < 3 for -23, -31")


def test_criterion_06_matveev_constants():
    assert paper_matveev_coefficient() == 1671257674219520
    assert paper_matveev_coefficient_distinct() == 2748779069440
    _pass(6, "both exponent coefficients match bit for bit")


def test_criterion_07_linear_pipeline(linear_run):
    reports, dt = linear_run
    survivors = sorted(
        tuple(r.discs) for r in reports if r.outcome == "survivor"
    )
    assert survivors == sorted(EXPECTED_LINEAR_SURVIVORS)
    assert not [r for r in reports if r.outcome == "inconclusive"]
    cf_counts = [
        r.constants["convergents_checked"]
        for r in reports
        if "convergents_checked" in r.constants
    ]
    assert cf_counts and all(c > 0 for c in cf_counts)
    assert dt < 1800
    _pass(7, f"{len(reports)} reports in {dt:.0f}s; survivors "
             f"{survivors}; {sum(cf_counts)} convergents over "
             f"{len(cf_counts)} CF runs")


def test_criterion_08_mult_pipeline(mult_run):
    reports, dt = mult_run
    # quoted two-row disjointness for mn < 0
    neg = next(r for r in reports if r.case == "mult_negative" and not r.discs)
    assert neg.outcome == "eliminated"
    left = Fraction(501, 1000) / Fraction(1749, 1000)
    right = Fraction(749, 1000) / Fraction(1876, 1000)
    assert neg.constants["quoted_left"][1] == left
    assert neg.constants["quoted_right"][0] == right
    assert left < right
    # mn > 0 threshold chain
    head = next(r for r in reports if r.case == "mult_positive" and not r.discs
                and "threshold_same" in r.constants)
    assert mult_threshold_same() == head.constants["threshold_same"] == 109
    assert head.constants["same_disc_residual"] == (-71, -95)
    assert mult_threshold_quarter() == 12
    assert head.constants["threshold_prime4_quoted"] == 310
    assert mult_threshold_prime4(div=8) == 367
    # zero survivors beyond the structural options
    assert not [r for r in reports if r.outcome == "survivor"]
    assert not [r for r in reports if r.outcome == "inconclusive"]
    _pass(8, f"{len(reports)} reports in {dt:.0f}s; thresholds 109/12/310; "
             "residual {-71, -95}; zero survivors")


def test_criterion_09_independence_soundness():
    field = build_field([-15])
    gammas = [field.element([2, 1]), field.element([1, 1])]
    n = 0
    for gamma, (a, b), flip in itertools.product(
        gammas, itertools.product(range(1, 6), repeat=2), (False, True)
    ):
        alpha = gamma ** a
        beta = gamma ** b
        if flip:
            beta = -beta
        res = mult_independent(alpha, beta)
        assert res.status == "dependent", (a, b, flip)
        k, l, zeta = res.dependence
        assert (k, l) != (0, 0)
        assert is_root_of_unity(zeta)[0]
        assert (alpha ** k) == zeta * (beta ** l)
        n += 1
    assert n == 100
    rat = build_field([1])
    res = mult_independent(
        rat.from_rational(1728), rat.from_rational(287496)
    )
    assert res.status == "independent"
    _pass(9, "100 planted dependences certified; (1728, 287496) independent")


def test_criterion_10_invariant_spot_checks():
    # forms oracle on a fresh slice
    for d in range(-4001, -4201, -1):
        if d % 4 in (0, 1):
            assert list(enumerate_forms(d)) == _brute_force_forms(d)
    # valuation additivity at usable primes
    field = build_field([-15])
    x = field.element([5, 3])
    y = field.element([2, -1])
    for p in (7, 11, 17):
        if not usable_prime(field, p):
            continue
        vx = element_valuations(field, x, p)
        vy = element_valuations(field, y, p)
        assert element_valuations(field, x * y, p) == [
            u + v for u, v in zip(vx, vy)
        ]
    # exact vs numeric Y0(2) verdicts
    with workprec(320):
        for dx, dy in ((-92, -23), (-23, -31)):
            tx = surd_of_form(dx, 1, dx % 2)
            ty = surd_of_form(dy, 1, dy % 2)
            member, _ = on_y02(tx, ty)
            val = phi_n_eval(eval_j(tx.to_ball()), ty.to_ball(), 2)
            assert member == val.contains_zero()
    # planted dependence is never eliminated by the CF step
    rep = cf_reject(
        logs_fn=lambda: (RBall.exact(3).log(),
                         RBall.exact(3).log() * RBall.exact(Fraction(5, 7))),
        c3p=RBall.exact(Fraction(1, 10 ** 6)),
        c4=RBall.exact(Fraction(1, 2)),
        c6=RBall.exact(500),
    )
    assert rep.outcome != "eliminated"
    # pipeline determinism
    assert small_disc_linear(-71).to_dict() == small_disc_linear(-71).to_dict()
    _pass(10, "module invariants hold on the spot-check slice")

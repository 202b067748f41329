"""Rigorous evaluation of the modular j-function at CM points.

j is evaluated through its integer q-expansion j = 1/q + 744 + 196884 q + ...
The coefficients are computed exactly (E4^3 divided by the eta product) and
the truncation tail is bounded using the classical coefficient estimate
c_n <= e^{4 pi sqrt(n)} (the sharp Petersson-Rademacher asymptotic is
c_n ~ e^{4 pi sqrt(n)} / (sqrt(2) n^{3/4}), so this crude form has ample
slack; the test-suite re-checks it against every computed coefficient).

All values are mid-rad balls; see ball.py for the comparison discipline.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from mpmath import mp, mpf, workprec

from .ball import (
    CBall,
    RBall,
    UncertainComparison,
    escalating,
    poly_eval,
)
from .forms import ReducedForm, dominant_form, enumerate_forms

# ---------------------------------------------------------------------------
# exact q-expansion coefficients
# ---------------------------------------------------------------------------

_coef_cache: list = []  # _coef_cache[k] = c_{k-1}, so j = sum c[k] q^(k-1)


def _mul_trunc(a, b, n):
    out = [gmpy2.mpz(0)] * n
    for i, ai in enumerate(a):
        if i >= n or not ai:
            continue
        jmax = min(len(b), n - i)
        for j in range(jmax):
            out[i + j] += ai * b[j]
    return out


def _inv_trunc(a, n):
    # series inverse, constant term of a must be 1
    assert a[0] == 1
    inv = [gmpy2.mpz(0)] * n
    inv[0] = gmpy2.mpz(1)
    for k in range(1, n):
        acc = gmpy2.mpz(0)
        for i in range(1, min(k, len(a) - 1) + 1):
            acc += a[i] * inv[k - i]
        inv[k] = -acc
    return inv


def j_coefficients(n_terms: int) -> list:
    """Coefficients [c_-1, c_0, c_1, ...] with j = sum_k coef[k] q^(k-1),
    computed exactly: coef[0] = 1, coef[1] = 744, coef[2] = 196884, ..."""
    global _coef_cache
    if len(_coef_cache) >= n_terms:
        return _coef_cache[:n_terms]
    n = max(n_terms, 2 * len(_coef_cache), 64)

    # sigma_3 sieve and E4
    sigma3 = [gmpy2.mpz(0)] * n
    for d in range(1, n):
        d3 = gmpy2.mpz(d) ** 3
        for m in range(d, n, d):
            sigma3[m] += d3
    e4 = [gmpy2.mpz(1)] + [240 * s for s in sigma3[1:]]

    # Euler function prod (1 - q^k) via pentagonal numbers, then ^24
    euler = [gmpy2.mpz(0)] * n
    euler[0] = gmpy2.mpz(1)
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= n and g2 >= n:
            break
        sign = 1 if k % 2 == 0 else -1
        if g1 < n:
            euler[g1] += sign
        if g2 < n:
            euler[g2] += sign
        k += 1
    e2 = _mul_trunc(euler, euler, n)
    e4p = _mul_trunc(e2, e2, n)
    e8p = _mul_trunc(e4p, e4p, n)
    e16p = _mul_trunc(e8p, e8p, n)
    eta24 = _mul_trunc(e16p, e8p, n)  # prod (1-q^k)^24 = Delta/q

    e4cubed = _mul_trunc(_mul_trunc(e4, e4, n), e4, n)
    coeffs = _mul_trunc(e4cubed, _inv_trunc(eta24, n), n)
    _coef_cache = coeffs
    return _coef_cache[:n_terms]


def _pi_ball() -> RBall:
    with workprec(mp.prec + 20):
        p = +mp.pi
    return RBall(p, abs(p) * mpf(2) ** (2 - mp.prec))


def _tail_bound(q_abs_upper: mpf, m: int) -> mpf:
    """Bound for |sum_{n > m} c_n q^n| given |q| <= q_abs_upper.

    Uses c_n <= e^{4 pi sqrt(n)} and sqrt(n) <= sqrt(m+1) + (n-m-1)/(2 sqrt(m+1)):
    tail <= e^{4 pi sqrt(m+1)} |q|^{m+1} / (1 - |q| e^{2 pi / sqrt(m+1)}).
    """
    with workprec(mp.prec + 20):
        s = mp.sqrt(m + 1)
        growth = mp.exp(2 * mp.pi / s)
        ratio = q_abs_upper * growth
        if ratio >= mpf(1) / 2:
            return mp.inf
        head = mp.exp(4 * mp.pi * s) * q_abs_upper ** (m + 1)
        return +(head / (1 - ratio) * (1 + mpf(2) ** -30))


MIN_IM = mpf(3).sqrt() / 2  # lower edge of the fundamental domain


def q_of_tau(tau: CBall) -> CBall:
    """q(tau) = exp(2 pi i tau)."""
    pi = _pi_ball()
    two_pi_i = CBall.from_rballs(RBall.exact(0), pi * 2)
    return (two_pi_i * tau).exp()


def eval_j(tau: CBall, prec: int | None = None) -> CBall:
    """Certified j(tau) for tau in the fundamental domain (Im tau >= sqrt3/2).

    The returned ball accounts for series truncation and rounding.  The
    truncation order is chosen so the tail is below 2^-(prec+16) relative
    to the dominant 1/q term.
    """

    def _run(p):
        if tau.mid.imag < 0.8:
            raise ValueError("eval_j requires tau in the fundamental domain")
        q = q_of_tau(tau)
        q_up = q.abs().upper()
        # pick truncation order: m such that tail < |1/q| * 2^-(p+16)
        target = mpf(2) ** (-(p + 16)) / q_up
        m = 16
        while _tail_bound(q_up, m) > target:
            m *= 2
            if m > 10 ** 7:
                raise UncertainComparison("truncation order exploded")
        coeffs = [int(c) for c in j_coefficients(m + 2)]
        val = poly_eval(coeffs, q) / q
        tail = _tail_bound(q_up, m)
        return CBall(val.mid, val.rad + tail)

    if prec is None:
        return _run(mp.prec)
    with workprec(prec):
        return _run(prec)


def tau_of_form(disc: int, form: ReducedForm) -> CBall:
    """tau = (-b + sqrt(disc)) / (2a) as a ball at current precision."""
    root = (RBall.exact(abs(disc))).sqrt()
    re = RBall.exact(Fraction(-form.b, 2 * form.a))
    im = root / (2 * form.a)
    return CBall.from_rballs(re, im)


@dataclass
class CMPoint:
    disc: int
    form: ReducedForm
    tau: CBall
    j_value: CBall


def cm_point(disc: int, form: ReducedForm, prec: int | None = None) -> CMPoint:
    def _run(p):
        tau = tau_of_form(disc, form)
        return CMPoint(disc, form, tau, eval_j(tau))

    if prec is None:
        return _run(mp.prec)
    with workprec(prec):
        return _run(prec)


def conjugate_points(disc: int, prec: int | None = None) -> list[CMPoint]:
    return [cm_point(disc, f, prec) for f in enumerate_forms(disc)]


# ---------------------------------------------------------------------------
# the explicit estimates
# ---------------------------------------------------------------------------

V_THRESHOLD_NUM = 4158  # |v(q)| <= 2883 |q| needs Im tau >= log(4158)/(2 pi)


@dataclass
class EstimateReport:
    disc: int
    form: ReducedForm
    margin_estim_j: RBall        # 2079 - ||j| - 1/|q||
    margin_v: RBall | None       # 2883|q| - |v(q)|, None when skipped
    margin_logj: RBall | None    # 9 Im tau - log|j|, None at j = 0

    @property
    def all_hold(self) -> bool:
        ok = self.margin_estim_j.lower() > 0
        if self.margin_logj is not None:
            ok = ok and self.margin_logj.lower() > 0
        if self.margin_v is not None:
            ok = ok and self.margin_v.lower() > 0
        return ok


def verify_estimates(point: CMPoint) -> EstimateReport:
    """Certify the three explicit j-estimates at a CM point.

    Raises UncertainComparison when the working precision cannot separate
    the margins from zero; callers escalate.  A certified negative margin
    is a numerics bug and raises AssertionError.
    """
    q = q_of_tau(point.tau)
    jv = point.j_value
    inv_q_abs = RBall.exact(1) / q.abs()
    m1 = RBall.exact(2079) - (jv.abs() - inv_q_abs).abs()

    m2 = None
    with workprec(mp.prec + 20):
        threshold = mp.log(V_THRESHOLD_NUM) / (2 * mp.pi)
    im_tau = point.tau.imag()
    at_corner = abs(point.disc) == 3
    if (not at_corner) and im_tau.lower() >= threshold:
        v = jv.log_abs() + q.log_abs()
        m2 = q.abs() * 2883 - v.abs()

    # at the corner j = 0: log|j| = -inf and the bound holds vacuously
    m3 = None if at_corner else im_tau * 9 - jv.log_abs()

    rep = EstimateReport(point.disc, point.form, m1, m2, m3)
    for name, margin in (
        ("estim-j", m1),
        ("v(q)", m2),
        ("log-j", m3),
    ):
        if margin is None:
            continue
        if margin.upper() < 0:
            raise AssertionError(
                f"certified estimate violation ({name}) at disc {point.disc}"
            )
        if margin.lower() <= 0:
            raise UncertainComparison(f"margin {name} not separated from 0")
    return rep


@dataclass
class DominanceReport:
    disc: int
    max_ratio_upper: mpf
    holds: bool


def dominance_check(disc: int, prec: int | None = None) -> DominanceReport:
    """Certify |x| <= 0.1 |x0| for every non-dominant conjugate x."""
    if abs(disc) < 11:
        raise ValueError("dominance estimate requires |disc| >= 11")

    def _run(p):
        pts = conjugate_points(disc)
        dom = dominant_form(disc)
        x0 = next(pt for pt in pts if pt.form == dom).j_value.abs()
        worst = mpf(0)
        tenth = RBall.exact(Fraction(1, 10))
        for pt in pts:
            if pt.form == dom:
                continue
            ratio = pt.j_value.abs() / x0
            if not (ratio < tenth):
                raise AssertionError(
                    f"dominance failed at disc {disc}, form {pt.form}"
                )
            worst = max(worst, ratio.upper())
        return DominanceReport(disc, worst, True)

    if prec is not None:
        with workprec(prec):
            return _run(prec)
    return escalating(_run)


@dataclass
class HeightReport:
    disc: int
    height: RBall
    bound: RBall      # 9 sqrt(|disc|) / 2
    bound_holds: bool


def height_of(disc: int, prec: int | None = None) -> HeightReport:
    """Certified logarithmic height of the singular moduli of disc."""

    def _run(p):
        pts = conjugate_points(disc)
        total = RBall.exact(0)
        for pt in pts:
            a = pt.j_value.abs()
            try:
                if a > RBall.exact(1):
                    total = total + pt.j_value.log_abs()
                # else: contributes log max{1, |x|} = 0
            except UncertainComparison:
                # |x| straddles 1: contribution in [0, log upper]
                up = pt.j_value.abs().upper()
                with workprec(mp.prec + 20):
                    lu = mp.log(max(up, mpf(1)))
                total = total + RBall.from_interval(0, lu)
        height = total / len(pts)
        bound = RBall.exact(abs(disc)).sqrt() * 9 / 2
        if not (height < bound):
            raise AssertionError(f"height bound failed at disc {disc}")
        return HeightReport(disc, height, bound, True)

    if prec is not None:
        with workprec(prec):
            return _run(prec)
    return escalating(_run)


# ---------------------------------------------------------------------------
# Hilbert class polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassPolynomial:
    disc: int
    coefficients: tuple[int, ...]  # coefficients[k] is the X^k coefficient

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def eval_ball(self, z: CBall) -> CBall:
        return poly_eval(list(self.coefficients), z)

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def _expand_class_poly(disc: int) -> list[int]:
    # coefficients indexed by power of X, lowest first; monic of degree h
    coeffs = [CBall.exact(1)]
    for pt in conjugate_points(disc):
        root = pt.j_value
        new = [CBall.exact(0) for _ in range(len(coeffs) + 1)]
        for k, c in enumerate(coeffs):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] - c * root
        coeffs = new
    ints = [c.unique_integer(Fraction(1, 4)) for c in coeffs]
    assert ints[-1] == 1
    return ints


def _estimate_prec(disc: int) -> int:
    # coefficient magnitude ~ exp(pi sqrt(|D|) sum 1/a); generous headroom
    forms_ = enumerate_forms(disc)
    s = sum(Fraction(1, f.a) for f in forms_)
    bits = int(4.6 * (abs(disc) ** 0.5) * float(s)) + 32 * len(forms_) + 128
    return max(256, bits)


def class_polynomial(disc: int, prec: int | None = None) -> ClassPolynomial:
    """Hilbert class polynomial of disc: monic, degree h, integer coeffs.

    Coefficients are accepted only when the ball rounds to a unique integer
    with margin 1/4, and the rounding is re-verified at doubled precision.
    """
    cached = _cache_load(disc)
    if cached is not None:
        return cached

    start = prec if prec is not None else _estimate_prec(disc)

    def _run(p):
        ints = _expand_class_poly(disc)
        return ints

    ints = escalating(_run, start=start)
    ints2 = escalating(_run, start=2 * start)
    if ints != ints2:
        raise AssertionError(
            f"class polynomial for {disc} unstable under precision doubling"
        )
    result = ClassPolynomial(disc, tuple(ints))
    _cache_store(result)
    return result


# -- disk cache -------------------------------------------------------------

_cache_dir: str | None = None


def set_cache_dir(path: str | None):
    global _cache_dir
    _cache_dir = path
    if path:
        os.makedirs(path, exist_ok=True)


def _cache_path(disc: int) -> str | None:
    base = _cache_dir or os.environ.get("SMFORGE_CACHE")
    if not base:
        return None
    os.makedirs(base, exist_ok=True)
    return os.path.join(base, f"hcp_{abs(disc)}.txt")


def _cache_load(disc: int) -> ClassPolynomial | None:
    path = _cache_path(disc)
    if not path or not os.path.exists(path):
        return None
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2 or int(header[0]) != disc:
            return None
        h = int(header[1])
        vals = [int(t) for t in fh.readline().split()]
    if len(vals) != h + 1 or vals[0] != 1:
        return None
    # stored leading-first, constant last; we index lowest-first
    return ClassPolynomial(disc, tuple(reversed(vals)))


def _cache_store(poly: ClassPolynomial):
    path = _cache_path(poly.disc)
    if not path:
        return
    data = f"{poly.disc} {poly.degree}\n" + " ".join(
        str(c) for c in reversed(poly.coefficients)
    ) + "\n"
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

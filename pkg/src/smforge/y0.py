"""Membership tests for the modular curve Y0(2), plus numeric Phi_N values.

Two CM points j(tau), j(tau') lie on Y0(2) iff tau is equivalent to s tau'
for one of the three matrices s in C(2).  For tau, tau' in the fundamental
domain this reduces to a finite list of candidate fractional-linear
transformations, each decidable by exact arithmetic in Q(sqrt(D)).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ball import CBall
from .modular import eval_j


# ---------------------------------------------------------------------------
# exact quadratic surds p + q sqrt(d)
# ---------------------------------------------------------------------------


def _square_split(n: int) -> tuple[int, int]:
    """n = s^2 * d0 with d0 squarefree (sign carried by d0)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, d0 = 1, 1
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        s *= f ** (e // 2)
        if e % 2:
            d0 *= f
        f += 1
    d0 *= n
    return s, sign * d0


class QuadSurd:
    """An exact element p + q sqrt(d) of a quadratic field, d squarefree.

    For d < 0 this is the complex number p + q i sqrt(|d|); all the
    geometry needed here (real part, |.|^2, imaginary-part comparisons)
    stays inside Q, so every predicate is decided exactly.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q, d: int):
        p, q = Fraction(p), Fraction(q)
        s, d0 = _square_split(int(d))
        if d0 == 1:
            p, q, d0 = p + q * s, Fraction(0), 1
        else:
            q = q * s
        if q == 0:
            d0 = 1
        self.p, self.q, self.d = p, q, d0

    # -- ring operations --------------------------------------------------
    def _coerce(self, other) -> "QuadSurd":
        if isinstance(other, QuadSurd):
            if other.d != self.d and self.d != 1 and other.d != 1:
                raise ValueError("surds from different quadratic fields")
            return other
        return QuadSurd(other, 0, 1)

    def _field_d(self, other: "QuadSurd") -> int:
        return self.d if self.d != 1 else other.d

    def __add__(self, other):
        other = self._coerce(other)
        return QuadSurd(self.p + other.p, self.q + other.q, self._field_d(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        d = self._field_d(other)
        return QuadSurd(
            self.p * other.p + self.q * other.q * d,
            self.p * other.q + self.q * other.p,
            d,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadSurd":
        return QuadSurd(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        """p^2 - q^2 d; for d < 0 this is |tau|^2."""
        return self.p * self.p - self.q * self.q * self.d

    def inverse(self) -> "QuadSurd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero surd")
        return QuadSurd(self.p / n, -self.q / n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, (QuadSurd, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        return self.p == other.p and self.q == other.q and (
            self.q == 0 or self.d == other.d
        )

    def __hash__(self):
        return hash((self.p, self.q, self.d))

    # -- geometry (d < 0) --------------------------------------------------
    @property
    def re(self) -> Fraction:
        return self.p

    def im_sq(self) -> Fraction:
        """(Im tau)^2 = q^2 |d| for d < 0."""
        if self.d > 0:
            raise ValueError("im_sq needs an imaginary surd")
        return self.q * self.q * (-self.d)

    def is_upper(self) -> bool:
        return self.d < 0 and self.q > 0

    def to_ball(self) -> CBall:
        from .ball import RBall

        re = RBall.exact(self.p)
        if self.d == 1:
            return CBall.from_rballs(re, RBall.exact(0))
        root = RBall.exact(abs(self.d)).sqrt()
        if self.d < 0:
            return CBall.from_rballs(re, root * RBall.exact(self.q))
        return CBall.from_rballs(re + root * RBall.exact(self.q), RBall.exact(0))

    def __repr__(self):
        return f"QuadSurd({self.p} + {self.q}*sqrt({self.d}))"


_SURD_RE = re.compile(
    r"^\(\s*(?P<p>[+-]?\d+(?:/\d+)?)\s*"
    r"(?P<sign>[+-])\s*(?P<q>\d+(?:/\d+)?)\s*\*\s*"
    r"sqrt\(\s*(?P<d>-?\d+)\s*\)\s*\)$"
)


def parse_surd(text: str) -> QuadSurd:
    """Parse '(p+q*sqrt(D))' with rational p, q; e.g. '(-1/2+1/2*sqrt(-23))'."""
    m = _SURD_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a surd literal: {text!r}")
    p = Fraction(m.group("p"))
    q = Fraction(m.group("q"))
    if m.group("sign") == "-":
        q = -q
    return QuadSurd(p, q, int(m.group("d")))


def surd_of_form(disc: int, a: int, b: int) -> QuadSurd:
    """tau = (-b + sqrt(disc)) / (2a) as an exact surd."""
    return QuadSurd(Fraction(-b, 2 * a), Fraction(1, 2 * a), disc)


def reduce_surd(tau: QuadSurd) -> tuple[QuadSurd, list[tuple[int, int, int, int]]]:
    """Move tau into the fundamental domain by exact translate/invert steps.

    Convention matching reduced forms: Re in [-1/2, 1/2), and Re <= 0 when
    |tau| = 1.  Returns the reduced point and the applied SL2 word.
    """
    if not tau.is_upper():
        raise ValueError("reduction needs Im tau > 0")
    word = []
    while True:
        # translate Re into [-1/2, 1/2)
        k = math.floor(tau.re + Fraction(1, 2))
        if k:
            tau = tau - k
            word.append((1, -k, 0, 1))
        n = tau.norm()
        if n < 1 or (n == 1 and tau.re > 0):
            tau = -tau.inverse()
            word.append((0, -1, 1, 0))
            continue
        return tau, word


# ---------------------------------------------------------------------------
# the matrix set C(N) and Phi_N
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsogenyMatrixSet:
    level: int
    matrices: tuple[tuple[int, int, int], ...]  # (a, b, d) with ad = level

    @property
    def count(self) -> int:
        return len(self.matrices)


@lru_cache(maxsize=None)
def c_matrices(level: int) -> IsogenyMatrixSet:
    """C(N): upper-triangular (a, b; 0, d), ad = N, 0 <= b < d, gcd = 1."""
    if level < 1:
        raise ValueError("level must be positive")
    out = []
    for a in range(1, level + 1):
        if level % a:
            continue
        d = level // a
        for b in range(d):
            if math.gcd(math.gcd(a, b), d) == 1:
                out.append((a, b, d))
    return IsogenyMatrixSet(level, tuple(out))


def _reduce_ball(tau: CBall) -> CBall:
    """Numeric fundamental-domain reduction; the SL2 step choice is made
    from the midpoint but applied in ball arithmetic, so the result is a
    rigorous enclosure of a point SL2-equivalent to tau."""
    for _ in range(10000):
        k = int(round(float(tau.mid.real)))
        if k:
            tau = tau - k
        if abs(tau.mid) < 0.999:
            tau = CBall.exact(-1) / tau
            continue
        return tau
    raise RuntimeError("fundamental-domain reduction did not converge")


def phi_n_eval(x: CBall, tau: CBall, level: int) -> CBall:
    """Certified Phi_N(x, j(tau)) = prod over C(N) of (x - j((a tau + b)/d))."""
    acc = CBall.exact(1)
    for a, b, d in c_matrices(level).matrices:
        stau = (tau * a + b) / d
        acc = acc * (x - eval_j(_reduce_ball(stau)))
    return acc


# ---------------------------------------------------------------------------
# exact membership test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Y02Witness:
    description: str
    factor: tuple[int, int, int]  # the C(2) matrix this witness realizes


def _candidate_transforms(tp: QuadSurd):
    """The finite list covering tau = s tau' modulo SL2, both in D."""
    half = Fraction(1, 2)
    for eps in (0, 1, -1):
        yield tp * 2 + eps, f"2*tau'{eps:+d}" if eps else "2*tau'", (2, 0, 1)
    yield tp * half, "tau'/2", (1, 0, 2)
    for eps in (0, 1, -1):
        yield (
            -(tp.inverse() * 2) + eps,
            f"-2/tau'{eps:+d}" if eps else "-2/tau'",
            (1, 0, 2),
        )
    yield (tp + 1) * half, "(tau'+1)/2", (1, 1, 2)
    for epsp in (0, 1):
        base = (tp + 1) * half - epsp
        if base == 0:
            continue
        for eps in (0, 1, -1):
            yield (
                -base.inverse() + eps,
                f"-1/((tau'+1)/2-{epsp}){eps:+d}" if eps
                else f"-1/((tau'+1)/2-{epsp})",
                (1, 1, 2),
            )


def on_y02(tau: QuadSurd, tau_prime: QuadSurd) -> tuple[bool, Y02Witness | None]:
    """Exact test whether (j(tau), j(tau')) lies on Y0(2).

    Both arguments must be in the fundamental domain.  The candidate list
    is applied unconditionally (a superset of the case analysis), which is
    sound: any match gives tau = s tau' mod SL2 with s in C(2).
    """
    if not (tau.is_upper() and tau_prime.is_upper()):
        raise ValueError("surds must lie in the upper half-plane")
    if tau.d != tau_prime.d:
        # an isogeny preserves the CM field
        return False, None
    for cand, desc, factor in _candidate_transforms(tau_prime):
        if not cand.is_upper():
            continue
        if cand == tau:
            return True, Y02Witness(desc, factor)
        reduced, _ = reduce_surd(cand)
        if reduced == tau:
            return True, Y02Witness(desc, factor)
    return False, None


@dataclass(frozen=True)
class ImRatioCheck:
    applicable: bool
    ratio: Fraction | None


def im_ratio_constraint(tau: QuadSurd, tau_prime: QuadSurd) -> ImRatioCheck:
    """For Y0(2) pairs in D with Im tau' >= 2: Im tau / Im tau' is 2 or 1/2.

    Decided exactly; Im tau' < 2 is reported not-applicable per the lemma
    hypothesis.  A violation in the applicable range is a bug.
    """
    if tau_prime.im_sq() < 4:
        return ImRatioCheck(False, None)
    if tau.d != tau_prime.d:
        raise ValueError("surds from different quadratic fields")
    ratio = tau.q / tau_prime.q
    if ratio not in (Fraction(2), Fraction(1, 2)):
        raise AssertionError(f"Im ratio {ratio} outside {{2, 1/2}}")
    return ImRatioCheck(True, ratio)

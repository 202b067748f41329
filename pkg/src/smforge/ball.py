"""Mid-rad ball arithmetic on top of mpmath.

Every numeric quantity that feeds an inequality somewhere in the proof
pipelines is carried as a ball (midpoint + error radius).  Comparisons are
only ever decided when the gap between two balls exceeds the summed radii;
otherwise an :class:`UncertainComparison` is raised and the caller is
expected to retry at higher precision (see :func:`escalating`).

Error model: mpmath's mpf field operations (add/sub/mul/div/sqrt) are
correctly rounded at the working precision, so a single operation on exact
midpoints carries a relative error of at most 2^(1-prec).  We budget
2^(4-prec) per operation, and transcendental functions are evaluated with
20 guard bits before rounding so the same budget covers them.  All radius
computations are additionally inflated by a fixed factor to absorb rounding
of the radius arithmetic itself.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpf, mpc, workprec

DEFAULT_PREC = 256
MAX_PREC = 16384


class UncertainComparison(Exception):
    """A ball comparison could not be decided at the current precision."""


class PrecisionExhausted(Exception):
    """Escalation hit MAX_PREC without resolving the computation."""


def _eps():
    # per-operation relative rounding budget at the current precision
    return mpf(2) ** (4 - mp.prec)


def _up(x):
    # inflate a radius bound to absorb rounding in the radius arithmetic
    return x * (1 + mpf(2) ** -20)


def _to_mpf_exact(x):
    """mpf conversion that is exact for ints and dyadic floats."""
    return mpf(x)


class RBall:
    """A real number known to lie in [mid - rad, mid + rad]."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid, rad=0):
        self.mid = mpf(mid)
        self.rad = mpf(rad)

    @staticmethod
    def exact(x) -> "RBall":
        if isinstance(x, Fraction):
            return RBall.exact(x.numerator) / RBall.exact(x.denominator)
        return RBall(_to_mpf_exact(x), 0)

    @staticmethod
    def from_interval(lo, hi) -> "RBall":
        lo, hi = mpf(lo), mpf(hi)
        mid = (lo + hi) / 2
        rad = _up(abs(hi - lo) / 2 + abs(mid) * _eps())
        return RBall(mid, rad)

    # -- interval endpoints (outward-safe) --------------------------------
    def lower(self):
        return self.mid - self.rad - abs(self.mid) * _eps()

    def upper(self):
        return self.mid + self.rad + abs(self.mid) * _eps()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_rball(other)
        mid = self.mid + other.mid
        rad = _up(self.rad + other.rad + abs(mid) * _eps())
        return RBall(mid, rad)

    __radd__ = __add__

    def __neg__(self):
        return RBall(-self.mid, self.rad)

    def __sub__(self, other):
        return self + (-_as_rball(other))

    def __rsub__(self, other):
        return _as_rball(other) + (-self)

    def __mul__(self, other):
        other = _as_rball(other)
        mid = self.mid * other.mid
        rad = _up(
            abs(self.mid) * other.rad
            + abs(other.mid) * self.rad
            + self.rad * other.rad
            + abs(mid) * _eps()
        )
        return RBall(mid, rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rball(other)
        den_low = abs(other.mid) - other.rad
        if den_low <= 0:
            raise UncertainComparison("division by a ball containing zero")
        mid = self.mid / other.mid
        # |a/b - a0/b0| <= (|a0| rb + |b0| ra) / (|b0| (|b0| - rb))
        rad = _up(
            (abs(self.mid) * other.rad + abs(other.mid) * self.rad)
            / (abs(other.mid) * den_low)
            + abs(mid) * _eps()
        )
        return RBall(mid, rad)

    def __rtruediv__(self, other):
        return _as_rball(other) / self

    def abs(self) -> "RBall":
        return RBall(abs(self.mid), self.rad)

    def sqrt(self) -> "RBall":
        lo = self.lower()
        if lo < 0:
            raise UncertainComparison("sqrt of a ball reaching below zero")
        with workprec(mp.prec + 20):
            mid = mp.sqrt(self.mid)
            # |sqrt(x)-sqrt(x0)| <= rad / (2 sqrt(lo)) ; guard lo ~ 0
            if lo == 0:
                rad = mp.sqrt(self.rad) if self.rad else mpf(0)
            else:
                rad = self.rad / (2 * mp.sqrt(lo))
        return RBall(+mid, _up(rad + abs(mid) * _eps()))

    def exp(self) -> "RBall":
        with workprec(mp.prec + 20):
            mid = mp.exp(self.mid)
            rad = mid * mp.expm1(self.rad) if self.rad else mpf(0)
        return RBall(+mid, _up(rad + abs(mid) * _eps()))

    def log(self) -> "RBall":
        lo = self.lower()
        if lo <= 0:
            raise UncertainComparison("log of a ball reaching zero")
        with workprec(mp.prec + 20):
            mid = mp.log(self.mid)
            rad = self.rad / lo
        return RBall(+mid, _up(rad + (abs(mid) + 1) * _eps()))

    def pow_int(self, n: int) -> "RBall":
        if n == 0:
            return RBall.exact(1)
        if n < 0:
            return RBall.exact(1) / self.pow_int(-n)
        result = RBall.exact(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- certified predicates ---------------------------------------------
    def __lt__(self, other):
        other = _as_rball(other)
        if self.upper() < other.lower():
            return True
        if self.lower() > other.upper():
            return False
        raise UncertainComparison(
            f"cannot separate {self} from {other}"
        )

    def __gt__(self, other):
        return _as_rball(other).__lt__(self)

    def contains_zero(self) -> bool:
        return self.lower() <= 0 <= self.upper()

    def definitely_nonzero(self) -> bool:
        return not self.contains_zero()

    def unique_integer(self, margin=Fraction(1, 4)) -> int:
        """The single integer this ball rounds to, certified within margin."""
        n = int(mp.nint(self.mid))
        gap = abs(self.mid - n) + self.rad
        if gap < mpf(margin.numerator) / margin.denominator:
            return n
        raise UncertainComparison(
            f"ambiguous integer rounding: mid={self.mid}, rad={self.rad}"
        )

    def overlaps(self, other) -> bool:
        other = _as_rball(other)
        return not (self.upper() < other.lower() or other.upper() < self.lower())

    def __repr__(self):
        return f"RBall({self.mid}, rad={self.rad})"


def _as_rball(x):
    if isinstance(x, RBall):
        return x
    if isinstance(x, (int, Fraction)):
        return RBall.exact(x)
    return RBall(mpf(x), 0)


class CBall:
    """A complex number known to lie in the disk |z - mid| <= rad."""

    __slots__ = ("mid", "rad")

    def __init__(self, mid, rad=0):
        self.mid = mpc(mid)
        self.rad = mpf(rad)

    @staticmethod
    def exact(re, im=0) -> "CBall":
        if isinstance(re, Fraction) or isinstance(im, Fraction):
            rr = RBall.exact(re)
            ri = RBall.exact(im)
            return CBall(mpc(rr.mid, ri.mid), _up(rr.rad + ri.rad))
        return CBall(mpc(re, im), 0)

    @staticmethod
    def from_rballs(re: RBall, im: RBall) -> "CBall":
        return CBall(mpc(re.mid, im.mid), _up(re.rad + im.rad))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_cball(other)
        mid = self.mid + other.mid
        rad = _up(self.rad + other.rad + abs(mid) * _eps())
        return CBall(mid, rad)

    __radd__ = __add__

    def __neg__(self):
        return CBall(-self.mid, self.rad)

    def __sub__(self, other):
        return self + (-_as_cball(other))

    def __rsub__(self, other):
        return _as_cball(other) + (-self)

    def __mul__(self, other):
        other = _as_cball(other)
        mid = self.mid * other.mid
        rad = _up(
            abs(self.mid) * other.rad
            + abs(other.mid) * self.rad
            + self.rad * other.rad
            + abs(mid) * _eps() * 2
        )
        return CBall(mid, rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_cball(other)
        den_low = abs(other.mid) - other.rad
        if den_low <= 0:
            raise UncertainComparison("division by a ball containing zero")
        mid = self.mid / other.mid
        rad = _up(
            (abs(self.mid) * other.rad + abs(other.mid) * self.rad)
            / (abs(other.mid) * den_low)
            + abs(mid) * _eps() * 2
        )
        return CBall(mid, rad)

    def __rtruediv__(self, other):
        return _as_cball(other) / self

    def conj(self) -> "CBall":
        return CBall(self.mid.conjugate(), self.rad)

    def abs(self) -> RBall:
        with workprec(mp.prec + 20):
            a = abs(self.mid)
        return RBall(+a, _up(self.rad + a * _eps()))

    def abs_upper(self):
        return self.abs().upper()

    def abs_lower(self):
        lo = self.abs().lower()
        return lo if lo > 0 else mpf(0)

    def exp(self) -> "CBall":
        with workprec(mp.prec + 20):
            mid = mp.exp(self.mid)
            mag = abs(mid)
            rad = mag * mp.expm1(self.rad) if self.rad else mpf(0)
        return CBall(+mid, _up(rad + mag * _eps() * 2))

    def log_abs(self) -> RBall:
        """log|z| as a real ball; requires the disk to avoid zero."""
        lo = self.abs_lower()
        if lo <= 0:
            raise UncertainComparison("log_abs of a ball reaching zero")
        with workprec(mp.prec + 20):
            mid = mp.log(abs(self.mid))
            rad = self.rad / lo
        return RBall(+mid, _up(rad + (abs(mid) + 1) * _eps()))

    def log(self) -> "CBall":
        """Principal complex logarithm; the disk must avoid (-inf, 0]."""
        lo = self.abs_lower()
        if lo <= 0:
            raise UncertainComparison("log of a ball reaching zero")
        if self.mid.real <= 0 and abs(self.mid.imag) <= self.rad:
            raise UncertainComparison("log ball touches the branch cut")
        with workprec(mp.prec + 20):
            mid = mp.log(self.mid)
            # |log z - log z0| <= -log(1 - rad/|z0|) <= rad/(|z0|-rad)
            rad = self.rad / lo
        return CBall(+mid, _up(rad + (abs(mid) + 1) * _eps()))

    def pow_int(self, n: int) -> "CBall":
        if n == 0:
            return CBall.exact(1)
        if n < 0:
            return CBall.exact(1) / self.pow_int(-n)
        result = CBall.exact(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def real(self) -> RBall:
        return RBall(self.mid.real, self.rad)

    def imag(self) -> RBall:
        return RBall(self.mid.imag, self.rad)

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad + abs(self.mid) * _eps()

    def unique_integer(self, margin=Fraction(1, 4)) -> int:
        """Round to an integer (real part); imaginary part must round to 0."""
        n = int(mp.nint(self.mid.real))
        gap = abs(self.mid.real - n) + abs(self.mid.imag) + self.rad
        if gap < mpf(margin.numerator) / margin.denominator:
            return n
        raise UncertainComparison(
            f"ambiguous integer rounding: mid={self.mid}, rad={self.rad}"
        )

    def __repr__(self):
        return f"CBall({self.mid}, rad={self.rad})"


def _as_cball(x):
    if isinstance(x, CBall):
        return x
    if isinstance(x, RBall):
        return CBall(mpc(x.mid), x.rad)
    if isinstance(x, (int, Fraction)):
        return CBall.exact(x)
    return CBall(mpc(x), 0)


def cball(x) -> CBall:
    return _as_cball(x)


def rball(x) -> RBall:
    return _as_rball(x)


def ball_sum(balls, zero=None):
    total = zero if zero is not None else RBall.exact(0)
    for b in balls:
        total = total + b
    return total


def ball_prod(balls, one=None):
    total = one if one is not None else RBall.exact(1)
    for b in balls:
        total = total * b
    return total


def poly_eval(coeffs, z: CBall) -> CBall:
    """Horner evaluation of sum(coeffs[k] z^k) with exact integer coeffs."""
    acc = CBall.exact(0)
    for c in reversed(coeffs):
        acc = acc * z + CBall.exact(c)
    return acc


def escalating(fn, start=DEFAULT_PREC, maximum=MAX_PREC):
    """Run fn(prec) under increasing precision until it stops raising
    UncertainComparison.  fn must be a pure function of the precision."""
    prec = start
    while True:
        try:
            with workprec(prec):
                return fn(prec)
        except UncertainComparison as exc:
            if prec >= maximum:
                raise PrecisionExhausted(str(exc)) from exc
            prec *= 2

"""Reduced binary quadratic forms of negative discriminant.

The set T(D) of reduced triples (a, b, c) with b^2 - 4ac = D parametrizes
the conjugates of the singular moduli of discriminant D; its size is the
class number h(D).  Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class InvalidDiscriminant(ValueError):
    """Input is not a negative discriminant (D < 0 and D = 0,1 mod 4)."""


def _check_disc(value: int) -> int:
    value = int(value)
    if value >= 0 or value % 4 not in (0, 1):
        raise InvalidDiscriminant(f"{value} is not a negative discriminant")
    return value


def r4_of(disc: int) -> int:
    """The residue of D mod 4, reduced into {0, 1}."""
    return _check_disc(disc) % 4


@dataclass(frozen=True, order=True)
class ReducedForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        return (
            a > 0
            and c > 0
            and math.gcd(math.gcd(a, b), c) == 1
            and ((-a < b <= a < c) or (0 <= b <= a == c))
        )

    def is_real(self) -> bool:
        """Whether the associated j-value is real (form equals its mirror)."""
        return self.b == 0 or self.a == self.b or self.a == self.c

    def mirror(self) -> "ReducedForm":
        """The complex-conjugate form (a, -b, c), renormalized if reduced."""
        if self.is_real():
            return self
        return ReducedForm(self.a, -self.b, self.c)

    def as_tuple(self):
        return (self.a, self.b, self.c)


@lru_cache(maxsize=None)
def enumerate_forms(disc: int) -> tuple[ReducedForm, ...]:
    """All reduced forms of discriminant disc, sorted lexicographically
    by (a, b).  Searches |b| <= a <= sqrt(|disc|/3), solving for c."""
    disc = _check_disc(disc)
    bound = math.isqrt(abs(disc) // 3)
    found = []
    for a in range(1, bound + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = ReducedForm(a, b, c)
            if f.is_reduced():
                found.append(f)
    found.sort(key=lambda f: (f.a, f.b))
    return tuple(found)


def class_number(disc: int) -> int:
    return len(enumerate_forms(disc))


def dominant_form(disc: int) -> ReducedForm:
    """The unique form with a = 1: (1, r4(D), (r4(D) - D) / 4)."""
    r4 = r4_of(disc)
    return ReducedForm(1, r4, (r4 - disc) // 4)


@dataclass(frozen=True)
class Discriminant:
    value: int

    def __post_init__(self):
        _check_disc(self.value)

    @property
    def r4(self) -> int:
        return r4_of(self.value)

    @property
    def class_number(self) -> int:
        return class_number(self.value)

    @property
    def forms(self) -> tuple[ReducedForm, ...]:
        return enumerate_forms(self.value)


@dataclass(frozen=True)
class LeadingCoeffCensus:
    disc: int
    a: int
    forms: tuple[ReducedForm, ...]

    @property
    def count(self) -> int:
        """Root count: a = c forms stand for both (a, b) and (a, -b)."""
        return sum(2 if f.a == f.c and f.b > 0 else 1 for f in self.forms)


def leading_coeff_census(disc: int, a: int) -> LeadingCoeffCensus:
    """All forms of T(disc) with first component a, with the structural
    guarantees checked: for D = 1 mod 8 there are exactly two forms with
    a = 2 (|D| >= 23), a = 4 (|D| >= 71), a = 8 (|D| >= 239), and for
    D = 4 mod 16 there is no form with a = 2."""
    disc = _check_disc(disc)
    matches = tuple(f for f in enumerate_forms(disc) if f.a == a)
    # count (a, b) and (a, -b) separately: for a = c only the b > 0 triple
    # is reduced, but it still represents both roots
    count = sum(2 if f.a == f.c and f.b > 0 else 1 for f in matches)
    if disc % 8 == 1:
        thresholds = {2: 23, 4: 71, 8: 239}
        if a in thresholds and abs(disc) >= thresholds[a] and count != 2:
            raise AssertionError(
                f"census invariant broken: D={disc}, a={a}, count={count}"
            )
    if disc % 16 == 4 and a == 2 and count != 0:
        raise AssertionError(
            f"census invariant broken: D={disc} = 4 mod 16 has a=2 forms"
        )
    return LeadingCoeffCensus(disc, a, matches)


def discriminants_in_range(min_abs: int, max_abs: int):
    """Negative discriminants D with min_abs <= |D| <= max_abs, decreasing."""
    for n in range(min_abs, max_abs + 1):
        if (-n) % 4 in (0, 1):
            yield -n


def discriminants_with_class_number(h: int, max_abs: int = 4000) -> list[int]:
    return [d for d in discriminants_in_range(3, max_abs) if class_number(d) == h]

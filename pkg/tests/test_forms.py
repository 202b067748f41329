"""Reduced forms against a brute-force oracle, plus the census invariants."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smforge.forms import (
    InvalidDiscriminant,
    ReducedForm,
    class_number,
    discriminants_in_range,
    discriminants_with_class_number,
    dominant_form,
    enumerate_forms,
    leading_coeff_census,
)

discriminants = st.integers(min_value=3, max_value=2000).map(lambda n: -n) \
    .filter(lambda d: d % 4 in (0, 1))


def brute_force_forms(disc):
    """All reduced triples found by raw triple search."""
    out = []
    bound = math.isqrt(abs(disc)) + 2
    for a in range(1, bound):
        for b in range(-bound, bound + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = ReducedForm(a, b, c)
            if f.is_reduced():
                out.append(f)
    return sorted(out, key=lambda f: (f.a, f.b))


@settings(max_examples=80)
@given(discriminants)
def test_enumeration_matches_brute_force(d):
    assert list(enumerate_forms(d)) == brute_force_forms(d)


@given(discriminants)
def test_every_form_is_reduced_with_right_disc(d):
    for f in enumerate_forms(d):
        assert f.is_reduced()
        assert f.disc == d


@given(discriminants)
def test_dominant_form_unique(d):
    doms = [f for f in enumerate_forms(d) if f.a == 1]
    assert doms == [dominant_form(d)]


@given(discriminants)
def test_mirror_involution(d):
    forms = enumerate_forms(d)
    for f in forms:
        assert f.mirror() in forms
        assert f.mirror().mirror() == f
        assert f.is_real() == (f.mirror() == f)


def test_class_number_oracle_values():
    # sample against classical tables
    known = {-3: 1, -4: 1, -23: 3, -47: 5, -71: 7, -163: 1, -5460: 16}
    for d, h in known.items():
        assert class_number(d) == h


def test_rejects_non_discriminants():
    for bad in (5, 0, -1, -2, -5):
        with pytest.raises(InvalidDiscriminant):
            enumerate_forms(bad)


def test_census_invariants_hold_in_range():
    """For D = 1 mod 8 the a in (2, 4, 8) rows have exactly two forms past
    the documented thresholds; D = 4 mod 16 has no a = 2 form."""
    for d in discriminants_in_range(3, 1500):
        if d % 8 == 1:
            for a in (2, 4, 8):
                leading_coeff_census(d, a)  # raises on violation
        if d % 16 == 4:
            leading_coeff_census(d, 2)


def test_h_equality_characterization():
    """h(4D) = h(D) happens exactly for D = 1 mod 8 (checked empirically
    over odd discriminants with h >= 2 up to 2000)."""
    for d in discriminants_in_range(3, 2000):
        if d % 2 == 0 or class_number(d) < 2:
            continue
        same = class_number(4 * d) == class_number(d)
        assert same == (d % 8 == 1), d


def test_discriminants_with_class_number():
    assert discriminants_with_class_number(1) == [
        -3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163
    ]

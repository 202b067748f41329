"""Number field arithmetic, valuations (including index primes), torsion,
and multiplicative independence."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smforge.modular import class_polynomial
from smforge.numberfield import (
    Inconclusive,
    NumberField,
    build_field,
    element_valuations,
    fixed_pair_power_test,
    is_root_of_unity,
    mult_independent,
    order_valuations,
    p_maximal_order,
    presentation_valuations,
    roots_in_field,
    roots_of_unity,
    usable_prime,
)


@pytest.fixture(scope="module")
def quad_field():
    return build_field([-15])


@pytest.fixture(scope="module")
def hcp_field():
    return build_field([class_polynomial(-15)])


def test_build_field_degrees(quad_field, hcp_field):
    assert quad_field.degree == 2
    assert hcp_field.degree == 2
    assert build_field([1]).degree == 1


def test_minimal_polynomial_root(quad_field):
    theta = quad_field.theta()
    coeffs = quad_field.poly
    acc = quad_field.zero()
    for c in reversed(coeffs):
        acc = acc * theta + quad_field.from_rational(c)
    assert acc.is_zero()


def test_element_inverse(quad_field):
    x = quad_field.element([3, 2])
    assert (x * x.inverse()) == quad_field.one()
    with pytest.raises(ZeroDivisionError):
        quad_field.zero().inverse()


def test_roots_in_field_finds_conjugates(hcp_field):
    poly = class_polynomial(-15)
    roots = roots_in_field(
        hcp_field, list(poly.coefficients), hcp_field.theta_values
    )
    assert len(roots) == 2
    for el, _ in roots:
        acc = hcp_field.zero()
        for c in reversed(poly.coefficients):
            acc = acc * el + hcp_field.from_rational(c)
        assert acc.is_zero()


# ---------------------------------------------------------------------------
# valuations
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def dedekind_field():
    # the classical non-monogenic cubic: 2 is a common index divisor
    return NumberField([-8, -2, -1, 1], [], [], [])


def test_order_valuations_dedekind_oracle(dedekind_field):
    K = dedekind_field
    theta = K.theta()
    vecs = order_valuations(K, 2, [theta, K.from_rational(2), theta + 1])
    assert vecs == [[1, 0, 2], [1, 1, 1], [0, 3, 0]]
    # 503 ramifies (disc = -4 * 503): the etale split must refuse
    with pytest.raises(Inconclusive):
        order_valuations(K, 503, [theta])


@settings(max_examples=20, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9),
       st.integers(-9, 9))
def test_valuation_additivity(quad_field, a0, a1, b0, b1):
    """v_P(xy) = v_P(x) + v_P(y) at every prime over p, for both the
    power-basis and the maximal-order routes."""
    x = quad_field.element([a0, a1])
    y = quad_field.element([b0, b1])
    if x.is_zero() or y.is_zero():
        return
    for p in (2, 3, 7):
        if usable_prime(quad_field, p):
            vx = element_valuations(quad_field, x, p)
            vy = element_valuations(quad_field, y, p)
            vxy = element_valuations(quad_field, x * y, p)
            assert vxy == [u + v for u, v in zip(vx, vy)]
        try:
            vx, vy, vxy = order_valuations(quad_field, p, [x, y, x * y])
        except Inconclusive:
            continue  # ramified prime: the etale split refuses, correctly
        assert vxy == [u + v for u, v in zip(vx, vy)]


def test_valuation_routes_agree(quad_field):
    """Power-basis Hensel valuations match the maximal-order valuations at
    a usable prime, up to prime labeling."""
    x = quad_field.element([5, 3])
    for p in (7, 11, 17):
        if not usable_prime(quad_field, p):
            continue
        a = sorted(element_valuations(quad_field, x, p))
        b = sorted(order_valuations(quad_field, p, [x])[0])
        assert a == b


def test_presentation_valuations_usable(quad_field):
    x = quad_field.element([5, 3])
    for p in (7, 11):
        got = presentation_valuations(quad_field, [x], p)
        if got is not None:
            assert sorted(got[0]) == sorted(
                order_valuations(quad_field, p, [x])[0]
            )


def test_p_maximal_order_enlarges_on_index_prime(dedekind_field):
    order = p_maximal_order(dedekind_field, 2)
    # the maximal order strictly contains Z[theta] at 2: some basis vector
    # has denominator 2
    dens = {
        c.denominator for row in order.basis for c in row
    }
    assert 2 in dens


# ---------------------------------------------------------------------------
# torsion and independence
# ---------------------------------------------------------------------------


def test_roots_of_unity_groups():
    assert len(roots_of_unity(build_field([1]))) == 2
    assert len(roots_of_unity(build_field([-1]))) == 4
    assert len(roots_of_unity(build_field([-3]))) == 6
    assert len(roots_of_unity(build_field([-15]))) == 2


def test_is_root_of_unity(quad_field):
    assert is_root_of_unity(-quad_field.one()) == (True, 2)
    assert is_root_of_unity(quad_field.one()) == (True, 1)
    assert is_root_of_unity(quad_field.theta())[0] is False


def test_independent_rational_pair():
    field = build_field([1])
    res = mult_independent(
        field.from_rational(1728), field.from_rational(287496)
    )
    assert res.status == "independent"


def test_dependent_rational_pair():
    field = build_field([1])
    res = mult_independent(
        field.from_rational(8), field.from_rational(-32)
    )
    assert res.status == "dependent"
    k, l, zeta = res.dependence
    lhs = field.from_rational(8) ** k
    rhs = zeta * field.from_rational(-32) ** l
    assert lhs == rhs
    assert is_root_of_unity(zeta)[0]


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.booleans())
def test_constructed_dependent_pairs(quad_field, a, b, flip):
    """gamma^a vs +-gamma^b must always come back dependent with an exact
    certificate, never independent."""
    gamma = quad_field.element([2, 1])
    alpha = gamma ** a
    beta = gamma ** b
    if flip:
        beta = -beta
    res = mult_independent(alpha, beta)
    assert res.status == "dependent"
    k, l, zeta = res.dependence
    assert (k, l) != (0, 0)
    assert (alpha ** k) == zeta * (beta ** l)


def test_conjugate_moduli_independent(hcp_field):
    poly = class_polynomial(-15)
    roots = roots_in_field(
        hcp_field, list(poly.coefficients), hcp_field.theta_values
    )
    res = mult_independent(roots[0][0], roots[1][0])
    assert res.status == "independent"


def test_fixed_pair_power_test_smoke():
    """The valuation route certifies x^m y^n irrational on a dominant CM
    pair even though every support prime is an index prime."""
    from smforge.elimination import (
        _cached_field,
        _elements_by_form,
        _mult_field_generators,
    )
    from smforge.forms import enumerate_forms

    fld = _cached_field(
        ("test-fixed-pair", -92, -23), _mult_field_generators(-92, -23)
    )
    x = _elements_by_form(fld, -92)[enumerate_forms(-92)[0]]
    y = _elements_by_form(fld, -23)[enumerate_forms(-23)[0]]
    verdict = fixed_pair_power_test(fld, x, y)
    assert verdict.status == "certified"

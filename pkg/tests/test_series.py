from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from galled_census.series import (
    ContractError,
    DomainError,
    MarkPoly,
    MarkedSeries,
    as_integer,
    double_factorial,
    exact,
    one,
    reciprocal_power,
    series_add,
    series_mul,
)

CAPS = (2, 3)

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)
monomial = st.tuples(st.integers(0, 3), st.integers(0, 4))
poly = st.dictionaries(monomial, coeff, max_size=6).map(lambda d: MarkPoly(d, *CAPS))
series = st.lists(poly, min_size=1, max_size=5).map(lambda cs: MarkedSeries(cs, 4, *CAPS))


def test_double_factorial_small_values():
    assert [double_factorial(m) for m in (-1, 1, 3, 5, 7, 9)] == [1, 1, 3, 15, 105, 945]
    for bad in (-3, 0, 4):
        with pytest.raises(DomainError):
            double_factorial(bad)


def test_exact_normalises_integral_fractions():
    assert type(exact(Fraction(6, 3))) is int
    assert exact(Fraction(1, 2)) == Fraction(1, 2)
    assert as_integer(Fraction(10, 2)) == 5
    with pytest.raises(ArithmeticError):
        as_integer(Fraction(1, 3))


def test_caps_drop_high_terms():
    p = MarkPoly({(0, 0): 1, (3, 0): 5, (0, 4): 7}, *CAPS)
    assert p.terms() == {(0, 0): 1}
    q = MarkPoly({(2, 0): 1}, *CAPS)
    assert (q * q) == 0


def test_zero_coefficients_not_stored():
    p = MarkPoly({(1, 1): 2}, *CAPS) - MarkPoly({(1, 1): 2}, *CAPS)
    assert len(p) == 0 and not p


def test_cap_mismatch_is_contract_error():
    with pytest.raises(ContractError):
        MarkPoly({(0, 0): 1}, 1, 1) + MarkPoly({(0, 0): 1}, 2, 2)
    with pytest.raises(ContractError):
        series_mul(one(3, 1, 1), one(3, 2, 2))


@given(poly, poly, poly)
@settings(max_examples=60, deadline=None)
def test_poly_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(series, series, series)
@settings(max_examples=40, deadline=None)
def test_series_ring_laws(a, b, c):
    assert series_add(a, b) == series_add(b, a)
    assert series_mul(a, b) == series_mul(b, a)
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))
    assert series_mul(a, series_add(b, c)) == series_add(series_mul(a, b), series_mul(a, c))
    assert series_mul(a, one(4, *CAPS)) == a


def test_product_order_is_minimum():
    a = MarkedSeries([1, 1, 1], 2)
    b = MarkedSeries([1, 1, 1, 1, 1], 4)
    assert series_mul(a, b).order == 2


def test_reciprocal_power_scalar_example():
    m = MarkedSeries([0, 3, 40], 2)
    r = reciprocal_power(m, 3, 2)
    # 1 + 3(3z + 40z^2) + 6(3z)^2 = 1 + 9z + 174z^2
    assert [r[d][(0, 0)] for d in range(3)] == [1, 9, 174]


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=6), st.integers(1, 4))
@settings(max_examples=50, deadline=None)
def test_reciprocal_power_inverts(tail, n):
    order = len(tail)
    m = MarkedSeries([0] + tail, order)
    inv = reciprocal_power(m, n, order)
    base = MarkedSeries([1] + [-t for t in tail], order)
    prod = inv
    for _ in range(n):
        prod = series_mul(prod, base)
    assert prod == one(order)


def test_reciprocal_power_rejects_constant_term():
    with pytest.raises(ContractError):
        reciprocal_power(MarkedSeries([1, 1], 1), 2, 1)
    with pytest.raises(DomainError):
        reciprocal_power(MarkedSeries([0, 1], 1), 0, 1)


def test_marked_reciprocal_tracks_marks():
    u = MarkPoly({(1, 0): 1}, 1, 1)
    w = MarkPoly({(0, 1): 1}, 1, 1)
    m = MarkedSeries([MarkPoly({}, 1, 1), u + w], 2, 1, 1)
    r = reciprocal_power(m, 1, 2)
    # (u+w)^2 truncated at degree 1 in each mark leaves 2uw
    assert r[2].terms() == {(1, 1): 2}


def test_evaluate():
    p = MarkPoly({(1, 0): 2, (0, 1): 3, (1, 1): Fraction(1, 2)}, 1, 1)
    assert p.evaluate(2, 3) == 4 + 9 + 3

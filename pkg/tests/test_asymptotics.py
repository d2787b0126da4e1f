import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from galled_census import build_n_table, galled_totals, log_asym, poisson_pmf
from galled_census.asymptotics import (
    TruncationError,
    laurent_coeff,
    limit_moments,
    limit_pmf_table,
    limit_pmf_xy,
    limit_pmf_xy_rational,
    limit_x_marginal,
    log_exact,
)
from galled_census.one_component import one_component_row
from galled_census.series import DomainError


def test_laurent_coefficients_by_hand():
    # j = 1: p = (1, 2, 3); m = 1 keeps l = 1, 2 -> 2 + 3/2
    assert laurent_coeff(1, 1) == Fraction(7, 2)
    assert laurent_coeff(0, 0) == 1
    # j = 0 leaves only p_0 = 1, so the coefficient is 1 / (2^-m (-m)!)
    for m in range(0, -6, -1):
        assert laurent_coeff(0, m) == Fraction(1, 2 ** (-m) * math.factorial(-m))


def test_pmf_at_origin():
    assert limit_pmf_xy(0, 0) == pytest.approx(math.exp(-7 / 8), rel=1e-15)
    assert f"{limit_pmf_xy(0, 0):.6g}" == "0.416862"


def test_pmf_rational_part():
    assert limit_pmf_xy_rational(1, 0) == laurent_coeff(1, 1) / 16


def test_j0_row_sums_to_poisson_mass():
    row = sum(limit_pmf_xy(0, k) for k in range(0, 40))
    assert row == pytest.approx(math.exp(-3 / 8), rel=1e-12)


@given(st.integers(0, 10))
@settings(max_examples=11, deadline=None)
def test_x_marginal_is_poisson(j):
    assert limit_x_marginal(j) == pytest.approx(poisson_pmf(3 / 8, j), abs=1e-12)


def test_table_normalisation_and_moments():
    table = limit_pmf_table(40, 40)
    assert math.fsum(table.values()) == pytest.approx(1, abs=1e-12)
    mean, var = limit_moments()
    assert mean == pytest.approx(0.375, abs=1e-9)
    assert var == pytest.approx(0.75, abs=1e-9)


def test_short_truncation_raises():
    with pytest.raises(TruncationError):
        limit_moments(10, 10)


def test_poisson_domain():
    with pytest.raises(DomainError):
        poisson_pmf(0, 1)


def test_log_exact_handles_huge_integers():
    assert log_exact(10 ** 400) == pytest.approx(400 * math.log(10), rel=1e-15)
    with pytest.raises(DomainError):
        log_exact(0)


def test_family_constants_differ_as_expected():
    gap = log_asym("galled", 50).ln_value - log_asym("one_component", 50).ln_value
    assert gap == pytest.approx(3 / 8, abs=1e-12)
    gap = log_asym("dup", 50).ln_value - log_asym("fdu", 50).ln_value
    assert gap == pytest.approx(1 / 2, abs=1e-12)


def test_estimates_approach_exact_counts():
    table = build_n_table(201)
    gaps = []
    for n in (25, 50, 100, 200):
        exact = sum(one_component_row(n, table))
        gaps.append(abs(log_exact(exact) - log_asym("one_component", n).ln_value))
    assert gaps == sorted(gaps, reverse=True)
    totals = galled_totals(60, table)
    assert abs(log_exact(totals[60]) - log_asym("galled", 60).ln_value) < abs(
        log_exact(totals[30]) - log_asym("galled", 30).ln_value
    )


def test_near_max_estimate():
    table = build_n_table(201)
    for k in (0, 1, 2):
        gaps = [
            abs(log_exact(one_component_row(n, table)[n - k])
                - log_asym("one_component_near_max", n, k).ln_value)
            for n in (50, 100, 200)
        ]
        assert gaps == sorted(gaps, reverse=True)


def test_bad_family_and_arguments():
    with pytest.raises(DomainError):
        log_asym("trees", 10)
    with pytest.raises(DomainError):
        log_asym("galled", 1)
    with pytest.raises(DomainError):
        log_asym("galled", 10, k=1)
    with pytest.raises(DomainError):
        log_asym("one_component_near_max", 10)

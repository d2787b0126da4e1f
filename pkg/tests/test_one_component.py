from fractions import Fraction
from functools import lru_cache
from math import comb, prod

import pytest

from galled_census import build_n_table, enumerate_dup_trees, verify_bounds
from galled_census.one_component import NTable, one_component_count, one_component_row
from galled_census.reference import KNOWN_MISPRINTS, N_TABLE
from galled_census.series import ContractError, DomainError


def dfact(m):
    return prod(range(m, 0, -2)) if m > 0 else 1


@lru_cache(maxsize=None)
def naive_n(n, k):
    """Top-down transcription of the recurrence, with rationals."""
    if k == 0:
        return Fraction(dfact(2 * n - 5))
    if k == 1:
        return Fraction((n - 2) * dfact(2 * n - 5))
    total = (n + k - 3) * naive_n(n, k - 1) + (k - 1) * naive_n(n, k - 2)
    for d in range(1, k):
        total += Fraction(1, 2) * comb(k - 1, d) * dfact(2 * d - 1) * (
            naive_n(n - d, k - 1 - d) - naive_n(n - d + 1, k - 1 - d)
        )
    return total


def test_matches_naive_transcription():
    table = build_n_table(18)
    for n in range(2, 19):
        for k in range(n):
            assert table[n, k] == naive_n(n, k)


def test_initial_columns():
    table = build_n_table(12)
    for n in range(2, 13):
        assert table[n, 0] == dfact(2 * n - 5)
        assert table[n, 1] == (n - 2) * dfact(2 * n - 5)


def test_published_cells_except_known_misprint():
    table = build_n_table(11)
    for n, row in N_TABLE.items():
        for k, value in enumerate(row):
            expected = KNOWN_MISPRINTS.get(("N", (n, k)), value)
            assert table[n, k] == expected, (n, k)


def test_misprinted_cell_is_forced_by_neighbours():
    # the two published cells computed from N[9, 7] agree with the corrected value
    values = {key: v for key, v in build_n_table(11).values.items()}
    assert values[(9, 8)] == N_TABLE[9][8]
    assert values[(10, 9)] == N_TABLE[10][9]
    values[(9, 7)] = N_TABLE[9][7]
    from galled_census.one_component import _recurrence_step
    lead = (9 + 8 - 3) * values[(9, 7)] + 7 * values[(9, 6)]
    assert _recurrence_step(values, 9, 8, lead) != N_TABLE[9][8]


def test_one_component_small_counts_by_hand():
    table = build_n_table(5)
    # n = 1: a single leaf; n = 2: cherry (1), one reticulation (2*1), two (3)
    assert one_component_row(1, table) == [1, 0]
    assert one_component_row(2, table) == [1, 2, 3]


def test_one_component_matches_dup_tree_enumeration():
    table = build_n_table(5)
    for n in range(1, 5):
        free = enumerate_dup_trees(n, twin_cherry_free=True)
        assert one_component_row(n, table) == [free[k] for k in range(n + 1)]


def test_table_indexing_is_strict():
    table = build_n_table(5)
    with pytest.raises(KeyError):
        table[5, 5]
    with pytest.raises(KeyError):
        table[6, 0]
    assert table.get(1, 0) == 0 and table.get(4, 4) == 0
    with pytest.raises(DomainError):
        build_n_table(1)
    with pytest.raises(DomainError):
        one_component_count(3, 4, table)
    with pytest.raises(ContractError):
        one_component_count(5, 0, table)


def test_verify_bounds_passes_and_counts_instances():
    report = verify_bounds(build_n_table(21), 20)
    assert report.passed and report.counterexample is None
    assert set(report.counts) == {"lemma3", "lemma4", "lemma5", "cor3_i", "cor3_increasing", "cor3_ii", "cor4"}
    assert report.checked == sum(report.counts.values())


def test_cor3_i_holds_at_reported_example():
    # 1-GN[4,2] >= (n-k)(n+k-1)/(k+1) * 1-GN[4,1] at n = 4, k = 1
    row = one_component_row(4, build_n_table(5))
    assert row[1:3] == [4 * 45, 6 * 189]
    assert row[2] == 1134 and 3 * 4 * row[1] // 2 == 1080


def test_verify_bounds_reports_counterexample():
    good = build_n_table(8)
    values = dict(good.values)
    values[(6, 3)] *= 10
    report = verify_bounds(NTable(8, values), 7)
    assert not report.passed
    assert report.counterexample is not None

"""One-component galled networks.

``N[n, k]`` counts one-component galled networks on ``n - 1`` leaves whose
``k`` reticulation children carry the labels ``1..k``.  The number of
one-component networks with ``n`` leaves and ``k`` reticulations is
``C(n, k) * N[n + 1, k]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Optional, Tuple

from .series import DomainError, ContractError, double_factorial


@dataclass(frozen=True)
class NTable:
    """Table of ``N[n, k]`` for ``2 <= n <= n_max`` and ``0 <= k <= n - 1``."""

    n_max: int
    values: Dict[Tuple[int, int], int] = field(repr=False)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        n, k = key
        if not (2 <= n <= self.n_max and 0 <= k <= n - 1):
            raise KeyError(f"N[{n}, {k}] outside table (n_max={self.n_max})")
        return self.values[key]

    def get(self, n: int, k: int) -> int:
        """Like indexing, but 0 outside the combinatorial range (n < 2 or k > n - 1)."""
        if k < 0:
            raise KeyError(f"negative k={k}")
        if n < 2 or k > n - 1:
            return 0
        if n > self.n_max:
            raise KeyError(f"N[{n}, {k}] needs n_max >= {n}, table has {self.n_max}")
        return self.values[(n, k)]

    def row(self, n: int) -> list[int]:
        return [self[n, k] for k in range(n)]


@lru_cache(maxsize=None)
def _half_sum_coeffs(k: int) -> Tuple[int, ...]:
    """C(k-1, d) * (2d-1)!! for d = 1..k-1."""
    out = []
    dfact = 1
    for d in range(1, k):
        dfact *= 2 * d - 1
        out.append(comb(k - 1, d) * dfact)
    return tuple(out)


def _recurrence_step(values: Dict[Tuple[int, int], int], n: int, k: int, start: int,
                     name: str = "N") -> int:
    """Shared body of the N and B recurrences for ``2 <= k <= n - 1``.

    ``start`` is the already-computed leading part; the half-sum over ``d``
    is accumulated as an integer and must be even.
    """
    try:
        twice = sum(
            c * (values[(n - d, k - 1 - d)] - values[(n - d + 1, k - 1 - d)])
            for d, c in enumerate(_half_sum_coeffs(k), start=1)
        )
    except KeyError as exc:
        raise ContractError(f"recurrence for {name}[{n}, {k}] touched missing entry {exc}") from None
    if twice % 2:
        raise ArithmeticError(f"non-integral recurrence value {name}[{n}, {k}]")
    return start + twice // 2


def build_n_table(n_max: int) -> NTable:
    """Fill N[n, k] for 2 <= n <= n_max by increasing n, then k."""
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    values: Dict[Tuple[int, int], int] = {}
    for n in range(2, n_max + 1):
        base = double_factorial(2 * n - 5)
        values[(n, 0)] = base
        values[(n, 1)] = (n - 2) * base
        for k in range(2, n):
            lead = (n + k - 3) * values[(n, k - 1)] + (k - 1) * values[(n, k - 2)]
            values[(n, k)] = _recurrence_step(values, n, k, lead)
    return NTable(n_max, values)


def _need(table: NTable, n: int) -> None:
    if table.n_max < n:
        raise ContractError(f"table built to {table.n_max}, need {n}")


def one_component_count(n: int, k: int, table: NTable) -> int:
    """Number of one-component galled networks with ``n`` leaves and ``k`` reticulations."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 0 <= k <= n:
        raise DomainError(f"k must lie in 0..{n}, got {k}")
    _need(table, n + 1)
    return comb(n, k) * table[n + 1, k]


def one_component_row(n: int, table: NTable) -> list[int]:
    return [one_component_count(n, k, table) for k in range(n + 1)]


def one_component_total(n: int, table: NTable) -> int:
    return sum(one_component_row(n, table))


@dataclass
class BoundsReport:
    checked: int
    passed: bool
    counterexample: Optional[Tuple[str, int, int]] = None
    counts: Dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


def _bound_checks(table: NTable, n_max: int):
    """Yield (name, n, k, holds) for every inequality instance up to n_max."""
    N = table.get
    for n in range(3, n_max + 2):
        for k in range(2, n):
            # lower bound from N[n,k-1], N[n,k-2]
            yield "lemma3", n, k, 2 * N(n, k) >= 2 * (n + k - 3) * N(n, k - 1) + (k - 1) * N(n, k - 2)
            yield "lemma4", n, k, (
                2 * N(n, k)
                <= 2 * (n + k - 3) * N(n, k - 1) + (k - 1) * N(n, k - 2) + (k - 1) * N(n - 1, k - 2)
            )
        for k in range(0, n - 1):
            yield "lemma5", n, k, 2 * N(n, k) >= (2 * n + 2 * k - 5) * N(n - 1, k)

    one = {n: one_component_row(n, table) for n in range(1, n_max + 1)}
    for n in range(1, n_max + 1):
        row = one[n]
        for k in range(0, n):
            yield "cor3_i", n, k, (k + 1) * row[k + 1] >= (n - k) * (n + k - 1) * row[k]
            if n >= 2:
                yield "cor3_increasing", n, k, row[k + 1] > row[k]
        if n >= 2:
            for k in range(0, n + 1):
                yield "cor3_ii", n, k, (
                    row[k] * factorial(2 * n - 2)
                    <= comb(n, k) * factorial(n + k - 2) * row[n]
                )
            prev = one[n - 1]
            for k in range(0, n):
                prev_k = prev[k] if k <= n - 1 else 0
                yield "cor4", n, k, 2 * (n - k) * row[k] >= n * (2 * n + 2 * k - 3) * prev_k


def verify_bounds(table: NTable, n_max: Optional[int] = None) -> BoundsReport:
    """Check the N-table and 1-GN inequalities on every valid (n, k) up to ``n_max``.

    ``n_max`` refers to the number of leaves for the 1-GN checks, so the
    table must reach ``n_max + 1``.
    """
    if n_max is None:
        n_max = table.n_max - 1
    _need(table, n_max + 1)
    report = BoundsReport(checked=0, passed=True)
    for name, n, k, ok in _bound_checks(table, n_max):
        report.checked += 1
        report.counts[name] = report.counts.get(name, 0) + 1
        if not ok and report.passed:
            report.passed = False
            report.counterexample = (name, n, k)
    return report


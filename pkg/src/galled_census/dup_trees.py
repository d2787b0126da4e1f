"""Dup-trees: binary leaf-labelled trees where each of n labels appears once or twice.

Twin-cherry-free dup-trees (no cherry with two equal labels) are in bijection
with one-component galled networks, so their counts are read off the N table.
All dup-trees are counted with a sibling recurrence ``B[n, k]`` and, as a
cross-check, from the one-component counts by replacing non-repeated leaves
with twin cherries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Dict, FrozenSet, Optional, Tuple

from .one_component import NTable, _recurrence_step, build_n_table, one_component_count, one_component_total
from .galled import ResourceGuardError
from .series import DomainError, double_factorial

DUP_ORACLE_MAX_N = 4


@dataclass(frozen=True)
class BTable:
    n_max: int
    values: Dict[Tuple[int, int], int] = field(repr=False)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        n, k = key
        if not (2 <= n <= self.n_max and 0 <= k <= n - 1):
            raise DomainError(f"B[{n}, {k}] outside table (n_max={self.n_max})")
        return self.values[key]


def build_b_table(n_max: int) -> BTable:
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    values: Dict[Tuple[int, int], int] = {}
    for n in range(2, n_max + 1):
        base = double_factorial(2 * n - 5)
        values[(n, 0)] = base
        values[(n, 1)] = (n - 1) * base
        for k in range(2, n):
            values[(n, k)] = _recurrence_step(values, n, k, (n + k - 2) * values[(n, k - 1)], "B")
    return BTable(n_max, values)


def b_value(n: int, k: int, table: Optional[BTable] = None) -> int:
    table = table or build_b_table(n)
    return table[n, k]


def dup_total(n: int, table: Optional[BTable] = None) -> int:
    """DU_n = sum_k C(n, k) B[n + 1, k]."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    table = table or build_b_table(n + 1)
    return sum(comb(n, k) * table[n + 1, k] for k in range(n + 1))


def dup_total_via_relation(n: int, table: Optional[NTable] = None) -> int:
    """DU_n = sum_k 2^(n-k) 1-GN[n, k]."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    table = table or build_n_table(n + 1)
    return sum(2 ** (n - k) * one_component_count(n, k, table) for k in range(n + 1))


def dup_by_repeats(n: int, k: int, table: Optional[NTable] = None) -> int:
    """Dup-trees with n distinct labels, exactly k of them used twice."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 0 <= k <= n:
        raise DomainError(f"k must lie in 0..{n}, got {k}")
    table = table or build_n_table(n + 1)
    return sum(comb(n - l, k - l) * one_component_count(n, l, table) for l in range(k + 1))


def fdu_total(n: int, table: Optional[NTable] = None) -> int:
    table = table or build_n_table(n + 1)
    return one_component_total(n, table)


def fdu_by_repeats(n: int, k: int, table: Optional[NTable] = None) -> int:
    table = table or build_n_table(n + 1)
    return one_component_count(n, k, table)


# ---------------------------------------------------------------------------
# enumeration oracle

# canonical encoding: leaf -> (0, label); internal -> (1, smaller child, larger child)


@lru_cache(maxsize=None)
def _binary_trees(multiset: Tuple[int, ...]) -> FrozenSet[tuple]:
    if len(multiset) == 1:
        return frozenset({(0, multiset[0])})
    out = set()
    size = len(multiset)
    seen = set()
    for r in range(1, size // 2 + 1):
        for idx in combinations(range(size), r):
            left = tuple(multiset[i] for i in idx)
            right = tuple(multiset[i] for i in range(size) if i not in idx)
            if (left, right) in seen:
                continue
            seen.add((left, right))
            for a, b in product(_binary_trees(left), _binary_trees(right)):
                out.add((1, a, b) if a <= b else (1, b, a))
    return frozenset(out)


def _has_twin_cherry(tree: tuple) -> bool:
    if tree[0] == 0:
        return False
    _, a, b = tree
    if a[0] == 0 and b[0] == 0 and a[1] == b[1]:
        return True
    return _has_twin_cherry(a) or _has_twin_cherry(b)


def enumerate_dup_trees(n: int, twin_cherry_free: bool = False) -> Dict[int, int]:
    """Count dup-trees on labels 1..n by number of repeated labels, by explicit generation."""
    if n > DUP_ORACLE_MAX_N:
        raise ResourceGuardError(f"dup-tree enumeration refused for n={n} > {DUP_ORACLE_MAX_N}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    counts = {}
    for k in range(n + 1):
        total = 0
        for repeated in combinations(range(1, n + 1), k):
            multiset = tuple(sorted(list(range(1, n + 1)) + list(repeated)))
            trees = _binary_trees(multiset)
            if twin_cherry_free:
                total += sum(1 for t in trees if not _has_twin_cherry(t))
            else:
                total += len(trees)
        counts[k] = total
    return counts

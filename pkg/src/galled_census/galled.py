"""Galled networks: exact counts by reticulations, bounds, and a tree oracle.

Every galled network decomposes into a multifurcating phylogenetic tree whose
internal nodes are replaced by one-component galled networks.  An internal
node with ``a`` leaf children and ``b`` subtree children carries the weight
polynomial

    W(a, b; w) = sum_j C(a, j - b) * N[a + b + 1, j] * w**j,

and each subtree child sits below a reticulation, contributing one inner
reticulation (mark ``u``).  Summed over trees this gives the marked EGF
``H(z, u, w)``, the fixed point of

    H = sum_{a + b >= 2} W(a, b; w) * z**a / a! * (u H)**b / b!.

Because ``H`` has valuation 2, the coefficient of ``z**n`` only depends on
lower coefficients, so the fixed point is solved one degree at a time in
labelled (``n! [z**n]``) form with plain integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Tuple

from .one_component import NTable, build_n_table, one_component_total
from .series import (
    ContractError,
    DomainError,
    MarkedSeries,
    as_integer,
    double_factorial,
    reciprocal_power,
)

Cell = Tuple[int, int]  # (k reticulations, j inner reticulations)
Poly = Dict[Cell, int]  # sparse w/u polynomial keyed by (w-degree, u-degree)

BRUTE_FORCE_MAX_N = 8


class ResourceGuardError(RuntimeError):
    """Refusal to run an enumeration that would be too large."""


@dataclass(frozen=True)
class GalledJointTable:
    """Counts ``GN[n, k, j]`` keyed by ``(k, j)`` for a fixed number of leaves ``n``."""

    n: int
    counts: Dict[Cell, int] = field(repr=False)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, cell: Cell) -> int:
        return self.counts.get(cell, 0)

    def by_retic(self) -> Dict[int, int]:
        """``GN[n, k]``, summed over the inner-reticulation count."""
        out: Dict[int, int] = {}
        for (k, j), c in self.counts.items():
            out[k] = out.get(k, 0) + c
        return dict(sorted(out.items()))

    def by_inner(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (k, j), c in self.counts.items():
            out[j] = out.get(j, 0) + c
        return dict(sorted(out.items()))

    def tree_node_count(self, k: int) -> int:
        # every phylogenetic network satisfies n + k = t + 1
        return self.n + k - 1

    def cells(self) -> List[Tuple[int, int, int]]:
        return [(k, j, c) for (k, j), c in sorted(self.counts.items())]


def _need(table: NTable, n: int) -> None:
    if table.n_max < n:
        raise ContractError(f"N table built to {table.n_max}, need {n}")


def node_weight(a: int, b: int, table: NTable) -> Dict[int, int]:
    """W(a, b; w) as ``{j: coefficient}`` for a node with a leaf and b subtree children."""
    if a + b < 2:
        raise DomainError("an internal node needs at least two children")
    c = a + b
    return {
        j: comb(a, j - b) * table[c + 1, j]
        for j in range(b, c + 1)
        if table[c + 1, j]
    }


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (k1, j1), c1 in p.items():
        for (k2, j2), c2 in q.items():
            key = (k1 + k2, j1 + j2)
            out[key] = out.get(key, 0) + c1 * c2
    return out


def _add_into(acc: Poly, p: Poly, scale: int = 1) -> None:
    for key, c in p.items():
        acc[key] = acc.get(key, 0) + scale * c


def _joint_polys(n: int, table: NTable) -> List[Poly]:
    """Labelled coefficients ``G[m] = m! [z**m] H`` for m = 0..n (G[0] = G[1] = 0)."""
    _need(table, n + 1)
    G: List[Poly] = [{} for _ in range(n + 1)]
    # F[b][m]: b unordered subtrees covering m labelled leaves, each marked by u
    F: List[List[Poly]] = [[{} for _ in range(n + 1)] for _ in range(n // 2 + 1)]
    F[0][0] = {(0, 0): 1}
    weights: Dict[Tuple[int, int], Poly] = {}

    for m in range(2, n + 1):
        # forests on m leaves with b >= 1 trees only use G[s], s < m, except b = 1, s = m
        for b in range(2, m // 2 + 1):
            acc: Poly = {}
            for s in range(2, m - 2 * (b - 1) + 1):
                rest = F[b - 1][m - s]
                if G[s] and rest:
                    _add_into(acc, _mul(G[s], rest), comb(m - 1, s - 1))
            F[b][m] = {(k, j + 1): c for (k, j), c in acc.items()}
        acc = {}
        for b in range(0, m // 2 + 1):
            for a in range(max(0, 2 - b), m - 2 * b + 1):
                forest = F[b][m - a]
                if not forest:
                    continue
                key = (a, b)
                if key not in weights:
                    weights[key] = {(k, 0): c for k, c in node_weight(a, b, table).items()}
                _add_into(acc, _mul(weights[key], forest), comb(m, a))
        G[m] = {key: c for key, c in acc.items() if c}
        F[1][m] = {(k, j + 1): c for (k, j), c in G[m].items()}
    return G


def galled_joint(n: int, table: Optional[NTable] = None) -> GalledJointTable:
    """Exact ``GN[n, k, j]`` for all reticulation counts k and inner counts j."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n == 1:
        return GalledJointTable(1, {(0, 0): 1})
    table = table or build_n_table(n + 1)
    G = _joint_polys(n, table)
    counts = G[n]
    for (k, j) in counts:
        if k > 2 * n - 2 or j > n - 2:
            raise ArithmeticError(f"cell {(k, j)} violates the reticulation bounds")
    return GalledJointTable(n, dict(sorted(counts.items())))


def galled_totals(n_max: int, table: Optional[NTable] = None) -> List[int]:
    """``[GN_0, GN_1, ..., GN_n_max]`` via the same recursion with marks set to 1."""
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    table = table or build_n_table(n_max + 1)
    _need(table, n_max + 1)
    G = [0] * (n_max + 1)
    F = [[0] * (n_max + 1) for _ in range(n_max // 2 + 1)]
    F[0][0] = 1
    weight_sum: Dict[Tuple[int, int], int] = {}
    for m in range(2, n_max + 1):
        for b in range(2, m // 2 + 1):
            F[b][m] = sum(
                comb(m - 1, s - 1) * G[s] * F[b - 1][m - s]
                for s in range(2, m - 2 * (b - 1) + 1)
            )
        total = 0
        for b in range(0, m // 2 + 1):
            for a in range(max(0, 2 - b), m - 2 * b + 1):
                if not F[b][m - a]:
                    continue
                if (a, b) not in weight_sum:
                    weight_sum[(a, b)] = sum(node_weight(a, b, table).values())
                total += comb(m, a) * weight_sum[(a, b)] * F[b][m - a]
        G[m] = total
        F[1][m] = total
    G[1] = 1
    return G


def galled_total(n: int, table: Optional[NTable] = None) -> int:
    """Number of galled networks with ``n`` leaves."""
    return galled_totals(n, table)[n]


def galled_max_retic(n: int) -> int:
    """GN[n, 2n-2]: binary trees with every internal node replaced by N[3, 2] = 3 networks."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    return double_factorial(2 * n - 3) * 3 ** (n - 1)


# ---------------------------------------------------------------------------
# brute-force tree oracle


Tree = object  # a leaf label (int) or a tuple of child trees


def _set_partitions(items: Tuple[int, ...]) -> Iterator[List[Tuple[int, ...]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [(first,)] + part
        for i, block in enumerate(part):
            yield part[:i] + [(first,) + block] + part[i + 1:]


@lru_cache(maxsize=None)
def _trees_on(labels: Tuple[int, ...]) -> Tuple[Tree, ...]:
    if len(labels) == 1:
        return (labels[0],)
    out = []
    for blocks in _set_partitions(labels):
        if len(blocks) < 2:
            continue
        choices: List[Tuple[Tree, ...]] = [_trees_on(block) for block in blocks]
        stack: List[Tuple[Tree, ...]] = [()]
        for options in choices:
            stack = [prefix + (t,) for prefix in stack for t in options]
        out.extend(stack)
    return tuple(out)


def phylogenetic_trees(n: int) -> Tuple[Tree, ...]:
    """All multifurcating leaf-labelled trees on ``1..n`` (nested tuples)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return _trees_on(tuple(range(1, n + 1)))


def _tree_weight(tree: Tree, table: NTable) -> Poly:
    """Product of node weights; keyed (k, j) with j = number of subtree children."""
    poly: Poly = {(0, 0): 1}
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, int):
            continue
        b = sum(1 for child in node if not isinstance(child, int))
        a = len(node) - b
        w = {(k, b): c for k, c in node_weight(a, b, table).items()}
        poly = _mul(poly, w)
        stack.extend(child for child in node if not isinstance(child, int))
    return poly


def brute_force_galled(n: int, table: Optional[NTable] = None) -> GalledJointTable:
    """Sum the node-weight product over every phylogenetic tree on ``n`` leaves."""
    if n > BRUTE_FORCE_MAX_N:
        raise ResourceGuardError(f"brute force refused for n={n} > {BRUTE_FORCE_MAX_N}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n == 1:
        return GalledJointTable(1, {(0, 0): 1})
    table = table or build_n_table(n + 1)
    _need(table, n + 1)
    counts: Poly = {}
    for tree in phylogenetic_trees(n):
        _add_into(counts, _tree_weight(tree, table))
    _trees_on.cache_clear()
    return GalledJointTable(n, dict(sorted((k, c) for k, c in counts.items() if c)))


# ---------------------------------------------------------------------------
# bounds


def lower_bound_L(n: int, table: Optional[NTable] = None) -> int:
    """Networks whose tree is a root with some leaf children and some cherries."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    table = table or build_n_table(n + 1)
    _need(table, n + 1)
    total = 0
    for j in range(n // 2 + 1):
        inner = sum(comb(n - 2 * j, l) * table.get(n - j + 1, l + j) for l in range(n - 2 * j + 1))
        total += comb(n, 2 * j) * factorial(2 * j) * 3 ** j // factorial(j) * inner
    return total


def _cherry_poly(j: int) -> List[int]:
    """Coefficients of (1 + 2w + 3w^2)**j."""
    poly = [1]
    for _ in range(j):
        nxt = [0] * (len(poly) + 2)
        for i, c in enumerate(poly):
            nxt[i] += c
            nxt[i + 1] += 2 * c
            nxt[i + 2] += 3 * c
        poly = nxt
    return poly


def lower_bound_L_joint(n: int, k: int, j: int, table: Optional[NTable] = None) -> int:
    """Refinement of :func:`lower_bound_L` by reticulations ``k`` and cherries ``j``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if j < 0 or k < 0 or 2 * j > n:
        return 0
    table = table or build_n_table(n + 1)
    _need(table, n + 1)
    shapes = comb(n, 2 * j) * factorial(2 * j) // (2 ** j * factorial(j))
    cherries = _cherry_poly(j)
    total = 0
    for l in range(n - 2 * j + 1):
        rest = k - j - l
        if 0 <= rest < len(cherries):
            total += cherries[rest] * comb(n - 2 * j, l) * table.get(n - j + 1, j + l)
    return shapes * total


def upper_bound_U(n: int, table: Optional[NTable] = None) -> int:
    """U_n = (n-1)! [z^(n-1)] (1 - M(z))^(-n) with M(z) = sum 1-GN_(l+1)/(l+1)! z^l."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n == 1:
        return 1
    table = table or build_n_table(n + 1)
    _need(table, n)
    order = n - 1
    m = MarkedSeries(
        [0] + [Fraction(one_component_total(l + 1, table), factorial(l + 1)) for l in range(1, order + 1)],
        order,
    )
    coeff = reciprocal_power(m, n, order)[order][(0, 0)]
    return as_integer(factorial(n - 1) * coeff)


def upper_bound_U_by_trees(n: int, table: Optional[NTable] = None) -> int:
    """U_n summed directly over trees: product of 1-GN_c(v) over internal nodes."""
    if n > BRUTE_FORCE_MAX_N:
        raise ResourceGuardError(f"tree enumeration refused for n={n} > {BRUTE_FORCE_MAX_N}")
    table = table or build_n_table(n + 1)
    total = 0
    for tree in phylogenetic_trees(n):
        prod = 1
        stack = [tree]
        while stack:
            node = stack.pop()
            if isinstance(node, int):
                continue
            prod *= one_component_total(len(node), table)
            stack.extend(node)
        total += prod
    _trees_on.cache_clear()
    return total

"""Exact distributions of reticulation statistics under the uniform model."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

from . import asymptotics as asy
from .dup_trees import build_b_table, dup_by_repeats, dup_total
from .galled import GalledJointTable, galled_joint, galled_totals
from .one_component import NTable, build_n_table, one_component_row

Outcome = Hashable


@dataclass(frozen=True)
class Pmf:
    """Finitely supported pmf with exact weights ``count / total``.

    ``counts`` keeps the unreduced integer numerators so exports can show
    ``count,total`` pairs.
    """

    counts: Tuple[Tuple[Outcome, int], ...]
    total: int

    def __post_init__(self):
        if self.total <= 0:
            raise ValueError("pmf total must be positive")
        if sum(c for _, c in self.counts) != self.total:
            raise ValueError("pmf counts do not sum to the total")

    @classmethod
    def from_counts(cls, counts: Mapping[Outcome, int]) -> "Pmf":
        items = tuple(sorted(counts.items()))
        return cls(items, sum(c for _, c in items))

    @property
    def support(self) -> List[Outcome]:
        return [o for o, _ in self.counts]

    @property
    def weights(self) -> Dict[Outcome, Fraction]:
        return {o: Fraction(c, self.total) for o, c in self.counts}

    @property
    def probs(self) -> Dict[Outcome, float]:
        return {o: c / self.total for o, c in self.counts}

    def __getitem__(self, outcome: Outcome) -> Fraction:
        for o, c in self.counts:
            if o == outcome:
                return Fraction(c, self.total)
        return Fraction(0)

    def marginal(self, axis: int) -> "Pmf":
        out: Dict[Outcome, int] = {}
        for o, c in self.counts:
            out[o[axis]] = out.get(o[axis], 0) + c
        return Pmf.from_counts(out)

    def conditional(self, axis: int, value) -> "Pmf":
        """Condition on ``outcome[axis] == value`` and keep the other coordinate."""
        other = 1 - axis
        return Pmf.from_counts({o[other]: c for o, c in self.counts if o[axis] == value and c})


def dist_one_component(n: int, table: Optional[NTable] = None) -> Pmf:
    """n - Z_n for a uniform one-component galled network on n leaves."""
    table = table or build_n_table(n + 1)
    row = one_component_row(n, table)
    return Pmf.from_counts({k: row[n - k] for k in range(n + 1)})


def dist_galled_joint(n: int, joint: Optional[GalledJointTable] = None,
                      table: Optional[NTable] = None) -> Pmf:
    """(X_n, n - Y_n): inner reticulations and n minus reticulations."""
    joint = joint or galled_joint(n, table)
    return Pmf.from_counts({(j, n - k): c for (k, j), c in joint.counts.items()})


def dist_dup_repeats(n: int, table: Optional[NTable] = None) -> Pmf:
    """n - R_n for a uniform dup-tree with n distinct labels."""
    table = table or build_n_table(n + 1)
    return Pmf.from_counts({k: dup_by_repeats(n, n - k, table) for k in range(n + 1)})


def _as_probs(p) -> Dict[Outcome, float]:
    if isinstance(p, Pmf):
        return p.probs
    return dict(p)


def tv_distance(p: Union[Pmf, Mapping[Outcome, float]], q: Union[Pmf, Mapping[Outcome, float]]) -> float:
    """Half the L1 distance; outcomes missing from one side count as 0.

    Mass not listed by a float mapping (a truncated reference law) is taken
    to lie outside both supports.
    """
    pp, qq = _as_probs(p), _as_probs(q)
    diffs = [abs(pp.get(o, 0.0) - qq.get(o, 0.0)) for o in set(pp) | set(qq)]
    unlisted = max(0.0, 1 - math.fsum(pp.values())) + max(0.0, 1 - math.fsum(qq.values()))
    return 0.5 * (math.fsum(diffs) + unlisted)


def poisson_reference(lam: float, kmax: int) -> Dict[int, float]:
    return {k: asy.poisson_pmf(lam, k) for k in range(kmax + 1)}


def limit_joint_reference(J: int = asy.DEFAULT_TRUNCATION, K: int = asy.DEFAULT_TRUNCATION):
    return asy.limit_pmf_table(J, K)


@dataclass
class ConvergenceRow:
    n: int
    tv_one_component_poisson: float
    tv_joint_limit: Optional[float]
    one_component_fraction: float
    gap_one_component_fraction: float
    fdu_fraction: float
    gap_fdu_fraction: float
    log_gaps: Dict[str, float]


JOINT_REPORT_MAX_N = 25


def convergence_report(ns: Sequence[int], joint_max_n: int = JOINT_REPORT_MAX_N) -> List[ConvergenceRow]:
    """Per-n distances from the limit laws; the joint law is skipped above ``joint_max_n``."""
    ns = sorted(set(ns))
    top = max(ns)
    table = build_n_table(top + 1)
    btable = build_b_table(top + 1)
    gn = galled_totals(top, table)
    limit = limit_joint_reference()
    rows = []
    for n in ns:
        one = one_component_row(n, table)
        one_total = sum(one)
        du = dup_total(n, btable)
        tv_one = tv_distance(dist_one_component(n, table), poisson_reference(0.5, max(n, 60)))
        tv_joint = None
        if n <= joint_max_n:
            tv_joint = tv_distance(dist_galled_joint(n, table=table), limit)
        frac = one_total / gn[n]
        fdu_frac = one_total / du
        exact = {
            "one_component": one_total,
            "galled": gn[n],
            "dup": du,
            "fdu": one_total,
        }
        log_gaps = {}
        if n >= 2:
            for fam, value in exact.items():
                log_gaps[fam] = asy.log_exact(value) - asy.log_asym(fam, n).ln_value
        rows.append(ConvergenceRow(
            n=n,
            tv_one_component_poisson=tv_one,
            tv_joint_limit=tv_joint,
            one_component_fraction=frac,
            gap_one_component_fraction=abs(frac - math.exp(-3 / 8)),
            fdu_fraction=fdu_frac,
            gap_fdu_fraction=abs(fdu_frac - math.exp(-1 / 2)),
            log_gaps=log_gaps,
        ))
    return rows

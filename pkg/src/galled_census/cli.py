"""Command-line front end: ``galled-census <command> ...``.

Exit codes: 0 success, 1 a check found a mismatch, 2 usage error,
3 refused by a resource guard.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Dict, List, Optional, Sequence

from . import __version__
from . import asymptotics as asy
from .distributions import (
    convergence_report,
    dist_dup_repeats,
    dist_galled_joint,
    dist_one_component,
)
from .dup_trees import (
    BTable,
    build_b_table,
    dup_by_repeats,
    dup_total,
    dup_total_via_relation,
    enumerate_dup_trees,
)
from .galled import (
    BRUTE_FORCE_MAX_N,
    ResourceGuardError,
    brute_force_galled,
    galled_joint,
    galled_max_retic,
    galled_totals,
    lower_bound_L,
    upper_bound_U,
)
from .one_component import NTable, build_n_table, one_component_row, verify_bounds
from .reference import GN_TOTALS, KNOWN_MISPRINTS, N_TABLE, gn7_joint_cells
from .series import DomainError

CACHE_FORMAT_VERSION = 1
JOINT_DEFAULT_MAX_N = 60


# ---------------------------------------------------------------------------
# cache


def _encode(values: Dict) -> Dict[str, str]:
    return {f"{n},{k}": str(v) for (n, k), v in sorted(values.items())}


def _decode(raw: Dict[str, str]) -> Dict:
    out = {}
    for key, v in raw.items():
        n, k = (int(x) for x in key.split(","))
        out[(n, k)] = int(v)
    return out


def _n_max_of(values: Dict) -> int:
    """Largest n whose row 0..n-1 (and all earlier rows) is complete."""
    n = 1
    while all((n + 1, k) in values for k in range(n + 1)):
        n += 1
    return n


def write_cache(path: str, n_table: Optional[NTable], b_table: Optional[BTable]) -> None:
    doc = {
        "format_version": CACHE_FORMAT_VERSION,
        "provenance": f"galled-census {__version__}",
        "n_tables": _encode(n_table.values) if n_table else {},
        "b_tables": _encode(b_table.values) if b_table else {},
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def read_cache(path: str):
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("format_version") != CACHE_FORMAT_VERSION:
        raise ValueError(f"unsupported cache format {doc.get('format_version')!r}")
    n_vals, b_vals = _decode(doc.get("n_tables", {})), _decode(doc.get("b_tables", {}))
    n_table = NTable(_n_max_of(n_vals), n_vals) if n_vals else None
    b_table = BTable(_n_max_of(b_vals), b_vals) if b_vals else None
    return n_table, b_table


class Tables:
    """Lazily built N/B tables, optionally backed by a cache file."""

    def __init__(self, cache: Optional[str] = None):
        self.cache = cache
        self._n: Optional[NTable] = None
        self._b: Optional[BTable] = None
        if cache and os.path.exists(cache):
            self._n, self._b = read_cache(cache)

    def n(self, n_max: int) -> NTable:
        n_max = max(n_max, 2)
        if self._n is None or self._n.n_max < n_max:
            self._n = build_n_table(n_max)
            self._save()
        return self._n

    def b(self, n_max: int) -> BTable:
        n_max = max(n_max, 2)
        if self._b is None or self._b.n_max < n_max:
            self._b = build_b_table(n_max)
            self._save()
        return self._b

    def _save(self) -> None:
        if self.cache:
            write_cache(self.cache, self._n, self._b)


# ---------------------------------------------------------------------------
# commands


def _joint_guard(args, n: int) -> None:
    if n > JOINT_DEFAULT_MAX_N and not args.allow_large:
        raise ResourceGuardError(
            f"joint table for n={n} exceeds {JOINT_DEFAULT_MAX_N}; pass --allow-large"
        )


def cmd_one_component(args, tables: Tables, out) -> int:
    row = one_component_row(args.n, tables.n(args.n + 1))
    if args.by_retic:
        out.write("k,count\n")
        for k, c in enumerate(row):
            out.write(f"{k},{c}\n")
    else:
        out.write(f"{sum(row)}\n")
    return 0


def cmd_galled(args, tables: Tables, out) -> int:
    n = args.n
    if args.joint or args.by_retic:
        _joint_guard(args, n)
        joint = galled_joint(n, tables.n(n + 1))
        if args.joint:
            out.write("k,j,count\n")
            for k, j, c in joint.cells():
                out.write(f"{k},{j},{c}\n")
        else:
            out.write("k,count\n")
            for k, c in joint.by_retic().items():
                out.write(f"{k},{c}\n")
    else:
        out.write(f"{galled_totals(n, tables.n(n + 1))[n]}\n")
    return 0


def cmd_dup(args, tables: Tables, out) -> int:
    n = args.n
    if args.by_repeats:
        table = tables.n(n + 1)
        out.write("k,count\n")
        for k in range(n + 1):
            out.write(f"{k},{dup_by_repeats(n, k, table)}\n")
    else:
        out.write(f"{dup_total(n, tables.b(n + 1))}\n")
    return 0


def cmd_fdu(args, tables: Tables, out) -> int:
    out.write(f"{sum(one_component_row(args.n, tables.n(args.n + 1)))}\n")
    return 0


def cmd_bounds(args, tables: Tables, out) -> int:
    n = args.n
    table = tables.n(n + 1)
    out.write(f"L_n {lower_bound_L(n, table)}\n")
    out.write(f"GN_n {galled_totals(n, table)[n]}\n")
    out.write(f"U_n {upper_bound_U(n, table)}\n")
    return 0


def cmd_max_retic(args, tables: Tables, out) -> int:
    out.write(f"{galled_max_retic(args.n)}\n")
    return 0


def _dist(args, tables: Tables):
    n = args.n
    if args.family == "one-component":
        return dist_one_component(n, tables.n(n + 1)), ("k",)
    if args.family == "dup":
        return dist_dup_repeats(n, tables.n(n + 1)), ("k",)
    _joint_guard(args, n)
    pmf = dist_galled_joint(n, table=tables.n(n + 1))
    # outcomes are (j, n - Y_n); export as k = n - Y_n, j
    return pmf, ("k", "j")


def cmd_dist(args, tables: Tables, out) -> int:
    pmf, keys = _dist(args, tables)
    rows = []
    for outcome, count in pmf.counts:
        if keys == ("k",):
            rows.append({"k": outcome, "count": count})
        else:
            j, k = outcome
            rows.append({"k": k, "j": j, "count": count})
    if keys == ("k", "j"):
        rows.sort(key=lambda r: (r["k"], r["j"]))
    if args.format == "json":
        doc = {
            "n": args.n,
            "family": args.family,
            "cells": [{"k": r["k"], "j": r.get("j"), "count": r["count"]} for r in rows],
            "total": pmf.total,
        }
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        out.write(",".join(keys) + ",probability_num,probability_den\n")
        for r in rows:
            lead = ",".join(str(r[key]) for key in keys)
            out.write(f"{lead},{r['count']},{pmf.total}\n")
    return 0


_ASYM_FAMILIES = {
    "one-component": "one_component",
    "galled": "galled",
    "dup": "dup",
    "fdu": "fdu",
    "one-component-near-max": "one_component_near_max",
}


def cmd_asympt(args, tables: Tables, out) -> int:
    n = args.n
    family = _ASYM_FAMILIES[args.family]
    table = tables.n(n + 1)
    if family == "galled":
        exact = galled_totals(n, table)[n]
    elif family == "dup":
        exact = dup_total(n, tables.b(n + 1))
    elif family == "one_component_near_max":
        if args.k is None or not 0 <= args.k <= n:
            raise DomainError("--k in 0..n is required for the near-max family")
        exact = one_component_row(n, table)[n - args.k]
    else:
        exact = sum(one_component_row(n, table))
    est = asy.log_asym(family, n, args.k if family == "one_component_near_max" else None)
    ln_exact = asy.log_exact(exact)
    out.write(f"ln_exact {ln_exact:.12f}\n")
    out.write(f"ln_asym {est.ln_value:.12f}\n")
    out.write(f"gap {ln_exact - est.ln_value:.12f}\n")
    return 0


def cmd_limit_pmf(args, tables: Tables, out) -> int:
    out.write(f"{asy.limit_pmf_xy(args.j, args.k):.6g}\n")
    return 0


def _check_tables(tables: Tables, max_n: int, out) -> bool:
    ok = True
    top = min(max_n, 11)
    table = tables.n(max(top, 2))
    for n, row in N_TABLE.items():
        if n > top:
            continue
        for k, published in enumerate(row):
            ok &= _report_cell(out, "N", (n, k), table[n, k], published)
    gn_top = min(max_n, 10)
    totals = galled_totals(max(gn_top, 1), tables.n(gn_top + 1))
    for n, published in GN_TOTALS.items():
        if n <= gn_top:
            ok &= _report_cell(out, "GN", n, totals[n], published)
    if max_n >= 7:
        joint = galled_joint(7, tables.n(8))
        for cell, published in gn7_joint_cells():
            ok &= _report_cell(out, "GN7", cell, joint[cell], published)
    return ok


def _report_cell(out, name, cell, computed, published) -> bool:
    if computed == published:
        return True
    known = KNOWN_MISPRINTS.get((name, cell))
    if known == computed:
        out.write(f"KNOWN {name}{cell}: published {published}, computed {computed}\n")
        return True
    out.write(f"FAIL {name}{cell}: published {published}, computed {computed}\n")
    return False


def _check_bounds(tables: Tables, max_n: int, out) -> bool:
    table = tables.n(max_n + 1)
    report = verify_bounds(table, max_n)
    out.write(f"inequalities checked {report.checked}: {'pass' if report.passed else 'FAIL'}\n")
    if not report.passed:
        out.write(f"first counterexample {report.counterexample}\n")
    totals = galled_totals(max_n, table)
    sandwich = True
    for n in range(1, max_n + 1):
        low, high = lower_bound_L(n, table), upper_bound_U(n, table)
        if not low <= totals[n] <= high:
            out.write(f"FAIL sandwich at n={n}\n")
            sandwich = False
    out.write(f"sandwich L_n <= GN_n <= U_n for n <= {max_n}: {'pass' if sandwich else 'FAIL'}\n")
    return report.passed and sandwich


def _check_oracle(tables: Tables, max_n: int, out) -> bool:
    if max_n > BRUTE_FORCE_MAX_N:
        raise ResourceGuardError(f"oracle check refused for max-n={max_n} > {BRUTE_FORCE_MAX_N}")
    ok = True
    table = tables.n(max_n + 1)
    for n in range(1, max_n + 1):
        same = galled_joint(n, table).counts == brute_force_galled(n, table).counts
        out.write(f"galled n={n}: {'pass' if same else 'FAIL'}\n")
        ok &= same
    for n in range(1, min(max_n, 4) + 1):
        free = enumerate_dup_trees(n, twin_cherry_free=True)
        full = enumerate_dup_trees(n)
        row = one_component_row(n, table)
        same = all(free[k] == row[k] for k in range(n + 1)) and all(
            full[k] == dup_by_repeats(n, k, table) for k in range(n + 1)
        ) and sum(full.values()) == dup_total_via_relation(n, table)
        out.write(f"dup-trees n={n}: {'pass' if same else 'FAIL'}\n")
        ok &= same
    return ok


def _check_conjecture(tables: Tables, max_n: int, out) -> bool:
    table = tables.n(max_n + 1)
    for n in range(2, max_n + 1):
        retic = galled_joint(n, table).by_retic()
        seq = [retic.get(k, 0) for k in range(2 * n - 1)]
        up = all(seq[k] < seq[k + 1] for k in range(n))
        down = all(seq[k] > seq[k + 1] for k in range(n, 2 * n - 2))
        out.write(f"n={n}: increasing to k=n {'yes' if up else 'no'}, "
                  f"decreasing after {'yes' if down else 'no'}\n")
    return True


_SUITES = {
    "tables": _check_tables,
    "bounds": _check_bounds,
    "oracle": _check_oracle,
    "conjecture": _check_conjecture,
}


def cmd_check(args, tables: Tables, out) -> int:
    if args.suite in ("conjecture",):
        _joint_guard(args, args.max_n)
    ok = _SUITES[args.suite](tables, args.max_n, out)
    out.write(f"suite {args.suite}: {'pass' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def _fmt(x: Optional[float]) -> str:
    return "NA" if x is None else f"{x:.6g}"


def cmd_report(args, tables: Tables, out) -> int:
    ns = [int(x) for x in args.ns.split(",") if x.strip()]
    if not ns or min(ns) < 2:
        raise DomainError("--ns needs integers >= 2")
    rows = convergence_report(ns)
    fams = ("one_component", "galled", "dup", "fdu")
    out.write("n,tv_one_component_poi_half,tv_joint_limit,one_component_fraction,"
              "gap_exp_minus_3_8,fdu_fraction,gap_exp_minus_1_2,"
              + ",".join(f"ln_gap_{f}" for f in fams) + "\n")
    for r in rows:
        cols = [str(r.n), _fmt(r.tv_one_component_poisson), _fmt(r.tv_joint_limit),
                _fmt(r.one_component_fraction), _fmt(r.gap_one_component_fraction),
                _fmt(r.fdu_fraction), _fmt(r.gap_fdu_fraction)]
        cols += [_fmt(r.log_gaps.get(f)) for f in fams]
        out.write(",".join(cols) + "\n")
    return 0


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", metavar="FILE", help="JSON cache for the N/B tables")
    common.add_argument("--allow-large", action="store_true",
                        help=f"lift the n <= {JOINT_DEFAULT_MAX_N} guard on joint tables")

    parser = argparse.ArgumentParser(prog="galled-census", parents=[common],
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("one-component", parents=[common], help="1-GN_n or its k-row")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--by-retic", action="store_true")
    p.set_defaults(func=cmd_one_component)

    p = sub.add_parser("galled", parents=[common], help="GN_n, GN_{n,k} or GN_{n,k,j}")
    p.add_argument("--n", type=positive_int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--joint", action="store_true")
    g.add_argument("--by-retic", action="store_true")
    p.set_defaults(func=cmd_galled)

    p = sub.add_parser("dup", parents=[common], help="DU_n or DU_{n,k}")
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--by-repeats", action="store_true")
    p.set_defaults(func=cmd_dup)

    p = sub.add_parser("fdu", parents=[common], help="twin-cherry-free dup-trees")
    p.add_argument("--n", type=positive_int, required=True)
    p.set_defaults(func=cmd_fdu)

    p = sub.add_parser("bounds", parents=[common], help="L_n, GN_n, U_n")
    p.add_argument("--n", type=positive_int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("max-retic", parents=[common], help="GN_{n,2n-2}")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_max_retic)

    p = sub.add_parser("dist", parents=[common], help="exact pmf under the uniform model",
                       description="k is n minus the statistic (reticulations or repeated labels); "
                                   "j is the number of inner reticulations.")
    p.add_argument("--family", choices=("one-component", "galled", "dup"), required=True)
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("asympt", parents=[common], help="ln of exact count vs. asymptotic formula")
    p.add_argument("--family", choices=tuple(_ASYM_FAMILIES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_asympt)

    p = sub.add_parser("limit-pmf", parents=[common], help="P(X=j, Y=k) of the limit law")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_limit_pmf)

    p = sub.add_parser("check", parents=[common], help="consistency suites")
    p.add_argument("--suite", choices=tuple(_SUITES), required=True)
    p.add_argument("--max-n", type=positive_int, required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("report", parents=[common], help="convergence to the limit laws")
    p.add_argument("--ns", default="10,25,50,100")
    p.set_defaults(func=cmd_report)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tables = Tables(args.cache)
    except (OSError, ValueError, KeyError) as exc:
        print(f"galled-census: unreadable cache {args.cache}: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, tables, out)
    except ResourceGuardError as exc:
        print(f"galled-census: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"galled-census: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

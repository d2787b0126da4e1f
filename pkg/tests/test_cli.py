import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from galled_census import dist_galled_joint, galled_joint
from galled_census.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_galled_total():
    assert call("galled", "--n", "10") == (0, "19327089427089478650\n")


def test_one_component_csv_exact_text():
    code, text = call("dist", "--family", "one-component", "--n", "2", "--format", "csv")
    assert code == 0
    assert text == "k,probability_num,probability_den\n0,3,6\n1,2,6\n2,1,6\n"


def test_limit_pmf_six_digits():
    assert call("limit-pmf", "--j", "0", "--k", "0") == (0, "0.416862\n")


def test_bounds_and_max_retic():
    assert call("bounds", "--n", "3")[1] == "L_n 240\nGN_n 240\nU_n 276\n"
    assert call("max-retic", "--n", "7")[1] == "7577955\n"


def test_counts_subcommands():
    assert call("one-component", "--n", "2", "--by-retic")[1] == "k,count\n0,1\n1,2\n2,3\n"
    assert call("one-component", "--n", "2")[1] == "6\n"
    assert call("dup", "--n", "2")[1] == "11\n"
    assert call("dup", "--n", "2", "--by-repeats")[1] == "k,count\n0,1\n1,4\n2,6\n"
    assert call("fdu", "--n", "2")[1] == "6\n"
    assert call("galled", "--n", "2", "--by-retic")[1] == "k,count\n0,1\n1,2\n2,3\n"


def test_joint_csv_parses_back():
    code, text = call("galled", "--n", "6", "--joint")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert {(int(r["k"]), int(r["j"])): int(r["count"]) for r in rows} == galled_joint(6).counts


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_galled_dist_round_trips_to_rationals(fmt):
    code, text = call("dist", "--family", "galled", "--n", "5", "--format", fmt)
    assert code == 0
    pmf = dist_galled_joint(5)
    if fmt == "json":
        doc = json.loads(text)
        assert doc["n"] == 5 and doc["family"] == "galled" and doc["total"] == pmf.total
        got = {(c["j"], c["k"]): Fraction(c["count"], doc["total"]) for c in doc["cells"]}
    else:
        rows = list(csv.DictReader(io.StringIO(text)))
        got = {(int(r["j"]), int(r["k"])): Fraction(int(r["probability_num"]), int(r["probability_den"]))
               for r in rows}
    assert got == pmf.weights
    assert "\r" not in text


def test_output_is_deterministic():
    args = ("dist", "--family", "dup", "--n", "6", "--format", "json")
    assert call(*args) == call(*args)


def test_asympt_prints_three_lines():
    code, text = call("asympt", "--family", "one-component", "--n", "7")
    lines = dict(line.split() for line in text.splitlines())
    assert set(lines) == {"ln_exact", "ln_asym", "gap"}
    assert float(lines["gap"]) == pytest.approx(0.0641, abs=1e-3)
    assert call("asympt", "--family", "one-component-near-max", "--n", "7")[0] == 2


def test_check_suites():
    code, text = call("check", "--suite", "tables", "--max-n", "11")
    assert code == 0 and text.count("KNOWN") == 2
    assert call("check", "--suite", "bounds", "--max-n", "12")[0] == 0
    assert call("check", "--suite", "oracle", "--max-n", "4")[0] == 0
    code, text = call("check", "--suite", "conjecture", "--max-n", "6")
    assert code == 0 and text.count("\n") == 6


def test_report_header():
    code, text = call("report", "--ns", "10,12")
    assert code == 0
    header, *rows = text.splitlines()
    assert header.startswith("n,tv_one_component_poi_half,tv_joint_limit")
    assert [r.split(",")[0] for r in rows] == ["10", "12"]


def test_resource_guards_exit_3():
    assert call("galled", "--n", "61", "--joint")[0] == 3
    assert call("check", "--suite", "oracle", "--max-n", "9")[0] == 3
    assert call("dist", "--family", "galled", "--n", "61")[0] == 3


def test_usage_errors_exit_2():
    for argv in (["galled"], ["galled", "--n", "x"], ["galled", "--n", "0"], ["bogus"],
                 ["dist", "--family", "trees", "--n", "3"]):
        with pytest.raises(SystemExit) as exc:
            run(argv, io.StringIO())
        assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "galled_census", "galled", "--n", "4"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "20502\n"

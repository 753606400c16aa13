import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from monotone_tr.cli import main
from monotone_tr.harness import (
    REPORT_SCHEMA,
    SCHEMA,
    TABLE_SCHEMA,
    THREADS_ENV,
    Bounds,
    resolve_threads,
    run_suite,
    suite_jobs,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- hurwitz -----------------------------------------------------------------------------------
@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--q", "1", "--g", "0", "--mu", "1,1,1", "--method", "brute", "--connected"], "8"),
        (["--q", "2", "--g", "0", "--mu", "2", "--method", "schur", "--connected"], "1/2"),
        (["--q", "2", "--g", "0", "--mu", "3"], "0"),
        (["--q", "1", "--g", "0", "--mu", "1,1,1", "--method", "connected-log"], "8"),
    ],
)
def test_hurwitz_examples(capsys, argv, expected):
    code, out, _ = run(capsys, "hurwitz", *argv)
    assert code == 0 and out.strip() == expected


def test_hurwitz_guard_exit_3(capsys):
    code, out, err = run(capsys, "hurwitz", "--q", "1", "--g", "3", "--mu", "6,6", "--method", "brute")
    assert code == 3 and not out and "guard" in err


def test_parse_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["hurwitz", "--q", "1", "--g", "0", "--mu", "1,x"])
    assert exc.value.code == 2


def test_value_error_exit_2(capsys):
    code, _, err = run(capsys, "hurwitz", "--q", "0", "--g", "0", "--mu", "1", "--method", "brute")
    assert code == 2 and err.startswith("error")


# -- table -------------------------------------------------------------------------------------
def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--q", "1", "--gmax", "1", "--mumax", "4", "--format", "csv", "--threads", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["q", "g", "mu", "connected", "disconnected"]
    byg = {(r[1], r[2]): r for r in rows[1:]}
    assert byg[("0", "1;1;1")][3] == "8"
    assert out.endswith("\r\n")


def test_table_json_validates_and_full_brute(capsys):
    code, out, _ = run(capsys, "table", "--q", "2", "--gmax", "1", "--mumax", "4", "--format", "json",
                       "--sample", "1.0", "--threads", "1")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, TABLE_SCHEMA)
    assert doc["agree"] and {r["brute"] for r in doc["rows"]} <= {"agree", "guarded"}
    assert any(r["brute"] == "agree" for r in doc["rows"])


def test_table_bad_bounds(capsys):
    code, _, _ = run(capsys, "table", "--q", "1", "--sample", "2")
    assert code == 2


# -- verify ------------------------------------------------------------------------------------
def test_verify_expansion_suite_example(capsys):
    code, out, _ = run(capsys, "verify", "do-karev", "--q", "1,2", "--gmax", "1", "--nmax", "2", "--mumax", "5",
                       "--threads", "1")
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert code == 0 and doc["agree"] and doc["schema"] == SCHEMA
    # with n <= 2 only genus 1 is stable
    assert {(r["g"], r["n"]) for r in doc["records"]} == {(1, 1), (1, 2)}


def test_verify_evolution_example(capsys):
    code, out, _ = run(capsys, "verify", "evolution", "--q", "1", "--weight", "4", "--hbar", "4", "--threads", "1")
    assert code == 0 and json.loads(out)["agree"]


@pytest.mark.parametrize("suite", ["evolution", "cutjoin", "unstable", "loop-equations", "do-karev"])
def test_verify_mutate_exit_1(capsys, suite):
    argv = ["verify", suite, "--q", "1", "--mutate", "--threads", "1", "--mumax", "3", "--level", "1",
            "--weight", "3", "--hbar", "2", "--degree", "3", "--nmax", "1", "--cases", "1,1,1"]
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert code == 1 and not doc["agree"]


def test_verify_printed_convention_disagrees(capsys):
    code, out, _ = run(capsys, "verify", "cutjoin", "--q", "1", "--cases", "1,1,1", "--degree", "3",
                       "--convention", "printed", "--threads", "1")
    recs = json.loads(out)["records"]
    assert code == 1
    assert [r["agree"] for r in recs] == [False, True, True, True]


def test_timings_flag(capsys):
    _, out, _ = run(capsys, "verify", "unstable", "--q", "1", "--mumax", "2", "--timings", "--threads", "1")
    assert all("wall" in r for r in json.loads(out)["records"])
    _, out, _ = run(capsys, "verify", "unstable", "--q", "1", "--mumax", "2", "--threads", "1")
    assert not any("wall" in r for r in json.loads(out)["records"])


# -- omega ---------------------------------------------------------------------------------------
def test_omega_dump(capsys):
    code, out, _ = run(capsys, "omega", "--q", "2", "--g", "1", "--n", "1")
    doc = json.loads(out)
    assert code == 0 and doc["pole_orders"] == [4] and doc["numerator"]
    _, out, _ = run(capsys, "omega", "--q", "2", "--g", "0", "--n", "2")
    assert json.loads(out) == {"g": 0, "n": 2, "q": 2, "seed": "B"}


def test_omega_negative_genus(capsys):
    code, _, _ = run(capsys, "omega", "--q", "2", "--g", "-1", "--n", "1")
    assert code == 2


# -- scheduling ------------------------------------------------------------------------------------
def test_thread_precedence(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "5")
    assert resolve_threads(None) == 5
    assert resolve_threads(2) == 2
    monkeypatch.delenv(THREADS_ENV)
    assert resolve_threads(None) >= 1
    with pytest.raises(ValueError):
        resolve_threads(0)


def test_job_order_fixed_before_dispatch():
    jobs = suite_jobs("do-karev", [2, 1], Bounds(gmax=1, nmax=2))
    assert [j[1][:3] for j in jobs] == [(2, 1, 1), (2, 1, 2), (1, 1, 1), (1, 1, 2)]


def test_report_independent_of_workers():
    b = Bounds(mumax=4, level=2, weight=4, hbar=2, degree=3)
    one = run_suite("all", [1, 2], b, workers=1).dumps()
    two = run_suite("all", [1, 2], b, workers=2).dumps()
    assert one == two


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "monotone_tr.cli", "hurwitz", "--q", "2", "--g", "0", "--mu", "2",
                           "--connected"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1/2"

import csv
import json
import math
import subprocess
import sys

import pytest

from meanineq import registry
from meanineq.certify import DATA_DIR
from meanineq.kernels import eval_combination


def run(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "meanineq", *args], capture_output=True,
                          text=True, cwd=cwd)


@pytest.mark.parametrize("args,out", [
    (("A", "2", "4"), "3"),
    (("gini:2,1", "1", "2"), "1.66666666666667"),
    (("N3", "1", "4"), "2.33333333333333"),
    (("P1", "2", "1"), "1.11111111111111"),
])
def test_eval(args, out):
    r = run("eval", *args)
    assert r.returncode == 0
    assert r.stdout.strip() == out


def test_eval_errors():
    r = run("eval", "Q9", "1", "2")
    assert r.returncode == 2 and r.stderr.strip().count("\n") == 0
    r = run("eval", "A", "-1", "2")
    assert r.returncode == 3 and "error" in r.stderr
    assert run("eval", "A", "1").returncode == 2
    assert run("frobnicate").returncode == 2


def test_curve(tmp_path):
    out = tmp_path / "c.csv"
    r = run("curve", "eq8.06", "--points", "5", "--xmax", "10", "--out", str(out))
    assert r.returncode == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["x", "gap"]
    assert len(rows) == 6
    xs = [float(x) for x, _ in rows[1:]]
    gaps = [float(g) for _, g in rows[1:]]
    assert abs(xs[0] - 0.1) < 1e-15 and abs(xs[-1] - 10) < 1e-12
    assert all(g >= 0 for g in gaps)
    assert abs(gaps[2]) <= 1e-14 and abs(xs[2] - 1) < 1e-15
    combo = registry.get("eq8.06").combination
    for x, g in zip(xs, gaps):
        assert abs(g - eval_combination(combo, x, 1)) <= 1e-13 * max(1, abs(g))


def test_curve_stdout_and_errors():
    r = run("curve", "g1.10", "--points", "3")
    assert r.returncode == 0 and r.stdout.splitlines()[0] == "x,gap"
    assert run("curve", "nope.1").returncode == 2
    assert run("curve", "eq16.2").returncode == 2  # distribution level has no curve


def test_certify_single_trace():
    r = run("certify", "--cert", "thm21.p04.json")
    assert r.returncode == 0
    assert "thm21.p04: Proved" in r.stdout
    assert "135168000" in r.stdout


def test_certify_all():
    r = run("certify", "--all")
    assert r.returncode == 0
    assert r.stdout.count(": Proved") == 43


def test_certify_tampered(tmp_path):
    d = json.loads((DATA_DIR / "thm21.p20.json").read_text())
    d["steps"][-1]["poly"] = "t^4 + 2*t^3 + 4*t^2 + 2*t + 2"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d, indent=2))
    r = run("certify", "--cert", str(path))
    assert r.returncode == 1
    assert "Failed at step 3" in r.stdout


def test_certify_parse_error_has_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "statement_id": "thm21.p20",\n  "scale": "1/2",\n  "steps": [\n    {"type": "NonnegCoeffs", "poly": "t^^2"}\n  ]\n}\n')
    r = run("certify", "--cert", str(path))
    assert r.returncode == 2
    assert "line 5" in r.stderr and "column" in r.stderr


def test_certify_missing_file(tmp_path):
    assert run("certify", "--cert", str(tmp_path / "none.json")).returncode == 4


def test_registry_export(tmp_path):
    out = tmp_path / "r.json"
    assert run("registry", "export", "--out", str(out)).returncode == 0
    assert out.read_text(encoding="utf-8") == registry.MANIFEST.read_text(encoding="utf-8")
    r = run("registry", "export")
    assert r.stdout == registry.dumps()
    assert run("registry", "export", "--out", str(tmp_path / "no" / "dir" / "r.json")).returncode == 4


@pytest.fixture(scope="module")
def report_pair(tmp_path_factory):
    d = tmp_path_factory.mktemp("rep")
    outs = []
    for name in ("a.json", "b.json"):
        path = d / name
        r = run("verify-all", "--format", "json", "--out", str(path))
        outs.append((r, path))
    return outs


def test_verify_all_json(report_pair):
    (r, path), _ = report_pair
    assert r.returncode == 0
    rep = json.loads(path.read_text())
    s = rep["summary"]
    assert set(s) == {"total", "passed", "failed", "proved_exact", "wall_time_seconds"}
    assert s["total"] == s["passed"] + s["failed"]
    assert s["total"] >= 100 and s["failed"] == 0 and s["proved_exact"] == 43
    assert rep["seed"] == 20100101
    for row in rep["results"]:
        assert set(row) == {"id", "verdict", "min_value", "argmin_x", "method"}
        assert row["method"] in ("numeric", "exact")
        if row["method"] == "numeric":
            assert math.isfinite(row["min_value"]) and row["argmin_x"] > 0


def test_verify_all_deterministic(report_pair):
    (_, a), (_, b) = report_pair
    assert a.read_bytes() == b.read_bytes()


def test_verify_all_text_and_io_error(tmp_path):
    r = run("verify-all", "--grid", "64", "--timing", "--out", str(tmp_path / "x" / "y.txt"))
    assert r.returncode == 4
    r = run("verify-all", "--grid", "4")
    assert r.returncode == 2


def test_stress_tolerance_has_no_flips():
    r = run("verify-all", "--tol", "1e-30")
    assert r.returncode == 0
    assert "failed 0" in r.stdout.splitlines()[-1]

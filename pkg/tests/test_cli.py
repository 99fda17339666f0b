import csv
import io
import json
import subprocess
import sys

import pytest

from kdg.families import family_spec, generate
from kdg.graph import build_graph, graph_to_json, parse_graph_json

KDG = [sys.executable, "-m", "kdg.cli"]


def run(*args, **kw):
    return subprocess.run(KDG + list(args), capture_output=True, text=True, **kw)


@pytest.fixture(scope="module")
def x31_path(tmp_path_factory):
    p = tmp_path_factory.mktemp("cli") / "x31.json"
    p.write_text(graph_to_json(build_graph([("e", 0, -3)], [])))
    return str(p)


def test_compute_text(x31_path):
    res = run("compute", x31_path)
    assert res.returncode == 0
    assert "-K^2: 1/3 (0.333333333333)" in res.stdout
    assert "classification: rational-triple" in res.stdout
    assert "numerical index: 3" in res.stdout
    assert "nonzero_minimum: 1/3 >= 1/3  [ok]" in res.stdout


def test_compute_json(x31_path):
    res = run("compute", x31_path, "--json")
    assert res.returncode == 0
    obj = json.loads(res.stdout)
    assert obj["k_squared"] == "1/3"
    assert obj["canonical"]["coefficients"] == {"e": "-1/3"}
    assert obj["classification"] == "rational-triple"
    assert all(b["holds"] for b in obj["bound_checks"])


def test_compute_is_deterministic(x31_path):
    a = run("compute", x31_path, "--json")
    b = run("compute", x31_path, "--json")
    assert a.stdout == b.stdout


def test_compute_dot(x31_path, tmp_path):
    out = tmp_path / "g.dot"
    res = run("compute", x31_path, "--dot", str(out))
    assert res.returncode == 0
    assert out.read_text().startswith("graph dual {")


def test_compute_error_exits(tmp_path):
    blowup = tmp_path / "blowup.json"
    blowup.write_text(graph_to_json(build_graph([("e", 0, -1)], [])))
    res = run("compute", str(blowup))
    assert res.returncode == 2
    assert "not minimal: (-1)-curve" in res.stderr

    indef = tmp_path / "indef.json"
    indef.write_text(graph_to_json(build_graph([("a", 0, -2), ("b", 0, -2)], [("a", "b", 2)])))
    res = run("compute", str(indef))
    assert res.returncode == 3
    assert "not negative definite" in res.stderr

    res = run("compute", str(tmp_path / "missing.json"))
    assert res.returncode == 2

    broken = tmp_path / "broken.json"
    broken.write_text("{oops")
    res = run("compute", str(broken))
    assert res.returncode == 2
    assert "invalid JSON" in res.stderr


def test_family_round_trip(tmp_path):
    res = run("family", "II", "--params", "n=1,s=2")
    assert res.returncode == 0
    g = parse_graph_json(res.stdout)
    assert g == generate(family_spec("II", n=1, s=2))

    out = tmp_path / "ii.json"
    res = run("family", "II", "--params", "n=1,s=2", "--out", str(out))
    assert res.returncode == 0
    assert parse_graph_json(out.read_text()) == g


def test_family_bad_params():
    assert run("family", "II").returncode == 4
    assert run("family", "II", "--params", "n=1").returncode == 4
    assert run("family", "II", "--params", "n=1,s=-2").returncode == 4
    assert run("family", "II", "--params", "n=one,s=2").returncode == 4
    # unknown family name is an argparse error
    assert run("family", "X").returncode == 2


def test_sweep_csv():
    res = run("sweep", "IV", "--param", "n", "--range", "0..2")
    assert res.returncode == 0
    rows = list(csv.DictReader(io.StringIO(res.stdout)))
    assert [r["param"] for r in rows] == ["0", "1", "2"]
    assert [r["k2_exact"] for r in rows] == ["4/7", "4/5", "12/13"]
    assert all(r["match"] == "true" for r in rows)
    assert all(r["k2_exact"] == r["closed_form"] for r in rows)
    assert rows[1]["k2_decimal"] == "0.8"


def test_sweep_fixed_params(tmp_path):
    out = tmp_path / "sweep.csv"
    res = run("sweep", "I", "--param", "n", "--range", "0..3",
              "--fix", "s=1,t=1", "--csv", str(out))
    assert res.returncode == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 4
    assert rows[0]["k2_exact"] == "1/2"  # I(0,1,1) = 1/(3-0-1/2-1/2)
    assert all(r["match"] == "true" for r in rows)


def test_limit_named_string(tmp_path):
    p = tmp_path / "dt.json"
    p.write_text(graph_to_json(generate(family_spec("double_three", n=2))))
    res = run("limit", str(p), "--strings", "n1")
    assert res.returncode == 0
    assert "limit of -K^2: 1" in res.stdout
    assert "rational-fit cross-check: 1" in res.stdout

    res = run("limit", str(p), "--strings", "zz")
    assert res.returncode == 4
    assert "unknown vertex 'zz'" in res.stderr


def test_limit_auto_unbounded(tmp_path):
    p = tmp_path / "vi.json"
    p.write_text(graph_to_json(generate(family_spec("VI", n=2))))
    res = run("limit", str(p), "--strings", "auto")
    assert res.returncode == 0
    assert "no finite limit" in res.stdout


def test_enumerate_csv(tmp_path):
    res = run("enumerate", "--max-vertices", "2", "--min-self", "-3")
    assert res.returncode == 0
    rows = list(csv.DictReader(io.StringIO(res.stdout)))
    assert len(rows) == 5
    by_enc = {r["encoding"]: r for r in rows}
    assert by_enc["0,-3|"]["k2_exact"] == "1/3"
    assert by_enc["0,-3|"]["class"] == "rational-triple"
    assert by_enc["0,-3;0,-2|0-1:1"]["z2"] == "-3"
    assert by_enc["0,-2|"]["index"] == "1"
    out = tmp_path / "enum.csv"
    res = run("enumerate", "--max-vertices", "1", "--out", str(out))
    assert res.returncode == 0
    assert out.read_text().count("\n") >= 2


def test_enumerate_bounds_rejected():
    res = run("enumerate", "--max-vertices", "9")
    assert res.returncode == 4


def test_verify_subcommand():
    res = run("verify", "--suite", "lemmas", "--trials", "3", "--seed", "5")
    assert res.returncode == 0
    assert res.stdout.startswith("suite lemmas:")
    assert "[ok]" in res.stdout
    again = run("verify", "--suite", "lemmas", "--trials", "3", "--seed", "5")
    assert again.stdout == res.stdout


def test_no_command_shows_usage():
    res = run()
    assert res.returncode == 2
    res = run("--help")
    assert res.returncode == 0
    assert "compute" in res.stdout and "enumerate" in res.stdout

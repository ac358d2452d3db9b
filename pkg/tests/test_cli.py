import json
import math
import subprocess
import sys

import numpy as np
import pytest

from vpmgeom.cli import dumps, main
from vpmgeom.symmat import matrix_to_json


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def pair(tmp_path):
    a = _write(tmp_path / "a.json", matrix_to_json([[0.25]]))
    b = _write(tmp_path / "b.json", matrix_to_json([[0.75]]))
    return a, b


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_distance_interval(capsys, pair):
    code, out, _ = run(capsys, "distance", "--metric", "hilbert-vpm", *pair)
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(2.1972246, abs=1e-7)


# Birkhoff is projective, so any two 1x1 matrices are at distance 0
@pytest.mark.parametrize(
    "metric, expected",
    [("hilbert-vpm-eps", 2 * math.log(0.85 / 0.35)), ("birkhoff-pd", 0.0), ("airm", math.log(3))],
)
def test_distance_other_metrics(capsys, pair, metric, expected):
    code, out, _ = run(capsys, "distance", "--metric", metric, "--eps", "0.1", *pair)
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(expected, abs=1e-12)


def test_distance_non_symmetric_exits_2(capsys, tmp_path, pair):
    bad = _write(tmp_path / "bad.json", {"dim": 2, "rows": [[0.5, 0.1], [0.3, 0.5]]})
    code, out, err = run(capsys, "distance", bad, pair[0])
    assert code == 2
    assert out == ""
    assert "not symmetric" in err


@pytest.mark.parametrize("content", ["{not json", '{"rows": [[1]]}'])
def test_distance_parse_errors_exit_2(capsys, tmp_path, pair, content):
    p = tmp_path / "x.json"
    p.write_text(content)
    assert run(capsys, "distance", str(p), pair[0])[0] == 2


def test_missing_file_exits_2(capsys, pair):
    code, _, err = run(capsys, "distance", pair[0], "/nonexistent/m.json")
    assert code == 2
    assert "cannot read" in err


def test_boundary_point_exits_1(capsys, tmp_path, pair):
    edge = _write(tmp_path / "e.json", matrix_to_json([[1.0]]))
    code, _, err = run(capsys, "distance", pair[0], edge)
    assert code == 1
    assert "bicone" in err


def test_verify_oracle(capsys):
    code, out, err = run(capsys, "verify", "--suite", "oracle", "--n", "3", "--trials", "100", "--seed", "7")
    assert code == 0
    res = json.loads(out)
    assert res["passed"]
    assert all("max_deviation" in c for c in res["suites"][0]["checks"])
    assert "PASS" in err and "max=" in err


def test_seb_and_ball_export(capsys, tmp_path):
    pts = _write(tmp_path / "p.json", [matrix_to_json([[0.3, 0.1], [0.1, 0.4]]), matrix_to_json(np.diag([0.7, 0.6]))])
    code, out, _ = run(capsys, "seb", pts, "--iters", "50", "--seed", "3")
    assert code == 0
    res = json.loads(out)
    assert set(res) >= {"center", "radius", "iters"}
    assert res["iters"] == 50
    ball = tmp_path / "ball.json"
    ball.write_text(out)
    csv = tmp_path / "s.csv"
    code, out, _ = run(capsys, "export", "--what", "ball", "--ball", str(ball), "--resolution", "10", "--out", str(csv))
    assert code == 0
    assert csv.read_text().startswith("t,x,y,label\n")


def test_export_ball_requires_ball(capsys, tmp_path):
    assert run(capsys, "export", "--what", "ball", "--out", str(tmp_path / "o.csv"))[0] == 2


def test_export_unwritable_exits_2(capsys):
    assert run(capsys, "export", "--what", "bicone", "--out", "/nonexistent/dir/o.csv")[0] == 2


def test_embed(capsys, tmp_path):
    g = _write(tmp_path / "g.json", {"mean": [1.0], "cov": matrix_to_json([[1.0]])})
    code, out, _ = run(capsys, "embed", g)
    assert code == 0
    res = json.loads(out)
    assert res["embedded"]["rows"] == [[2.0, 1.0], [1.0, 1.0]]
    assert res["t1"]["dim"] == 2


def test_embed_bad_cov_exits_1(capsys, tmp_path):
    g = _write(tmp_path / "g.json", {"mean": [0.0, 0.0], "cov": matrix_to_json(np.diag([1.0, -1.0]))})
    assert run(capsys, "embed", g)[0] == 1


def test_sample(capsys):
    code, out, _ = run(capsys, "sample", "--n", "3", "--seed", "4", "--delta", "0.1")
    assert code == 0
    w = np.linalg.eigvalsh(np.array(json.loads(out)["rows"]))
    assert np.all((w >= 0.1 - 1e-12) & (w <= 0.9 + 1e-12))


def test_tol_env_override(capsys, tmp_path, monkeypatch):
    pts = _write(tmp_path / "p.json", [matrix_to_json([[0.25]]), matrix_to_json([[0.75]])])
    monkeypatch.setenv("VPMGEOM_TOL", "1e-3")
    _, loose, _ = run(capsys, "seb", pts, "--iters", "20")
    monkeypatch.delenv("VPMGEOM_TOL")
    _, tight, _ = run(capsys, "seb", pts, "--iters", "20")
    assert loose != tight
    monkeypatch.setenv("VPMGEOM_TOL", "abc")
    assert run(capsys, "seb", pts, "--iters", "20")[0] == 2


def test_floats_use_17_digits():
    assert dumps(0.1) == "0.10000000000000001"
    assert dumps(2.0) == "2.0"
    assert dumps({"a": [1, True, None]}) == '{"a": [1, true, null]}'
    assert json.loads(dumps([1e-20]))[0] == 1e-20
    assert json.loads(dumps(1 / 3)) == 1 / 3


@pytest.mark.parametrize(
    "argv",
    [
        ["sample", "--n", "4", "--seed", "9"],
        ["verify", "--suite", "metric", "--n", "2", "--trials", "50", "--seed", "1"],
    ],
)
def test_byte_identical_output(argv):
    cmd = [sys.executable, "-m", "vpmgeom.cli", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_console_entry_point_runs():
    res = subprocess.run([sys.executable, "-m", "vpmgeom.cli", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    for sub in ("distance", "verify", "seb", "embed", "export", "sample"):
        assert sub in res.stdout

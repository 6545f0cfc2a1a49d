import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from conftest import symmetric_cloud
from lsreflect.cli import main, read_csv, write_csv


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def write(path, text):
    path.write_text(text)
    return path


@pytest.fixture
def triangle(tmp_path):
    p = write(tmp_path / "p.csv", "# x,y\n1,0\n2,0\n0,1\n")
    q = write(tmp_path / "q.csv", "1, 0\n 2,0\n0,-1\n")
    return p, q


def test_fit_worked_example(triangle):
    code, out, err = run("fit", *triangle)
    assert code == 0 and err == ""
    rec = json.loads(out)
    assert rec["dim"] == 2
    assert rec["normal"] == [0, 1] and rec["offset"] == 0
    assert rec["eigenvalues"] == [-1, 2]
    assert rec["objective"] == 0 and rec["degenerate"] is False


def test_fit_count_mismatch(tmp_path, triangle):
    q = write(tmp_path / "short.csv", "1,0\n")
    code, out, err = run("fit", triangle[0], q)
    assert code == 2 and out == ""
    assert "point count mismatch" in err and err.count("\n") == 1


def test_fit_parse_error_names_file_and_line(tmp_path, triangle):
    bad = write(tmp_path / "bad.csv", "1,0\n2,zero\n0,1\n")
    code, _, err = run("fit", triangle[0], bad)
    assert code == 2
    assert "bad.csv:2" in err


@pytest.mark.parametrize("text", ["1,0\n2,0,5\n", "1\n2\n", "1,inf\n", "# only a header\n"])
def test_malformed_point_files(tmp_path, text):
    f = write(tmp_path / "x.csv", text)
    code, out, err = run("fit", f, f)
    assert code == 2 and out == "" and err.startswith("error:")


def test_missing_file(tmp_path):
    code, _, err = run("fit", tmp_path / "nope.csv", tmp_path / "nope.csv")
    assert code == 2 and "nope.csv" in err


def test_fit_degenerate_exit_code(tmp_path):
    f = write(tmp_path / "same.csv", "1,2\n1,2\n")
    code, out, err = run("fit", f, f)
    assert code == 3 and out == "" and "degenerate" in err


@pytest.mark.parametrize(
    "plane, points, expected",
    [
        ({"dim": 2, "normal": [0, 1], "offset": 0}, "3,2\n", "3,-2\n"),
        ({"dim": 2, "normal": [1, 0], "offset": 1}, "3,0\n", "-1,0\n"),
    ],
)
def test_apply(tmp_path, plane, points, expected):
    pf = write(tmp_path / "plane.json", json.dumps(plane))
    code, out, _ = run("apply", pf, write(tmp_path / "p.csv", points))
    assert code == 0 and out == expected


def test_apply_twice_is_identity(tmp_path, rng):
    n = rng.standard_normal(3)
    pf = write(tmp_path / "plane.json", json.dumps({"dim": 3, "normal": (n / np.linalg.norm(n)).tolist(), "offset": 0.3}))
    P = rng.uniform(-5, 5, (30, 3))
    buf = io.StringIO()
    write_csv(P, buf)
    src = write(tmp_path / "p.csv", buf.getvalue())
    once = write(tmp_path / "once.csv", run("apply", pf, src)[1])
    twice = write(tmp_path / "twice.csv", run("apply", pf, once)[1])
    np.testing.assert_allclose(read_csv(twice), P, atol=1e-12 * 5 * 4)


def test_apply_errors(tmp_path):
    pf = write(tmp_path / "plane.json", json.dumps({"dim": 3, "normal": [0, 0, 1], "offset": 0}))
    pts = write(tmp_path / "p.csv", "1,2\n")
    assert run("apply", pf, pts)[0] == 2
    notunit = write(tmp_path / "bad.json", json.dumps({"dim": 2, "normal": [0, 2], "offset": 0}))
    assert run("apply", notunit, pts)[0] == 2
    garbage = write(tmp_path / "g.json", "{not json")
    assert run("apply", garbage, pts)[0] == 2


def test_output_is_round_trip_exact(tmp_path):
    pf = write(tmp_path / "plane.json", json.dumps({"dim": 2, "normal": [1, 0], "offset": 0}))
    code, out, _ = run("apply", pf, write(tmp_path / "p.csv", "0.1,0.30000000000000004\n"))
    x, y = (float(v) for v in out.strip().split(","))
    assert x == -0.1 and y == 0.30000000000000004


def test_gen_round_trip(tmp_path):
    for dim in (2, 3, 4, 5):
        prefix = str(tmp_path / f"d{dim}_")
        assert run("gen", "--dim", dim, "--m", 30, "--sigma", 0, "--seed", 7, "--out-prefix", prefix)[0] == 0
        truth = json.loads(open(prefix + "plane.json").read())
        assert truth["seed"] == 7 and truth["dim"] == dim
        code, out, _ = run("fit", prefix + "p.csv", prefix + "q.csv")
        rec = json.loads(out)
        np.testing.assert_allclose(rec["normal"], truth["normal"], atol=1e-8)
        assert abs(rec["offset"] - truth["offset"]) <= 1e-8


def test_gen_is_deterministic(tmp_path):
    outputs = []
    for tag in "ab":
        prefix = str(tmp_path / tag)
        run("gen", "--dim", 3, "--m", 20, "--sigma", 0.1, "--seed", 3, "--out-prefix", prefix)
        outputs.append([open(prefix + name, "rb").read() for name in ("p.csv", "q.csv", "plane.json")])
    assert outputs[0] == outputs[1]


def test_gen_noisy_recovery(tmp_path):
    prefix = str(tmp_path / "n_")
    run("gen", "--dim", 3, "--m", 1000, "--sigma", 0.01, "--seed", 11, "--out-prefix", prefix)
    truth = json.loads(open(prefix + "plane.json").read())
    rec = json.loads(run("fit", prefix + "p.csv", prefix + "q.csv")[1])
    angle = math.acos(min(1.0, abs(np.dot(rec["normal"], truth["normal"]))))
    assert angle <= 0.05


@pytest.mark.parametrize("args", [("--dim", 1, "--m", 5), ("--dim", 2, "--m", 0), ("--dim", 2, "--m", 5, "--sigma", -1)])
def test_gen_invalid(tmp_path, args):
    code, _, err = run("gen", *args, "--out-prefix", str(tmp_path / "x"))
    assert code == 2 and err.startswith("error:")


def test_symmetry_triangle(tmp_path):
    code, out, _ = run("symmetry", write(tmp_path / "t.csv", "-1,0\n1,0\n0,2\n"))
    rec = json.loads(out)
    assert code == 0
    np.testing.assert_allclose(rec["normal"], [1, 0], atol=1e-15)
    assert abs(rec["offset"]) < 1e-15
    assert rec["objective_history"][-1] == rec["objective"]


def test_symmetry_generated_cloud(tmp_path, rng):
    S, _ = symmetric_cloud(rng, 3, 25)
    buf = io.StringIO()
    write_csv(S, buf)
    rec = json.loads(run("symmetry", write(tmp_path / "s.csv", buf.getvalue()))[1])
    assert rec["objective"] <= 1e-12 * np.abs(S).max() ** 2


def test_symmetry_collinear(tmp_path):
    rec = json.loads(run("symmetry", write(tmp_path / "c.csv", "0,0\n1,0\n3,0\n"), "--iters", 10)[1])
    assert rec["converged"] is True
    # the supporting line mirrors the set onto itself
    assert rec["objective"] == 0


def test_symmetry_bad_flags(tmp_path):
    f = write(tmp_path / "t.csv", "-1,0\n1,0\n0,2\n")
    assert run("symmetry", f, "--iters", 0)[0] == 2
    assert run("symmetry", write(tmp_path / "4d.csv", "1,2,3,4\n0,0,0,1\n"))[0] == 2


def test_eigen(tmp_path):
    code, out, _ = run("eigen", write(tmp_path / "a.csv", "2,0\n0,-1\n"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] in ("-1: 0,1", "-1: 0,-1", "-1: -0,1", "-1: -0,-1")
    assert lines[1].split(":")[0] == "2"

    out = run("eigen", write(tmp_path / "i.csv", "1,0,0\n0,1,0\n0,0,1\n"))[1]
    assert [float(l.split(":")[0]) for l in out.splitlines()] == [1, 1, 1]

    out = run("eigen", write(tmp_path / "b.csv", "2,1\n1,2\n"))[1]
    vals = [float(l.split(":")[0]) for l in out.splitlines()]
    np.testing.assert_allclose(vals, [1, 3], atol=1e-12)


def test_eigen_rejects_asymmetric(tmp_path):
    assert run("eigen", write(tmp_path / "a.csv", "1,2\n3,4\n"))[0] == 2
    assert run("eigen", write(tmp_path / "r.csv", "1,2\n"))[0] == 2
    # within 1e-9 relative is accepted and symmetrized
    assert run("eigen", write(tmp_path / "n.csv", "1,2\n2.0000000000001,4\n"))[0] == 0


def test_entry_point_streams(tmp_path, triangle):
    ok = subprocess.run([sys.executable, "-m", "lsreflect.cli", "fit", *map(str, triangle)], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stderr == ""
    bad = subprocess.run([sys.executable, "-m", "lsreflect.cli", "frobnicate"], capture_output=True, text=True)
    assert bad.returncode == 2 and bad.stdout == ""
    assert bad.stderr.count("\n") == 1

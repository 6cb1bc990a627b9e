import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import random_ginibre, random_hermitian
from numrad.cli import main
from numrad.linalg import save_matrix
from numrad.norms import TRACE, matrix_norm
from numrad.radius import frobenius_closed_form


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "numrad", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def nilpotent_file(tmp_path):
    path = tmp_path / "n.json"
    save_matrix(path, np.array([[0, 1], [0, 0]]))
    return path


def test_radius_nilpotent(nilpotent_file):
    code, out, _ = run("radius", str(nilpotent_file), "--norm", "operator")
    assert code == 0
    data = json.loads(out)
    assert set(data) >= {"lo", "hi", "theta_star", "lipschitz"}
    assert abs(data["lo"] - 0.5) < 1e-9 and abs(data["hi"] - 0.5) < 1e-9


def test_radius_hermitian_trace(tmp_path, capsys):
    H = random_hermitian(0, 4)
    save_matrix(tmp_path / "h.json", H)
    assert main(["radius", str(tmp_path / "h.json"), "--norm", "schatten:1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert abs(0.5 * (data["lo"] + data["hi"]) - matrix_norm(TRACE, H)) < 1e-10 * data["hi"]


def test_radius_verify_frobenius(tmp_path, capsys):
    A = random_ginibre(1, 6)
    save_matrix(tmp_path / "a.json", A)
    assert main(["radius", str(tmp_path / "a.json"), "--norm", "frobenius", "--verify"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verify"]["ok"]
    assert abs(data["verify"]["closed_form"] - frobenius_closed_form(A)) == 0.0
    assert abs(data["lo"] - frobenius_closed_form(A)) < 1e-8 * data["lo"]


@pytest.mark.parametrize(
    "args",
    [
        ["radius", "missing.json"],
        ["radius", "{matrix}", "--norm", "lp:3"],
        ["radius", "{matrix}", "--grid-points", "1"],
        ["check", "thm9.9"],
        ["suite", "--trials", "0"],
        ["suite", "--dims", "x"],
        ["curve", "q"],
        ["curve", "f", "--t-step", "0"],
        ["frobnicate"],
    ],
)
def test_config_errors_exit_2(args, nilpotent_file, capsys):
    args = [a.replace("{matrix}", str(nilpotent_file)) for a in args]
    assert main(args) == 2
    assert capsys.readouterr().err


def test_unknown_check_lists_valid_ids():
    code, _, err = run("check", "thm9.9")
    assert code == 2 and "thm1.2-eq1" in err and "cor4.5-offdiag-eq" in err


def test_empty_campaign_message():
    code, _, err = run("suite", "--trials", "0")
    assert code == 2 and "empty campaign" in err


def test_non_square_matrix_file(tmp_path, capsys):
    (tmp_path / "r.json").write_text(json.dumps({"rows": 1, "cols": 2, "entries": [[1, 0], [0, 0]]}))
    assert main(["radius", str(tmp_path / "r.json")]) == 2


def test_check_passes_and_writes_out(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["check", "thm1.2-eq1", "--trials", "10", "--dims", "2", "--out", str(out)])
    assert code == 0
    stats = json.loads(out.read_text())["per_check"]["thm1.2-eq1"]
    assert stats["trials"] == 10 and stats["passes"] == 10


def test_check_fail_exit_1(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"trials": 2, "tolerance_overrides": {"cor4.5-offdiag-eq": -1.0}}))
    assert main(["check", "cor4.5-offdiag-eq", "--config", str(cfg), "--p-values", "2,3"]) == 1


def test_suite_is_deterministic_and_writes_csv(tmp_path):
    paths = []
    for name in ("a", "b"):
        rep, csv_path = tmp_path / f"{name}.json", tmp_path / f"{name}.csv"
        code, _, _ = run("suite", "--trials", "2", "--out", str(rep), "--csv", str(csv_path))
        assert code == 0
        paths.append((rep, csv_path))
    (ra, ca), (rb, cb) = paths
    ja, jb = json.loads(ra.read_text()), json.loads(rb.read_text())
    ja.pop("wall_time"), jb.pop("wall_time")
    assert ja == jb
    assert ca.read_bytes() == cb.read_bytes()
    assert ja["schema"].startswith("numrad-report/")
    text_a = ra.read_text().replace(f'"wall_time": {json.loads(ra.read_text())["wall_time"]}', "")
    text_b = rb.read_text().replace(f'"wall_time": {json.loads(rb.read_text())["wall_time"]}', "")
    assert text_a == text_b


def _curve(capsys, *args):
    assert main(["curve", *args]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    return [(float(r["t"]), float(r["lo"]), float(r["hi"])) for r in rows]


def test_curve_identity_is_constant(capsys):
    rows = _curve(capsys, "f", "--identity", "--t-step", "0.25")
    his = [hi for _, _, hi in rows]
    assert max(his) - min(his) < 1e-9 * max(his)


def test_curve_ell_zero_at_half(capsys):
    rows = _curve(capsys, "ell", "--t-step", "0.25")
    assert [t for t, _, _ in rows] == sorted(t for t, _, _ in rows)
    assert {t: lo for t, lo, _ in rows}[0.5] <= 1e-10


def test_curve_h_midpoint_convex(capsys):
    rows = _curve(capsys, "h", "--seed", "7", "--dim", "3", "--norm", "operator")
    for (t0, lo0, hi0), (t1, lo1, hi1), (t2, lo2, hi2) in zip(rows, rows[1:], rows[2:]):
        assert lo1 <= 0.5 * (hi0 + hi2) + 1e-8 * max(hi0, hi2, 1.0)


def test_list_checks(capsys):
    assert main(["list-checks"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith("thm1.1-f\t") for line in lines)
    assert sum("informational" in line for line in lines) == 3

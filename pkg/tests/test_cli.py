import json
from fractions import Fraction
import subprocess
import sys

import pytest
import sympy as sp

from qtet.cli import GOLDEN_TAGS, SCHEMA, golden_export, main, parse_range
from qtet.qmatrix import SqMatrix, build

from oracle import load_golden, same_matrix, to_sympy


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_matrix_command(capsys):
    code, out, _ = run(capsys, "matrix", "--name", "T", "--d", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == SCHEMA
    assert SqMatrix.from_json_obj(doc["matrix"]) == build("T", 3)


def test_matrix_command_specialized(capsys):
    code, out, _ = run(capsys, "matrix", "--name", "L", "--d", "2", "--q", "3/2", "--t", "5/7")
    assert code == 0
    m = SqMatrix.from_json_obj(json.loads(out)["matrix"])
    assert m == build("L", 2, q=Fraction(3, 2), t=Fraction(5, 7))


def test_verify_boxtimes_symbolic(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "boxtimes", "--d", "1", "--t", "sym")
    assert code == 0
    assert "PASS" in out


def test_degenerate_point_exit_3(capsys):
    code, _, err = run(capsys, "verify", "--suite", "boxtimes", "--d", "2",
                       "--t", "3/2", "--q", "3/2")
    assert code == 3
    assert "degenerate" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "matrix", "--name", "Q")[0] == 2
    assert run(capsys, "verify", "--d", "1", "--d-range", "1..2")[0] == 2


def test_symbolic_cap(capsys, monkeypatch):
    monkeypatch.setenv("QTET_MAX_SYMBOLIC_D", "2")
    assert run(capsys, "verify", "--suite", "boxtimes", "--d", "3")[0] == 2


def test_parse_range():
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("3") == [3]


def test_rep_transition_exchanger_commands(capsys):
    code, out, _ = run(capsys, "rep", "--d", "2", "--basis", "0213", "--gen", "x20")
    assert code == 0
    assert SqMatrix.from_json_obj(json.loads(out)["matrix"]) == build("M", 2)
    code, out, _ = run(capsys, "transition", "--d", "2", "--from", "0123", "--to", "0132")
    assert code == 0
    assert SqMatrix.from_json_obj(json.loads(out)["matrix"]) == build("Z", 2)
    code, out, _ = run(capsys, "exchanger", "--d", "2", "--basis", "0213")
    assert code == 0


def test_verify_json_deterministic(capsys):
    args = ("verify", "--suite", "boxtimes", "--d", "2", "--random", "3", "--seed", "7", "--json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["passed"] is True


def test_verify_parallel_matches_serial(capsys):
    base = ("verify", "--suite", "pairing", "--d-range", "1..3", "--json")
    _, serial, _ = run(capsys, *base)
    _, parallel, _ = run(capsys, *base, "--jobs", "2")
    assert serial == parallel


def test_export_matches_golden(tmp_path):
    paths = golden_export(3, tmp_path)
    assert sorted(p.stem for p in paths) == sorted(GOLDEN_TAGS)
    for tag in GOLDEN_TAGS:
        doc = json.loads((tmp_path / f"{tag}.json").read_text())
        m = SqMatrix.from_json_obj(doc["matrix"])
        ours = sp.Matrix(m.n, m.n, lambda i, j: to_sympy(m[i, j]))
        assert same_matrix(ours, load_golden(tag)), tag


def test_export_is_byte_stable(tmp_path):
    golden_export(3, tmp_path / "a")
    golden_export(3, tmp_path / "b")
    for tag in GOLDEN_TAGS:
        assert (tmp_path / "a" / f"{tag}.json").read_bytes() == \
            (tmp_path / "b" / f"{tag}.json").read_bytes()


def test_leonard_command(capsys):
    code, out, _ = run(capsys, "leonard", "--a", "2/7", "--b", "5/2", "--c", "7/4",
                       "--q", "3/2", "--d", "3")
    assert code == 0
    doc = json.loads(out)
    assert "A" in json.dumps(doc)


def test_leonard_infeasible_exit_3(capsys):
    code, _, err = run(capsys, "leonard", "--a", "2/3", "--b", "5/2", "--c", "7/4",
                       "--q", "3/2", "--d", "3")
    assert code == 3
    assert "a^2" in err


def test_leonard_verify(capsys):
    code, out, _ = run(capsys, "leonard", "--a", "2/7", "--b", "5/2", "--c", "7/4",
                       "--q", "3/2", "verify", "--d-range", "1..2")
    assert code == 0
    assert "PASS" in out


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "qtet.cli", "matrix", "--name", "K", "--d", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["name"] == "K"


@pytest.mark.parametrize("suite", ["equitable", "aw"])
def test_verify_equitable_and_aw_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--d", "2", "--t", "sym")
    assert code == 0
    assert "PASS" in out


def test_verify_aw_json_check_count(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "aw", "--d", "1", "--json")
    assert code == 0
    cell = json.loads(out)["cells"][0]
    assert cell["passed"] and cell["failed"] == 0
    assert len(cell["checks"]) == 4

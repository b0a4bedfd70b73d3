from __future__ import annotations

import json
import subprocess
import sys

import pytest

from fsig.cli import main
from fsig.report import parse_decomposition_csv

A1 = ["--family", "cyclic_weights", "--n", "2", "--weights", "1,1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info_bd2(capsys):
    code, out, _ = run(capsys, "info", "--family", "binary_dihedral", "--n", "2", "--p", "3")
    assert code == 0
    assert "|G| = 8" in out and "classes = 5" in out
    assert "e0 = ord_4(3) = 2" in out


def test_info_reflection_warns(capsys):
    code, _, err = run(capsys, "info", "--family", "symmetric2_reflection", "--p", "3")
    assert code == 0
    assert "pseudo-reflection present: class 1" in err


def test_info_p_divides_order(capsys):
    code, _, err = run(capsys, "info", "--family", "cyclic_weights", "--n", "3", "--weights", "1,2", "--p", "3")
    assert code == 1
    assert "divides |G|" in err


def test_decompose_a1(capsys):
    code, out, _ = run(capsys, "decompose", *A1, "--p", "3", "--e-min", "1", "--e-max", "3")
    assert code == 0
    rows = parse_decomposition_csv(out)
    assert rows == [(1, 3, [5, 4]), (2, 9, [41, 40]), (3, 27, [365, 364])]


def test_decompose_trivial_group(capsys):
    code, out, _ = run(capsys, "decompose", "--family", "cyclic_weights", "--n", "1",
                       "--weights", "0,0", "--p", "5", "--e-max", "2")
    assert code == 0
    assert parse_decomposition_csv(out) == [(1, 5, [25]), (2, 25, [625])]


def test_decompose_reflection(capsys):
    code, _, err = run(capsys, "decompose", "--family", "symmetric2_reflection", "--p", "3")
    assert code == 1 and "pseudo-reflection" in err
    code, out, _ = run(capsys, "decompose", "--family", "symmetric2_reflection", "--p", "3", "--as-g-module")
    assert code == 0
    assert "G-module multiplicities" in out
    assert parse_decomposition_csv(out) == [(1, 3, [6, 3])]


def test_signature_report(capsys):
    code, out, _ = run(capsys, "signature", "--family", "binary_dihedral", "--n", "2", "--p", "3", "--e-max", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["signatures"] == ["1/8", "1/8", "1/8", "1/8", "1/4"]
    assert rep["e0"] == 2 and rep["certified"]


def test_signature_a1_pairs_and_gap(capsys):
    code, out, _ = run(capsys, "signature", *A1, "--p", "3")
    rep = json.loads(out)
    assert rep["signatures"] == ["1/2", "1/2"]
    assert rep["pair_signatures"] == [["1/2", "1/2"], ["1/2", "1/2"]]
    row = rep["convergence"][0]
    assert (row["gap"], row["bound"]) == ("1/18", "1/18")


def test_signature_refuses_without_escape(capsys):
    code, _, _ = run(capsys, "signature", "--family", "symmetric2_reflection", "--p", "3", "--as-g-module")
    assert code == 1


def test_verify_a1(capsys):
    code, out, _ = run(capsys, "verify", *A1, "--p", "3", "--e-min", "1", "--e-max", "2")
    assert code == 0
    assert "paper check" in out and ",NO" not in out


def test_verify_extension_rows(capsys):
    code, out, _ = run(capsys, "verify", "--family", "binary_dihedral", "--n", "2", "--p", "3", "--e-max", "2")
    assert code == 0
    assert "1,3,extension check" in out and "2,9,paper check" in out


def test_verify_corrupted_table(capsys, tmp_path):
    code, out, _ = run(capsys, "table", *A1)
    bad = tmp_path / "bad.json"
    bad.write_text(out.replace('"-1/1"', '"1/1"'))
    code, out, err = run(capsys, "verify", *A1, "--p", "3", "--table-file", str(bad))
    assert code == 3
    assert "NO" in out and "mismatch" in err


def test_verify_cap(capsys):
    code, _, err = run(capsys, "verify", *A1, "--p", "3", "--oracle-cap", "1")
    assert code == 2 and "oracle instance too large" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["info"],
        ["decompose", *A1, "--p", "4"],
        ["decompose", *A1, "--p", "3", "--e-min", "3", "--e-max", "1"],
        ["decompose", "--family", "nope", "--p", "3"],
        ["verify", *A1, "--p", "3", "--oracle-cap", "0"],
    ],
)
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_group_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "info", "--group-file", str(path))
    assert code == 2 and "line 1" in err


def test_out_file_deterministic(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        assert main(["signature", "--family", "binary_tetrahedral", "--p", "5", "--e-max", "3",
                     "--out", str(path)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fsig", "info", *A1, "--p", "5"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "|G| = 2" in res.stdout

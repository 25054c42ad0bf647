from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from math import comb

import pytest

from gamma4.cli import EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_USAGE, run
from gamma4.engine import invariants
from gamma4.persist import save_model


@pytest.fixture(scope="module")
def model7_file(tmp_path_factory, model7):
    path = tmp_path_factory.mktemp("cli") / "g7.g4m"
    save_model(model7, path)
    return str(path)


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_and_info(tmp_path, capsys):
    path = str(tmp_path / "g5.g4m")
    code, out, err = call(capsys, "build", "-n", "5", "-o", path, "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["q"] == 9
    assert "warning" in err
    code, out, _ = call(capsys, "info", "-m", path, "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["warning_n_lt_7"] is True and len(doc["central_class_table"]) == 10


def test_info_text(model7_file, capsys):
    code, out, err = call(capsys, "info", "-m", model7_file)
    assert code == EXIT_OK and err == ""
    assert "generators m = 105" in out and "kernel backend" in out


def test_nf_and_order(model7_file, capsys):
    code, out, _ = call(capsys, "nf", "-m", model7_file, "d(1,2,3,4) d(1,2,3,4)^-1")
    assert code == EXIT_OK and out.strip() == "identity"
    code, out, _ = call(capsys, "order", "-m", model7_file, "d(1,3,2,4) d(1,3,2,5)")
    assert out.strip() == "4"
    code, out, _ = call(capsys, "nf", "-m", model7_file, "--format", "json", "d(1,2,3,4)")
    doc = json.loads(out)
    assert doc["identity"] is False and doc["a_res"] != "0"


def test_stdin_batch(model7_file, capsys, monkeypatch):
    lines = "d(1,2,3,4)\nd(1,3,2,4) d(1,3,2,5)\n\n"
    monkeypatch.setattr(sys, "stdin", io.StringIO(lines))
    code, out, _ = call(capsys, "order", "-m", model7_file, "--stdin")
    assert code == EXIT_OK and out.split() == ["2", "4", "1"]


def test_comm_and_central(model7_file, capsys):
    code, out, _ = call(capsys, "comm", "-m", model7_file, "d(1,2,3,4)", "d(1,2,5,6)")
    assert code == EXIT_OK and out.strip() == "identity"
    code, out, _ = call(capsys, "central", "-m", model7_file, "1,2,3", "--format", "json")
    doc = json.loads(out)
    assert doc["K"] == [1, 2, 3] and doc["trivial"] is False
    code, out, _ = call(capsys, "central", "-m", model7_file, "1", "2", "3")
    assert out.startswith("c^(1,2,3) = [")


def test_verify(model7_file, tmp_path, capsys):
    code, out, _ = call(capsys, "verify", "-m", model7_file, "--all", "--samples", "50")
    assert code == EXIT_OK
    assert "FAIL" not in out and "order 4" in out
    report = tmp_path / "r.csv"
    code, _, _ = call(capsys, "verify", "-m", model7_file, "--claim", "C1", "--claim", "R4", "--format", "csv", "-o", str(report))
    rows = list(csv.DictReader(report.open()))
    assert code == EXIT_OK and [r["claim"] for r in rows] == ["C1", "R4"]
    assert rows[0]["seed"] == "42"


def test_verify_skips_small_n(capsys):
    code, out, err = call(capsys, "verify", "-n", "5", "--all", "--samples", "10", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and "warning" in err
    assert {c["claim"]: c["status"] for c in doc["claims"]}["T1"] == "skipped"


def test_oracle_rank(capsys):
    code, out, _ = call(capsys, "oracle-rank", "-n", "7", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["q"] == 34


def test_export(model7_file, tmp_path, capsys):
    code, out, _ = call(capsys, "export", "-m", model7_file, "--what", "generators")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK and len(rows) == 105 and rows[0]["name"] == "d(1,3,2,4)"
    code, out, _ = call(capsys, "export", "-m", model7_file, "--what", "central-classes")
    assert len(out.strip().splitlines()) == 1 + comb(7, 3)
    path = tmp_path / "inv.json"
    call(capsys, "export", "-m", model7_file, "--what", "invariants", "--format", "json", "-o", str(path))
    from gamma4.persist import load_model

    assert json.loads(path.read_text()) == invariants(load_model(model7_file))


def test_error_codes(tmp_path, capsys):
    assert call(capsys, "info", "-n", "10")[0] == EXIT_USAGE
    assert call(capsys, "info", "-n", "4")[0] == EXIT_USAGE
    assert call(capsys, "nf", "-n", "5", "d(1,2,3)")[0] == EXIT_USAGE
    assert call(capsys, "nf", "-n", "5", "d(1,2,3,9)")[0] == EXIT_USAGE
    assert call(capsys, "central", "-n", "5", "1", "2")[0] == EXIT_USAGE
    assert call(capsys, "info", "-m", str(tmp_path / "none.g4m"))[0] == EXIT_IO
    bad = tmp_path / "bad.g4m"
    bad.write_bytes(b"G4M1" + b"\0" * 40)
    assert call(capsys, "info", "-m", str(bad))[0] == EXIT_IO
    with pytest.raises(SystemExit):
        run(["verify", "-n", "5"])


def test_fail_exit_code(monkeypatch, capsys):
    from gamma4 import cli
    from gamma4.verify import ClaimReport

    monkeypatch.setattr(cli, "verify_all", lambda *a, **k: [ClaimReport("R4", "exhaustive", "fail", 1, counterexample=("d(1,2,3,4)",))])
    code, out, _ = call(capsys, "verify", "-n", "5", "--claim", "R4")
    assert code == EXIT_FAIL and "counterexample" in out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "gamma4", "oracle-rank", "-n", "5"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "6"

import csv
import io
import json
import subprocess
import sys

import pytest

from bdjddr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_inspect_worked_instance(capsys):
    code, out, _ = run(capsys, "inspect", "--p", "3", "--f", "2", "--r", "1,1", "--J", "1", "--d", "1")
    assert code == 0
    assert "xi         (2, 6)" in out
    assert "mu(J)      {0}" in out
    assert "u[0]*" in out
    lines = out.splitlines()
    ddr = lines[lines.index("ddr table") + 1 : lines.index("ddr table") + 4]
    assert [line.split() for line in ddr] == [["j", "sigma'", "n'"], ["0", "0", "2"], ["1", "0", "10"]]


def test_inspect_json(capsys):
    code, out, _ = run(capsys, "inspect", "--p", "3", "--f", "2", "--r", "1,1", "--J", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["xi"][1] == 6 and data["nprime"] == [2, 10] and data["muJ"] == [0]
    assert data["diagonality"] == {"monomial": True, "support": {"f[1]": ["u[0]"]}}


def test_inspect_excluded(capsys):
    code, _, err = run(capsys, "inspect", "--p", "3", "--f", "1", "--r", "3", "--J", "0")
    assert code == 2
    assert "excluded cyclotomic J=S case" in err


def test_inspect_maximality(capsys):
    code, _, err = run(capsys, "inspect", "--p", "3", "--f", "2", "--r", "1,3", "--J", "0")
    assert code == 2
    assert err.startswith("error: maximality")


@pytest.mark.parametrize(
    "argv,rule",
    [
        (["inspect", "--p", "4", "--f", "1", "--r", "1"], "p"),
        (["inspect", "--p", "3", "--f", "2", "--r", "1"], "shape"),
        (["inspect", "--p", "3", "--f", "1", "--r", "1", "--J", "5"], "shape"),
        (["inspect", "--p", "3", "--f", "1", "--r", "1", "--d", "3"], "unramified"),
        (["inspect", "--p", "3", "--f", "1", "--r", "1", "--d", "2", "--a-order", "3"], "unramified"),
        (["inspect", "--p", "11", "--f", "1", "--r", "1"], "guard"),
        (["verify", "--p", "3", "--f-max", "7"], "guard"),
        (["verify", "--p", "3", "--f-max", "1", "--workers", "0"], "workers"),
        (["ah-check", "--trunc", "0"], "trunc"),
        (["ah-check", "--p", "2", "--n", "7"], "guard"),
    ],
)
def test_config_errors_exit_2(capsys, argv, rule):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith(f"error: {rule}:")


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "verify", "--p", "x", "--f-max", "1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_verify_empty_range(capsys):
    code, _, err = run(capsys, "verify", "--p", "3", "--f-max", "0")
    assert code == 2 and "f-max" in err


def test_guard_can_be_lifted(capsys):
    code, out, _ = run(capsys, "inspect", "--p", "11", "--f", "1", "--r", "1", "--J", "0", "--no-guard")
    assert code == 0 and "p=11" in out


def test_verify_spec_range_exits_zero(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--p", "2,3", "--f-max", "3", "--d", "1,2", "--format", "json")
    data = json.loads(out)
    assert data["summary"]["instances"] == len(data["instances"])
    assert code == (0 if data["summary"]["failed"] == 0 else 1)
    assert code == 0, data["summary"]["check_failures"]


def test_verify_json_round_trips_and_ignores_worker_count(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("BDJDDR_OUTPUT_DIR", str(tmp_path))
    base = ["verify", "--p", "2,3", "--f-max", "2", "--d", "1,2", "--format", "json"]
    assert run(capsys, *base, "--workers", "1", "--output", "w1.json")[0] == 0
    assert run(capsys, *base, "--workers", "3", "--output", "w3.json")[0] == 0
    one = (tmp_path / "w1.json").read_bytes()
    assert one == (tmp_path / "w3.json").read_bytes()
    text = one.decode()
    assert json.dumps(json.loads(text), sort_keys=True, indent=2, ensure_ascii=False) + "\n" == text
    data = json.loads(text)
    assert set(data) == {"meta", "instances", "summary"}
    assert data["meta"]["p_list"] == [2, 3]


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--f-max", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["key", "check", "passed"]
    keys = {r[0] for r in rows[1:]}
    assert len(keys) == 4
    assert len(rows) - 1 == 4 * len({r[1] for r in rows[1:]})
    assert code == 0


def test_verify_plain_reports_failures(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--f-max", "3", "--sample", "5", "--seed", "1")
    assert "instances 5" in out
    assert code in (0, 1)


@pytest.mark.parametrize("argv", [["--p", "2", "--n", "1", "--trunc", "8"], ["--p", "3", "--n", "2", "--trunc", "30"], ["--trunc", "1"]])
def test_ah_check_passes(capsys, argv):
    code, out, _ = run(capsys, "ah-check", *argv)
    assert code == 0
    assert "FAIL" not in out


def test_ah_check_coefficients_json(capsys):
    code, out, _ = run(capsys, "ah-check", "--p", "2", "--trunc", "4", "--show-coeffs", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert data["coefficients"] == ["1", "1", "1", "2/3"]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--p", "3", "--f-max", "1")
    assert code == 0
    assert out.splitlines() == [
        "p=3;f=1;r=1;J={};d=1;a=[1]",
        "p=3;f=1;r=1;J={0};d=1;a=[1]",
        "p=3;f=1;r=2;J={0};d=1;a=[1]",
        "p=3;f=1;r=3;J={};d=1;a=[1]",
        "4 instances",
    ]
    code, out, _ = run(capsys, "enumerate", "--p", "2", "--f-max", "2", "--d", "1,3", "--format", "json")
    assert len(json.loads(out)) == 3 + 33


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bdjddr", "inspect", "--p", "3", "--f", "1", "--r", "3", "--J", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2

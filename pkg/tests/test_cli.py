import csv
import json
import math
import subprocess
import sys

import pytest

from dlmsim.cli import COLUMNS, main, parse_grid


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_parse_grid_inclusive():
    assert parse_grid("0:1:5") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_grid("2:3:1") == [2.0]


def test_fig4_run(tmp_path, capsys):
    out = tmp_path / "fig4.csv"
    rc = main(["run", "--kind", "wdc-quantum", "--alpha", "1.0471975512",
               "--phi-grid", "0:6.2832:33", "--n", "10000", "--gamma", "0.99",
               "--seed", "42", "--out", str(out)])
    assert rc == 0
    rows = read_csv(out)
    assert len(rows) == 33
    assert list(rows[0]) == list(COLUMNS)
    for r in rows:
        assert sum(int(r[f"n{c}"]) for c in ("00", "10", "01", "11")) == 10_000
        for c in ("00", "10", "01", "11"):
            assert abs(float(r[f"d{c}"])) <= 0.04
    assert "max_abs_delta=" in capsys.readouterr().out


def test_mzi_run_constructive(tmp_path):
    out = tmp_path / "mzi.csv"
    assert main(["run", "--kind", "mzi", "--phi0", "0", "--phi1", "0",
                 "--n", "1000", "--seed", "1", "--out", str(out)]) == 0
    [row] = read_csv(out)
    assert float(row["f00"]) > 0.95
    assert float(row["p00"]) == 1.0


def test_degrees_switch(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["run", "--alpha", "60", "--phi", "90", "--degrees", "--n", "500", "--out", str(a)])
    main(["run", "--alpha", repr(math.radians(60)), "--phi", repr(math.radians(90)),
          "--n", "500", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_byte_identical_outputs(tmp_path):
    args = ["run", "--alpha-grid", "0:1.5:3", "--phi-grid", "0:6:4", "--n", "2000", "--seed", "7"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(args + ["--out", str(a)])
    main(args + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    assert len(read_csv(a)) == 12


def test_sweep_alias_and_jobs(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["run", "--phi-grid", "0:3:4", "--n", "1000", "--out", str(a)])
    main(["sweep", "--phi-grid", "0:3:4", "--n", "1000", "--jobs", "2", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_json_manifest(tmp_path, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    out = tmp_path / "r.json"
    assert main(["run", "--kind", "wdc-classical", "--alpha", "0.5", "--phi-grid", "0:1:2",
                 "--n", "300", "--seed", "3", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    m = doc["manifest"]
    assert m["seed"] == 3 and m["config"]["kind"] == "wdc-classical"
    assert m["timestamp"].startswith("1970-01-01")
    assert len(doc["records"]) == 2
    assert set(doc["records"][0]) == set(COLUMNS)


def test_stdout_when_no_out(capsys):
    assert main(["run", "--n", "100"]) == 0
    cap = capsys.readouterr()
    assert cap.out.splitlines()[0] == ",".join(COLUMNS)
    assert "rms_delta=" in cap.err


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--gamma", "1.0"],
        ["run", "--gamma", "-0.1"],
        ["run", "--kind", "bogus"],
        ["run", "--n", "0"],
        ["run", "--phi-grid", "0:1"],
        ["run", "--phi", "1", "--phi-grid", "0:1:3"],
        ["frobnicate"],
    ],
)
def test_bad_arguments_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_unwritable_output_exit_3(tmp_path):
    assert main(["run", "--n", "10", "--out", str(tmp_path / "missing" / "x.csv")]) == 3


@pytest.mark.parametrize(
    "alpha, phi, expected",
    [
        ("1.0471975512", "3.1415926536", "0.125,0.125,0,0.75"),
        ("0", "0", "0.5,0.5,0,0"),
        ("1.5707963268", "0", "0,0,1,0"),
    ],
)
@pytest.mark.parametrize("method", ["closed-form", "matrix"])
def test_oracle_command(capsys, alpha, phi, expected, method):
    assert main(["oracle", "--alpha", alpha, "--phi", phi, "--method", method]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["p00,p10,p01,p11", expected]


def test_oracle_check(capsys):
    assert main(["oracle", "--check", "--grid", "64"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert float(out.split("max_discrepancy=")[1].split()[0]) < 1e-12


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dlmsim", "oracle", "--alpha", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1] == "0.5,0.5,0,0"

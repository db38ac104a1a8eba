import csv
import io
import json
import subprocess
import sys

import pytest

from wilksbound.cli import UsageError, main, parse_grid, parse_int

BIN = ["--theta", "0.4,0.6"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1:100:log3", [1.0, 10.0, 100.0]),
        ("0:1:lin5", [0.0, 0.25, 0.5, 0.75, 1.0]),
        ("1,2.5,4", [1.0, 2.5, 4.0]),
    ],
)
def test_parse_grid(text, expected):
    assert parse_grid(text) == pytest.approx(expected)


@pytest.mark.parametrize("text", ["1:2", "1:2:geo4", "1:2:log", "0:10:log3", "a:b:lin2"])
def test_parse_grid_rejects(text):
    with pytest.raises(UsageError):
        parse_grid(text)


def test_parse_int_scientific():
    assert parse_int("1e8") == 10**8
    with pytest.raises(UsageError):
        parse_int("2.5")


def test_oracle_json(capsys):
    code, out, _ = run(capsys, "oracle", *BIN, "--n", "20", "--a", "1")
    assert code == 0
    data = json.loads(out)
    assert data["value"] == pytest.approx(0.7469, abs=5e-5)
    assert set(data) == {"value", "half_width", "method", "trials", "seed"}


def test_oracle_mc(capsys):
    code, out, _ = run(capsys, "oracle", *BIN, "--n", "20", "--a", "1", "--trials", "1000", "--seed", "4")
    data = json.loads(out)
    assert code == 0 and data["method"] == "monte-carlo" and data["seed"] == 4


def test_bound_csv(capsys):
    code, out, _ = run(
        capsys, "bound", *BIN, "--n", "1e8", "--a", "1", "--delta", "1e-7", "--delta-prime", "0.01", "--format", "csv"
    )
    assert code == 0
    (row,) = rows(out)
    assert float(row["lower"]) == pytest.approx(0.630, abs=5e-4)
    assert float(row["upper"]) == pytest.approx(0.736, abs=5e-4)
    assert row["table.mu"]
    for key in ("lower", "upper", "table.mu"):
        assert row[key] == f"{float(row[key]):.17g}"


def test_bound_json_mirrors_types(capsys):
    _, out, _ = run(capsys, "bound", *BIN, "--n", "1e8", "--a", "1", "--delta", "1e-7", "--delta-prime", "0.01")
    data = json.loads(out)
    assert set(data["table"]) >= {"omega", "nu", "h_theta", "epsilon", "delta_s", "delta_n", "mu"}


def test_bound_infinite_upper_serializes(capsys):
    code, out, _ = run(capsys, "bound", *BIN, "--n", "1e8", "--a", "1", "--delta", "1e-7", "--delta-prime", "0.7")
    assert code == 0 and json.loads(out)["raw_upper"] is None


def test_bound_optimize(capsys):
    code, out, _ = run(capsys, "bound", *BIN, "--n", "1e8", "--a", "1", "--optimize")
    assert code == 0 and json.loads(out)["upper"] <= 0.736


def test_optimize(capsys):
    code, out, _ = run(capsys, "optimize", *BIN, "--n", "1e8", "--a", "1", "--format", "csv")
    (row,) = rows(out)
    assert code == 0
    assert float(row["optimum.delta"]) == float(row["bound.delta"])


def test_simulate(capsys):
    code, out, _ = run(capsys, "simulate", *BIN, "--n", "100", "--trials", "1000", "--a-grid", "0:4:lin5", "--format", "csv")
    table = rows(out)
    assert code == 0 and len(table) == 5 and list(table[0]) == ["a", "empirical", "chi2"]
    assert float(table[0]["empirical"]) == 0.0


def test_compare_grid(capsys):
    code, out, _ = run(capsys, "compare", *BIN, "--a", "1", "--n-grid", "1e4:1e12:log25", "--format", "csv")
    table = rows(out)
    assert code == 0 and len(table) == 25
    assert list(table[0])[:3] == ["n", "T1", "T2"]
    assert {"delta", "delta_prime", "k"} <= set(table[0])


def test_compare_fixed_k(capsys):
    code, out, _ = run(capsys, "compare", *BIN, "--a", "1", "--n-grid", "1e8", "--k", "2")
    data = json.loads(out)
    assert code == 0 and data["k_mode"] == "fixed"
    assert data["rows"][0]["T2"] == pytest.approx(0.011009, abs=5e-6)


def test_profile(capsys):
    code, out, _ = run(capsys, "profile", *BIN, "--n-grid", "1e6:1e10:log5")
    data = json.loads(out)
    assert code == 0 and -0.55 <= data["slope"] <= -0.45 and len(data["rows"]) == 5


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["bound", *BIN, "--n", "100", "--a", "1"], "--delta"),
        (["oracle", *BIN, "--n", "abc", "--a", "1"], "--n"),
        (["compare", *BIN, "--a", "1"], "--n-grid"),
        (["simulate", *BIN, "--n", "10", "--a-grid", "1"], "--trials"),
        (["oracle", "--theta", "0.4,x", "--n", "3", "--a", "1"], "--theta"),
    ],
)
def test_usage_errors(capsys, argv, flag):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["oracle", *BIN, "--bogus", "1"])
    assert exc.value.code == 2 and "--bogus" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv, name",
    [
        (["oracle", "--theta", "0.4,0.7", "--n", "3", "--a", "1"], "NotNormalized"),
        (["oracle", "--theta", "0.5,0,0.5", "--n", "3", "--a", "1"], "NonPositiveProbability"),
        (["bound", *BIN, "--n", "100", "--a", "1", "--delta", "0.5", "--delta-prime", "0.1"], "DomainError"),
        (["oracle", "--theta", "0.2,0.3,0.5", "--n", "10000", "--a", "1"], "TooLarge"),
        (["profile", *BIN, "--n-grid", "1e6,1e7"], "InfeasibleGrid"),
    ],
)
def test_domain_errors(capsys, argv, name):
    code, _, err = run(capsys, *argv)
    assert code == 1 and name in err


def test_byte_identical_files(tmp_path):
    argv = ["simulate", *BIN, "--n", "50", "--trials", "5000", "--seed", "9", "--a-grid", "0.5,1,2", "--format", "csv"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main([*argv, "--out", str(first)]) == 0
    assert main([*argv, "--out", str(second)]) == 0
    data = first.read_bytes()
    assert data == second.read_bytes()
    assert b"\r" not in data and data.endswith(b"\n")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wilksbound.cli", "oracle", *BIN, "--n", "20", "--a", "1", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "value,half_width,method,trials,seed"

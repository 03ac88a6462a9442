import json
import subprocess
import sys

import pytest

from replicalc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_replicate_design(capsys):
    code, out, _ = run(capsys, "replicate", "--b", "1.96", "--sd", "10", "--n1", "100", "--n2", "100")
    assert code == 0
    assert out == "0.282972\n"


def test_replicate_infinite(capsys):
    _, out, _ = run(capsys, "replicate", "--b", "1.96", "--sd", "10", "--n1", "100", "--n2", "inf")
    assert float(out) == pytest.approx(0.5, abs=1e-4)
    _, out, _ = run(capsys, "replicate", "--p1", "0.05", "--two-sided", "--n2", "inf")
    assert out == "0.5\n"


def test_replicate_from_p(capsys):
    _, out, _ = run(capsys, "replicate", "--p1", "0.025")
    assert out == "0.282964\n"
    _, two, _ = run(capsys, "replicate", "--p1", "0.05", "--two-sided")
    assert two == out


def test_prep(capsys):
    assert run(capsys, "prep", "--p1", "0.025")[1] == "0.917112\n"
    assert run(capsys, "prep", "--p1", "0.025", "--infinite")[1] == "0.975\n"


def test_power_modes(capsys):
    code, out, _ = run(capsys, "power", "--b", "1.96", "--sd", "10", "--target-power", "0.8",
                       "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["n"] == 205 and rec["n_exact"] == pytest.approx(204.312779, abs=1e-6)
    _, out, _ = run(capsys, "power", "--b", "1.96", "--sd", "10", "--n", "205",
                    "--multiplicity", "3")
    assert out == "0.367022\n"
    _, out, _ = run(capsys, "power", "--b", "1.96", "--sd", "10", "--target-predictive", "0.8",
                    "--multiplicity", "3", "--design", "parallel", "--format", "json")
    rec = json.loads(out)
    assert rec["n"] == 613 and rec["parallel_total"] == 2452


def test_power_unreachable(capsys):
    code, _, err = run(capsys, "power", "--b", "1.96", "--sd", "10", "--target-predictive", "0.01")
    assert code == 3 and "error" in err
    code, _, _ = run(capsys, "power", "--b", "0", "--sd", "10", "--target-power", "0.8")
    assert code == 3


@pytest.mark.parametrize("argv", [
    ["replicate", "--p1", "0.025", "--b", "1"],
    ["replicate"],
    ["replicate", "--p1", "1.5"],
    ["replicate", "--p1", "0.025", "--n2", "50"],
    ["replicate", "--b", "1", "--sd", "-1", "--n1", "10", "--n2", "10"],
    ["power", "--b", "1", "--sd", "10"],
    ["power", "--b", "1", "--sd", "10", "--target-power", "0.8", "--multiplicity", "2"],
    ["discretize", "--delta", "0.3", "--lo", "0", "--hi", "1"],
    ["simulate", "--trials", "0", "--p1", "0.025"],
    ["curves", "--step", "0"],
    ["nope"],
    ["replicate", "--precision", "40", "--p1", "0.1"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_io_failure(capsys, tmp_path):
    code, _, err = run(capsys, "curves", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 4 and "I/O" in err


def test_empirical_table_formats(capsys):
    _, csv_out, _ = run(capsys, "table", "--which", "1", "--format", "csv")
    _, json_out, _ = run(capsys, "table", "--which", "1", "--format", "json")
    lines = csv_out.strip().split("\n")
    header = lines[0].split(",")
    rows = [dict(zip(header, ln.split(","))) for ln in lines[1:]]
    rec = json.loads(json_out)["rows"]
    assert len(rows) == len(rec) == 8
    for r, j in zip(rows, rec):
        for k in header:
            assert float(r[k]) == j[k]
    assert [r["predicted_eq5"] for r in rows] == \
        ["0.069", "0.11", "0.213", "0.283", "0.335", "0.445", "0.51", "0.643"]


def test_table2(capsys):
    _, out, _ = run(capsys, "table", "--which", "2", "--format", "json")
    rec = json.loads(out)
    assert [r["predictive_2"] for r in rec] == [0.283, 0.51, 0.8, 0.929]
    assert [r["parallel_total"] for r in rec] == [400, 820, 1636, 2452]
    assert "0.029" in rec[-1]["note"]


def test_env_format(capsys, monkeypatch):
    monkeypatch.setenv("REPLICALC_FORMAT", "json")
    _, out, _ = run(capsys, "prep", "--p1", "0.025")
    assert json.loads(out)["probability"] == 0.917112
    _, out, _ = run(capsys, "prep", "--p1", "0.025", "--format", "plain")
    assert out == "0.917112\n"


def test_precision(capsys):
    assert run(capsys, "prep", "--p1", "0.025", "--precision", "3")[1] == "0.917\n"


def test_discretize_stdout(capsys):
    _, out, _ = run(capsys, "discretize")
    lines = out.split("\n")
    assert lines[0] == "bin_lower_edge,mass" and len(lines) == 1202


def test_discretize_fine_grid(capsys, tmp_path):
    path = tmp_path / "d.csv"
    code, out, _ = run(capsys, "discretize", "--delta", "0.001", "--out", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["bins"] == 12000
    assert len(path.read_text().splitlines()) == 12001


def test_discretize_convolved_tail(capsys, tmp_path):
    code, out, _ = run(capsys, "discretize", "--mean", "1.96", "--convolve-sd", "1",
                       "--tail", "2.7718", "--out", str(tmp_path / "c.csv"), "--format", "json")
    rec = json.loads(out)
    assert rec["tail_at_or_above"] == pytest.approx(0.283, abs=1e-3)


def test_simulate(capsys):
    code, out, _ = run(capsys, "simulate", "--p1", "0.025", "--trials", "200000", "--seed", "3",
                       "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["closed_form"] == pytest.approx(0.282964, abs=1e-6)
    code, _, _ = run(capsys, "simulate", "--p1", "0.025", "--trials", "200000", "--mode", "rival")
    assert code == 0


def test_simulate_calibration_failure(capsys):
    # a vanishing tolerance cannot be met
    code, _, _ = run(capsys, "simulate", "--p1", "0.025", "--trials", "10000", "--max-z", "0")
    assert code == 5


def test_curves(capsys, tmp_path):
    _, out, _ = run(capsys, "curves")
    assert len(out.split("\n")) == 412
    path = tmp_path / "c.csv"
    run(capsys, "curves", "--out", str(path))
    assert path.read_text() == out


def test_console_script_is_byte_identical():
    cmd = [sys.executable, "-m", "replicalc.cli", "table", "--which", "2", "--format", "csv"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"n,power,")

import json
import subprocess
import sys

import pytest

from memvel import cli
from memvel.errors import ConvergenceError
from memvel.report import Check, VerificationReport

EVAL = ["eval", "--x", "t", "--alpha", "0.5", "--beta", "0.5", "--T", "1", "--t", "0.5"]


def run(argv, capsys):
    code = cli.run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_identity(capsys):
    code, out, _ = run(EVAL, capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["value"] == pytest.approx(1.0, abs=1e-12)
    assert set(payload["results"][0]) == {"t", "value", "coefficient", "integral", "quad_err"}


def test_eval_parse_error(capsys):
    code, out, err = run(["eval", "--x", "t^", "--alpha", "1", "--beta", "1", "--T", "1", "--t", "0.5"], capsys)
    assert code == 2 and out == ""
    assert "offset 2" in err


def test_verify_kernel_mass(capsys):
    code, out, _ = run(["verify", "--suite", "kernel-mass", "--T", "2"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1 and report["suite"] == "kernel-mass" and report["status"] == "pass"
    assert [c["status"] for c in report["checks"]] == ["pass", "pass"]
    assert set(report["checks"][0]) == {"name", "status", "worst_slack", "witness_t", "detail"}
    assert report["environment"]["quadrature"]["scheme"] == "jacobi"


def test_sweep_constant(capsys):
    code, out, _ = run(["sweep", "--x", "7", "--alpha", "0.3", "--beta", "0.8", "--T", "1", "--times", "0.2,0.6,1"],
                       capsys)
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "t,value,coefficient,integral,quad_err"
    assert lines[-1] == "" and len(lines) == 5
    assert [float(line.split(",")[1]) for line in lines[1:4]] == [0.0, 0.0, 0.0]


def test_sweep_identity_grid(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, out, _ = run(["sweep", "--x", "t", "--alpha", "0.5", "--beta", "0.5", "--T", "1",
                        "--start", "0", "--stop", "1", "--count", "3", "--output", str(path)], capsys)
    assert code == 0 and out == ""
    data = path.read_bytes()
    assert b"\r" not in data and b'"' not in data
    rows = data.decode().splitlines()[1:]
    assert [float(r.split(",")[0]) for r in rows] == [0.0, 0.5, 1.0]
    assert [float(r.split(",")[1]) for r in rows] == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)
    # 17 significant digits
    assert rows[1].split(",")[2] == format(float(rows[1].split(",")[2]), ".17g")


def test_sweep_json(capsys):
    code, out, _ = run(["sweep", "--x", "t", "--alpha", "1", "--beta", "1", "--T", "1", "--times", "0.5,1",
                        "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert [r["t"] for r in payload["results"]] == [0.5, 1.0] and "value" not in payload


def test_config_file_and_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"x_expr": "t^2", "alpha_expr": "0.5", "beta_expr": "0.5", "T": 1.0,
                               "times": [0.5], "quadrature": {"order": 32}}))
    code, out, _ = run(["eval", "--config", str(cfg)], capsys)
    assert code == 0
    from_config = json.loads(out)
    assert from_config["inputs"]["x"] == "t^2"
    assert from_config["environment"]["quadrature"]["order"] == 32

    code, out, _ = run(["eval", "--config", str(cfg), "--x", "t", "--order", "16"], capsys)
    overridden = json.loads(out)
    assert overridden["inputs"]["x"] == "t" and overridden["value"] == pytest.approx(1.0, abs=1e-12)
    assert overridden["environment"]["quadrature"]["order"] == 16


def test_sweep_grid_from_config(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"x_expr": "t", "alpha_expr": "0.5", "beta_expr": "0.5", "T": 2.0,
                               "times": {"start": 0.5, "stop": 2.0, "count": 4}}))
    code, out, _ = run(["sweep", "--config", str(cfg), "--count", "2"], capsys)
    assert code == 0
    assert [line.split(",")[0] for line in out.splitlines()[1:]] == ["0.5", "2"]


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["eval", "--x", "t", "--T", "1", "--t", "0.5"],
    ["eval", "--x", "t", "--alpha", "1.5", "--beta", "1", "--T", "1", "--t", "0.5"],
    ["eval", "--x", "t", "--alpha", "1", "--beta", "1", "--T", "-1", "--t", "0.5"],
    ["eval", "--x", "log(t)", "--alpha", "1", "--beta", "1", "--T", "1", "--t", "0.5"],
    ["eval", "--x", "t", "--alpha", "1", "--beta", "1", "--T", "1"],
    ["eval", "--x", "t", "--alpha", "1", "--beta", "1", "--T", "1", "--t", "0.5", "--order", "2"],
    ["eval", "--x", "t", "--alpha", "1", "--beta", "1", "--T", "1", "--t", "1.5"],
    ["sweep", "--x", "t", "--alpha", "1", "--beta", "1", "--T", "1", "--times", "a,b"],
    ["verify", "--suite", "nonsense"],
    ["eval", "--config", "/nonexistent/run.json"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err.strip()


def test_bad_config_contents(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["eval", "--config", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"x_expr": "t", "colour": "blue"}))
    code, _, err = run(["eval", "--config", str(bad)], capsys)
    assert code == 2 and "colour" in err


def test_unwritable_output(capsys, tmp_path):
    code, _, err = run(EVAL + ["--output", str(tmp_path / "missing" / "out.json")], capsys)
    assert code == 2 and "missing" in err


def test_numerical_failure_exit_code(capsys, monkeypatch):
    def fail(*args, **kwargs):
        raise ConvergenceError("forced", value=0.0, err_estimate=1.0)

    monkeypatch.setattr("memvel.operator.integrate_singular", fail)
    code, out, err = run(EVAL, capsys)
    assert code == 3 and "forced" in err
    assert json.loads(out)["failures"][0]["t"] == 0.5


def test_numerical_failure_in_verify(capsys, monkeypatch):
    def fail(name, **kwargs):
        raise ConvergenceError("forced")

    monkeypatch.setattr(cli, "run_suite", fail)
    assert run(["verify", "--suite", "recovery"], capsys)[0] == 3


def test_verification_failure_exit_code(capsys, monkeypatch):
    def failing(name, **kwargs):
        return VerificationReport(name, [Check("forced", False, -1.0, 0.5, "forced failure")])

    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(["verify", "--suite", "midpoint"], capsys)
    assert code == 1
    report = json.loads(out)
    assert report["status"] == "fail" and report["checks"][0]["witness_t"] == 0.5


def test_verify_several_suites_and_csv(capsys):
    code, out, _ = run(["verify", "--suite", "midpoint,recovery", "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "check,status,worst_slack,witness_t"
    # canonical suite order, prefixed names
    assert lines[1].startswith("recovery/") and lines[-1].startswith("midpoint/")


def test_infinite_slack_serialises_as_null(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda name, **kw: VerificationReport(name, [Check("c", True)]))
    code, out, _ = run(["verify", "--suite", "appendix"], capsys)
    assert code == 0 and json.loads(out)["checks"][0]["worst_slack"] is None


def test_deterministic_output(tmp_path):
    outputs = []
    for i in range(2):
        csv_path, json_path = tmp_path / f"a{i}.csv", tmp_path / f"a{i}.json"
        base = ["--x", "exp(-t)*sin(3*t)", "--alpha", "0.5+0.4*sin(t)", "--beta", "0.7", "--T", "2"]
        assert cli.run(["sweep", *base, "--start", "0", "--stop", "2", "--count", "9", "--output", str(csv_path)]) == 0
        assert cli.run(["verify", "--suite", "envelopes", "--output", str(json_path)]) == 0
        outputs.append((csv_path.read_bytes(), json_path.read_bytes()))
    assert outputs[0] == outputs[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "memvel.cli", *EVAL], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == pytest.approx(1.0, abs=1e-12)
    proc = subprocess.run([sys.executable, "-m", "memvel.cli", "eval", "--x", "t^"], capture_output=True, text=True)
    assert proc.returncode == 2

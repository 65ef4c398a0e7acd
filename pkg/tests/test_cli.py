import json
import subprocess
import sys

import pytest

from ybverify.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_pass_exit_zero(capsys):
    code, out, err = run_cli(["check", "ybe", "--d", "2"], capsys)
    assert code == 0
    payload = json.loads(out.strip())
    assert payload["status"] == "pass"
    assert payload["check"] == "ybe"
    assert "ok" in err


def test_check_fail_exit_one(capsys):
    code, out, _ = run_cli(["check", "ybe", "--d", "4", "--perturb-k", "2"], capsys)
    assert code == 1
    payload = json.loads(out.strip())
    assert payload["status"] == "fail"
    assert "at entry" in payload["detail"]


def test_unknown_check_exit_two(capsys):
    with pytest.raises(SystemExit) as err:
        main(["check", "nonsense"])
    assert err.value.code == 2


def test_pole_is_config_error(capsys):
    code, _, err = run_cli(["check", "ybe", "--d", "4", "--u", "-2",
                            "--norm", "unit"], capsys)
    assert code == 2
    assert "error" in err


def test_bad_fraction_exit_two(capsys):
    with pytest.raises(SystemExit) as err:
        main(["check", "ybe", "--u", "0.5x"])
    assert err.value.code == 2


def test_run_default_suite_small(capsys):
    code, out, err = run_cli(["run", "--all", "--d-list", "2"], capsys)
    assert code == 0, err
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert all(item["status"] in ("pass", "skipped") for item in lines)
    assert any(item["check"] == "ybe" for item in lines)
    assert any(item["check"] == "d6_reduction" for item in lines)


def test_run_byte_identical(capsys):
    code1, out1, _ = run_cli(["run", "--all", "--d-list", "2"], capsys)
    code2, out2, _ = run_cli(["run", "--all", "--d-list", "2"], capsys)
    assert code1 == code2 == 0
    assert out1 == out2


def test_run_timings_flag(capsys):
    _, out, _ = run_cli(["check", "exchange_identities", "--d", "4", "--timings"],
                        capsys)
    payload = json.loads(out.strip())
    assert payload["elapsed_ms"] >= 0
    _, out, _ = run_cli(["check", "exchange_identities", "--d", "4"], capsys)
    assert json.loads(out.strip())["elapsed_ms"] == 0


def test_run_suite_file(tmp_path, capsys):
    suite = [
        {"check": "ybe", "params": {"d": 2, "u": "1/2", "v": "1/3"}},
        {"check": "unitarity", "params": {"d": 2, "u": "1/3", "norm": "product"}},
        {"check": "asym", "params": {"d": 4, "quantum": "spinor"}},
    ]
    path = tmp_path / "suite.json"
    path.write_text(json.dumps(suite))
    code, out, _ = run_cli(["run", "--suite", str(path)], capsys)
    assert code == 1  # the spinor asym verdict is a recorded FAIL
    lines = [json.loads(line) for line in out.strip().splitlines()]
    # aggregation is sorted by check id, then params
    assert [(item["check"], item["status"]) for item in lines] \
        == [("asym", "fail"), ("unitarity", "pass"), ("ybe", "pass")]


def test_run_suite_unknown_check(tmp_path, capsys):
    path = tmp_path / "suite.json"
    path.write_text(json.dumps([{"check": "bogus"}]))
    code, _, err = run_cli(["run", "--suite", str(path)], capsys)
    assert code == 2


def test_run_suite_corrupted_coefficient_fixture(tmp_path, capsys):
    # negative-control fixture: one intentionally corrupted coefficient
    suite = [{"check": "ybe",
              "params": {"d": 4, "u": "1/2", "v": "1/3", "perturb_k": 3}}]
    path = tmp_path / "suite.json"
    path.write_text(json.dumps(suite))
    code, out, _ = run_cli(["run", "--suite", str(path)], capsys)
    assert code == 1
    payload = json.loads(out.strip())
    assert payload["status"] == "fail"
    assert "at entry (" in payload["detail"]


def test_budget_flag_skips(capsys):
    code, out, _ = run_cli(["check", "ybe", "--d", "4", "--budget-dim", "50"], capsys)
    assert code == 0
    assert json.loads(out.strip())["status"] == "skipped"


def test_dump_gamma(capsys):
    code, out, _ = run_cli(["dump", "gamma", "--d", "2"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert len(payload["gammas"]) == 2
    assert payload["gamma5"]["entries"] == [[0, 0, "1"], [1, 1, "-1"]]
    assert payload["alpha"] == "-1*i"


def test_dump_coeffs(capsys):
    code, out, _ = run_cli(["dump", "coeffs", "--d", "6", "--norm", "d6paper",
                            "--u", "1"], capsys)
    assert code == 0
    assert json.loads(out)["values"] == ["5/8", "0", "-1/8", "0", "1/8", "0", "-5/8"]
    _, out, _ = run_cli(["dump", "coeffs", "--d", "4", "--norm", "unit",
                         "--u", "1"], capsys)
    assert json.loads(out)["values"] == ["1", "1", "-1/3", "-1", "1"]


def test_dump_rmatrix_and_schema(capsys):
    code, out, _ = run_cli(["dump", "rmatrix", "--d", "2", "--u", "1",
                            "--norm", "product"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["matrix"]["dim"] == 4
    code, out, _ = run_cli(["dump", "report-schema"], capsys)
    assert code == 0
    assert json.loads(out)["schema"] == 1


def test_dump_deterministic(capsys):
    _, out1, _ = run_cli(["dump", "gamma", "--d", "4"], capsys)
    _, out2, _ = run_cli(["dump", "gamma", "--d", "4"], capsys)
    assert out1 == out2


def test_table_format(capsys):
    code, out, err = run_cli(["check", "ybe", "--d", "2", "--format", "table"],
                             capsys)
    assert code == 0
    assert out.startswith("ok")
    assert not err


def test_jobs_parallel(capsys):
    code, out, _ = run_cli(["run", "--all", "--d-list", "2", "--jobs", "2"], capsys)
    assert code == 0


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "ybverify.cli", "dump", "coeffs", "--d", "6",
         "--norm", "d6paper", "--u", "1"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["values"][0] == "5/8"

"""Command-line interface: exit codes, JSON shape, config handling."""

import json
import subprocess
import sys

from trigpos.cli import main

REPORT_KEYS = {"case", "inputs", "method", "status", "checks", "reference",
               "wall_time_s"}


def test_mustar_boundary_passes(capsys):
    assert main(["mustar", "1.0"]) == 0
    out = capsys.readouterr().out
    assert "status: PASS" in out
    assert "enclosure" in out


def test_mustar_rejects_bad_rho(capsys):
    for bad in ("1.5", "0", "-0.3", "abc"):
        assert main(["mustar", bad]) == 2
        assert "error:" in capsys.readouterr().err


def test_mustar_rejects_bad_width(capsys):
    assert main(["mustar", "0.5", "--width=-1e-9"]) == 2
    assert "width" in capsys.readouterr().err


def test_unknown_case_is_usage_error(capsys):
    assert main(["verify", "nonsense"]) == 2
    assert main(["verify", "sturm:zz"]) == 2
    assert main(["verify", "bounds:99"]) == 2
    capsys.readouterr()


def test_sturm_q3_passes(capsys):
    assert main(["verify", "sturm:q3"]) == 0
    out = capsys.readouterr().out
    assert "status: PASS" in out


def test_sturm_p_near_0_reports_failure(capsys):
    # the labeled-point check at the negative special point cannot pass;
    # the standalone case gates on it, so the exit code must be 1
    assert main(["verify", "sturm:P-near-0"]) == 1
    out = capsys.readouterr().out
    assert "status: FAIL" in out


def test_bounds_master_json_shape(capsys):
    assert main(["verify", "bounds:master", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == REPORT_KEYS
    assert payload["case"] == "bounds:master"
    assert payload["status"] == "pass"
    assert isinstance(payload["wall_time_s"], float)
    assert payload["checks"], "checks must not be empty"
    for chk in payload["checks"]:
        assert {"check_id", "status", "value", "error", "detail"} <= set(chk)
        assert chk["status"] in ("pass", "fail", "inconclusive")


def test_json_output_is_deterministic(capsys):
    def run():
        assert main(["verify", "bounds:master", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        data.pop("wall_time_s")
        return json.dumps(data, sort_keys=True)

    assert run() == run()


def test_config_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"lam": 0.5, "nmax": 8}))
    # config alone pushes the scan past the valid exponent range -> failure
    assert main(["verify", "gegenbauer", "--config", str(cfg)]) == 1
    capsys.readouterr()
    # an explicit flag beats the config value
    assert main(["verify", "gegenbauer", "--config", str(cfg),
                 "--lam", "0.24"]) == 0
    capsys.readouterr()


def test_config_errors_are_usage_errors(tmp_path, capsys):
    assert main(["verify", "gegenbauer", "--config",
                 str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert main(["verify", "gegenbauer", "--config", str(bad)]) == 2
    capsys.readouterr()


def test_nmax_guard(capsys):
    assert main(["verify", "gegenbauer", "--nmax", "0"]) == 2
    capsys.readouterr()


def test_module_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "trigpos.cli", "verify", "sturm:q1"],
        capture_output=True, text=True, timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    assert "status: PASS" in proc.stdout

import json

import pytest

from cosmopair import cli
from cosmopair.bogoliubov import Scenario


def test_parse_grid_step_form():
    grid = cli.parse_grid("0:4:0.1")
    assert len(grid) == 41
    assert grid[0] == 0.0 and grid[-1] == 4.0
    assert abs(grid[13] - 1.3) <= 1e-12


def test_parse_grid_list_and_scalar():
    assert cli.parse_grid("0,0.5,1") == [0.0, 0.5, 1.0]
    assert cli.parse_grid("2") == [2.0]


def test_parse_grid_errors():
    for bad in ("", "1:2", "1:2:-1", "3:1:0.5"):
        with pytest.raises(ValueError):
            cli.parse_grid(bad)


def test_parse_momentum_grid_log():
    grid = cli.parse_momentum_grid("log:0.1:10:30")
    assert len(grid) == 30
    assert abs(grid[0] - 0.1) <= 1e-15
    assert abs(grid[-1] - 10.0) <= 1e-12
    ratios = [grid[k + 1] / grid[k] for k in range(29)]
    assert max(ratios) - min(ratios) <= 1e-12


def test_state_tokens_round_trip():
    for token, occ in (("vac", 0), ("up.up", 0b0101), ("updown.0", 0b0011),
                       ("down.updown", 0b1110), ("0.down", 0b1000)):
        assert cli.state_token_to_occupation(token, Scenario.CHARGE_ONLY) == occ
    assert cli.state_token_to_occupation("1.1", Scenario.SPINLESS) == 0b11
    assert cli.occupation_to_state_token(0b0101, Scenario.CHARGE_ONLY) == "up.up"
    assert cli.occupation_to_state_token(0b10, Scenario.SPINLESS) == "0.1"


def test_state_token_errors():
    with pytest.raises(ValueError):
        cli.state_token_to_occupation("up", Scenario.CHARGE_ONLY)
    with pytest.raises(ValueError):
        cli.state_token_to_occupation("up.up", Scenario.SPINLESS)


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    code = cli.main(["sweep", "--scenario", "spin-am", "--state", "vac",
                     "--n", "0:4:0.1", "--output", str(out)])
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "scenario,input_state,n,lambda,S_numeric,S_closed,discrepancy"
    assert len(lines) == 42
    row = lines[21].split(",")
    assert row[0] == "spin-am" and row[1] == "0.0"
    assert abs(float(row[2]) - 2.0) <= 1e-12
    assert abs(float(row[4]) - 2.0) <= 1e-10


def test_sweep_spinless_maximum(capsys):
    code = cli.main(["sweep", "--scenario", "spinless", "--state", "vac", "--n", "1"])
    assert code == 0
    body = capsys.readouterr().out.strip().split("\n")
    value = float(body[1].split(",")[4])
    assert abs(value - 1.0) <= 1e-10


def test_sweep_json_schema(tmp_path):
    out = tmp_path / "sweep.json"
    code = cli.main(["sweep", "--scenario", "charge", "--state", "up.up", "--n", "2",
                     "--lambda", "0.5", "--format", "json", "--output", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["schema_version"] == 1
    assert payload["command"] == "sweep"
    assert len(payload["rows"]) == 1
    row = payload["rows"][0]
    assert row["input_state"] == "up.up"
    assert row["discrepancy"] <= 1e-10


def test_sweep_exit_one_on_tolerance_breach(tmp_path, capsys):
    code = cli.main(["sweep", "--scenario", "charge", "--state", "vac", "--n",
                     "0.5,1.5", "--lambda", "0.5", "--tolerance", "1e-30",
                     "--output", str(tmp_path / "x.csv")])
    assert code == 1
    assert "exceed tolerance" in capsys.readouterr().err


def test_sweep_rejects_bad_state():
    with pytest.raises(SystemExit) as err:
        cli.main(["sweep", "--scenario", "spinless", "--state", "up.up", "--n", "1"])
    assert err.value.code == 2


def test_sweep_missing_lambda_for_charge_only():
    with pytest.raises(SystemExit) as err:
        cli.main(["sweep", "--scenario", "charge", "--state", "vac", "--n", "1"])
    assert err.value.code == 2


def test_config_file_expansion(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("scenario=spinless\nstate=vac\nn=1\n")
    out = tmp_path / "out.csv"
    code = cli.main(["sweep", "--config", str(config), "--output", str(out)])
    assert code == 0
    assert "spinless" in out.read_text()


def test_config_file_overridden_by_flags(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("scenario=spinless\nstate=vac\nn=1\n")
    out = tmp_path / "out.csv"
    code = cli.main(["sweep", "--config", str(config), "--n", "2", "--output", str(out)])
    assert code == 0
    assert out.read_text().strip().split("\n")[1].split(",")[2] == "2"


def test_dynamics_constant_profile(tmp_path):
    out = tmp_path / "dyn.csv"
    code = cli.main(["dynamics", "--profile", "constant", "--p-grid", "0.5,1.0",
                     "--tol", "1e-9", "--output", str(out)])
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].startswith("p,A,beta_uu")
    for line in lines[1:]:
        fields = line.split(",")
        assert fields[-1] == "ok"
        assert float(fields[6]) <= 1e-8   # n_created
        assert float(fields[8]) <= 1e-6   # S_numeric


def test_dynamics_json(tmp_path):
    out = tmp_path / "dyn.json"
    code = cli.main(["dynamics", "--profile", "tanh", "--epsilon", "1", "--rho", "1",
                     "--mass", "1", "--p-grid", "1.0", "--tol", "1e-9",
                     "--format", "json", "--output", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["schema_version"] == 1
    row = payload["rows"][0]
    assert row["status"] == "ok"
    assert row["norm_residual"] <= 1e-6
    assert row["discrepancy"] <= 1e-6


def test_verify_text_deterministic(tmp_path):
    first = tmp_path / "report1.txt"
    second = tmp_path / "report2.txt"
    assert cli.main(["verify", "--batch", "5", "--output", str(first)]) == 0
    assert cli.main(["verify", "--batch", "5", "--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert "checks passed" in first.read_text()


def test_verify_json_report(tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(["verify", "--batch", "5", "--report", "json",
                     "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["schema_version"] == 1
    assert payload["all_passed"] is True
    assert all("residual" in c for c in payload["checks"])


def test_dynamics_exit_one_on_failing_point(tmp_path, capsys):
    # massless zero-momentum mode has no out-region frequency to match
    out = tmp_path / "dyn.csv"
    code = cli.main(["dynamics", "--profile", "tanh", "--mass", "0",
                     "--p-grid", "0,1", "--tol", "1e-9", "--output", str(out)])
    assert code == 1
    lines = out.read_text().strip().split("\n")
    assert any("error" in line for line in lines[1:])
    assert any(line.endswith("ok") for line in lines[1:])
    assert "failed" in capsys.readouterr().err


def test_workers_env_override(tmp_path, monkeypatch):
    out = tmp_path / "env.csv"
    monkeypatch.setenv(cli.WORKERS_ENV_VAR, "2")
    code = cli.main(["sweep", "--scenario", "spinless", "--state", "vac",
                     "--n", "0:2:0.5", "--output", str(out)])
    assert code == 0
    assert len(out.read_text().strip().split("\n")) == 6


def test_workers_flag_changes_nothing(tmp_path):
    serial = tmp_path / "serial.csv"
    pooled = tmp_path / "pooled.csv"
    args = ["sweep", "--scenario", "spin-am", "--state", "vac", "--n", "0:4:0.5"]
    assert cli.main(args + ["--workers", "1", "--output", str(serial)]) == 0
    assert cli.main(args + ["--workers", "4", "--output", str(pooled)]) == 0
    assert serial.read_bytes() == pooled.read_bytes()

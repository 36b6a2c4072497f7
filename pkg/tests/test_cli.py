"""Command line front end: exit codes, output formats, determinism."""

from __future__ import annotations

import csv
import json
import math
import os
import subprocess
import sys

import pytest

from chaplab.cli import main

SYMMETRIC = {
    "rho_l": 1.0,
    "u_l": 1.0,
    "rho_r": 1.0,
    "u_r": -1.0,
    "A": 1.0,
    "B": 1.0,
}


def _config(tmp_path, name="prob.json", **overrides):
    cfg = dict(SYMMETRIC)
    cfg.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


def _rows(text):
    return list(csv.DictReader(text.splitlines()))


# ------------------------------------------------------------------ solve


def test_solve_reports_two_shocks_for_symmetric_collision(tmp_path, capsys):
    assert main(["solve", "--config", _config(tmp_path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["region"] == "IV"
    assert doc["intermediate"]["v_star"] == pytest.approx(0.0, abs=1e-13)
    kinds = [(w["kind"], w["family"]) for w in doc["waves"]]
    assert kinds == [("shock", 1), ("shock", 2)]
    for w in doc["waves"]:
        assert max(abs(r) for r in w["rh_residual"]) < 1e-9


def test_solve_json_is_sorted_and_newline_terminated(tmp_path, capsys):
    main(["solve", "--config", _config(tmp_path)])
    text = capsys.readouterr().out
    assert text == json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n"


def test_solve_identical_states_has_empty_wave_list(tmp_path, capsys):
    path = _config(tmp_path, u_l=0.3, u_r=0.3, rho_l=1.5, rho_r=1.5)
    assert main(["solve", "--config", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["waves"] == []
    assert doc["intermediate"]["rho_star"] == 1.5
    assert "identical states" in doc["notes"]


def test_solve_writes_output_file(tmp_path, capsys):
    out = tmp_path / "sol.json"
    assert main(["solve", "--config", _config(tmp_path), "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["region"] == "IV"


# ------------------------------------------------------------- exit codes


def test_missing_config_file_is_a_usage_error(tmp_path, capsys):
    assert main(["solve", "--config", str(tmp_path / "nope.json")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_malformed_json_is_a_usage_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["solve", "--config", str(path)]) == 2


@pytest.mark.parametrize(
    "mutation, fragment",
    [
        ({"extra_key": 1.0}, "unknown config keys"),
        ({"rho_l": None}, "missing config keys"),
        ({"rho_l": True}, "must be a number"),
        ({"u_l": "fast"}, "must be a number"),
    ],
)
def test_bad_config_shapes_are_usage_errors(tmp_path, capsys, mutation, fragment):
    cfg = dict(SYMMETRIC)
    for key, value in mutation.items():
        if value is None:
            cfg.pop(key)
        else:
            cfg[key] = value
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    assert main(["solve", "--config", str(path)]) == 2
    assert fragment in capsys.readouterr().err


def test_nonpositive_density_error_names_the_invariant(tmp_path, capsys):
    assert main(["solve", "--config", _config(tmp_path, rho_l=0.0)]) == 2
    err = capsys.readouterr().err
    assert "invalid input" in err and "density" in err


def test_profile_rejects_nonpositive_time(tmp_path, capsys):
    assert main(["profile", "--config", _config(tmp_path), "--t", "0"]) == 2


def test_limit_rejects_equal_velocity_data(tmp_path, capsys):
    path = _config(tmp_path, u_l=0.5, u_r=0.5)
    assert main(["limit", "--config", path, "--schedule", "1e-1:1e-3:geometric"]) == 2
    assert "concentrates" in capsys.readouterr().err


def test_phaseplane_rejects_degenerate_pressure(tmp_path, capsys):
    assert main(["phaseplane", "--config", _config(tmp_path, A=0.0, B=0.0)]) == 2


@pytest.mark.parametrize(
    "schedule",
    ["1e-1:1e-8:linear", "1e-1:geometric", "1e-1:1e-8:geometric:x"],
)
def test_schedule_parse_errors(tmp_path, capsys, schedule):
    assert main(["limit", "--config", _config(tmp_path), "--schedule", schedule]) == 2


def test_sweep_failure_is_a_numerical_error(tmp_path, capsys):
    code = main(
        ["limit", "--config", _config(tmp_path), "--schedule", "1e-1:1e-290:geometric:2"]
    )
    assert code == 3
    assert "numerical failure" in capsys.readouterr().err


def test_unconverged_sweep_exits_four_but_writes_the_report(tmp_path, capsys):
    out = tmp_path / "verdict.json"
    code = main(
        [
            "limit",
            "--config",
            _config(tmp_path),
            "--schedule",
            "1e-1:1e-2:geometric",
            "--out",
            str(out),
        ]
    )
    assert code == 4
    doc = json.loads(out.read_text())
    assert doc["all_ok"] is False
    assert doc["kind"] == "concentration"


# ---------------------------------------------------------------- profile


def test_profile_constant_state_rows_carry_the_friction_drift(tmp_path, capsys):
    path = _config(tmp_path, rho_l=1.3, u_l=0.4, rho_r=1.3, u_r=0.4, beta=0.5)
    assert main(["profile", "--config", path, "--t", "2.0", "--samples", "11"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 11
    for row in rows:
        assert float(row["rho"]) == 1.3
        assert float(row["u"]) == pytest.approx(0.4 + 0.5 * 2.0, rel=1e-15)


def test_profile_pure_chaplygin_plateau_at_half_density(tmp_path, capsys):
    path = _config(tmp_path, u_l=-1.0, u_r=1.0, A=0.0, B=1.0)
    assert main(["profile", "--config", path, "--t", "1.0", "--samples", "201"]) == 0
    rows = _rows(capsys.readouterr().out)
    mid = [r for r in rows if abs(float(r["x"])) < 0.2]
    assert mid
    for row in mid:
        assert float(row["rho"]) == pytest.approx(0.5, rel=1e-9)


def test_profile_marks_vacuum_with_zero_density_and_nan_velocity(tmp_path, capsys):
    path = _config(tmp_path, u_l=-3.0, u_r=3.0, A=1.0, B=0.0, n=2.0)
    assert main(
        ["profile", "--config", path, "--t", "1.0", "--xmin", "-4", "--xmax", "4"]
    ) == 0
    rows = _rows(capsys.readouterr().out)
    vac = [r for r in rows if float(r["rho"]) == 0.0]
    assert vac
    for row in vac:
        assert math.isnan(float(row["u"]))


def test_profile_is_self_similar_without_friction(tmp_path, capsys):
    path = _config(tmp_path)
    main(["profile", "--config", path, "--t", "1.0", "--xmin", "-2", "--xmax", "2"])
    early = _rows(capsys.readouterr().out)
    main(["profile", "--config", path, "--t", "2.0", "--xmin", "-4", "--xmax", "4"])
    late = _rows(capsys.readouterr().out)
    for a, b in zip(early, late):
        assert float(b["x"]) == 2.0 * float(a["x"])
        assert b["rho"] == a["rho"]
        assert b["u"] == a["u"]


# ------------------------------------------------------- csv output shapes


def test_phaseplane_covers_all_four_curves_through_the_anchor(tmp_path, capsys):
    assert main(["phaseplane", "--config", _config(tmp_path), "--samples", "33"]) == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0] == "curve,rho,v"
    rows = _rows(text)
    by_curve = {}
    for row in rows:
        by_curve.setdefault(row["curve"], []).append(row)
    assert sorted(by_curve) == ["R1", "R2", "S1", "S2"]
    assert all(len(v) == 33 for v in by_curve.values())
    # the R1 branch ends at the anchor itself
    last = by_curve["R1"][-1]
    assert float(last["rho"]) == pytest.approx(1.0, rel=1e-12)
    assert float(last["v"]) == pytest.approx(1.0, rel=1e-12)


def test_fv_profile_shape_and_header(tmp_path, capsys):
    code = main(
        ["fv", "--config", _config(tmp_path), "--t", "0.1", "--cells", "40",
         "--xmin", "-1", "--xmax", "1"]
    )
    assert code == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0] == "x,rho,u"
    rows = _rows(text)
    assert len(rows) == 40
    assert float(rows[0]["x"]) == pytest.approx(-1.0 + 0.025, rel=1e-12)
    # ~10 steps spread at most 10 cells inward; the edge cell is untouched
    assert float(rows[0]["rho"]) == 1.0


def test_limit_records_csv_has_the_full_column_set(tmp_path, capsys):
    records = tmp_path / "records.csv"
    code = main(
        [
            "limit",
            "--config",
            _config(tmp_path),
            "--schedule",
            "1e-1:1e-8:geometric",
            "--records-out",
            str(records),
            "--out",
            str(tmp_path / "v.json"),
        ]
    )
    assert code == 0
    header = records.read_text().splitlines()[0]
    assert header == "A,B,rho_star,v_star,sigma1_0,sigma2_0,mass_rate,momentum_rate,a_rho_n"
    assert len(records.read_text().splitlines()) == 9


def test_limit_mode_a_reports_the_fixed_b_concentration(tmp_path, capsys):
    path = _config(tmp_path, rho_l=1.0, u_l=3.0, rho_r=4.0, u_r=0.0)
    code = main(
        ["limit", "--config", path, "--mode", "A", "--schedule", "1e-1:1e-8:geometric"]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mode"] == "A" and doc["kind"] == "concentration"
    assert doc["verdicts"]["v_star"]["target"] == pytest.approx(0.9364916731037084)
    assert doc["all_ok"] is True


# ------------------------------------------------------------ determinism


def test_repeated_runs_are_byte_identical(tmp_path, capsys):
    cfg = _config(tmp_path)
    outputs = []
    for _ in range(2):
        assert main(["solve", "--config", cfg]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]

    limit_outputs = []
    records_outputs = []
    for i in range(2):
        rec = tmp_path / f"rec{i}.csv"
        out = tmp_path / f"out{i}.json"
        assert main(
            ["limit", "--config", cfg, "--schedule", "1e-1:1e-6:geometric",
             "--records-out", str(rec), "--out", str(out)]
        ) in (0, 4)
        limit_outputs.append(out.read_bytes())
        records_outputs.append(rec.read_bytes())
    assert limit_outputs[0] == limit_outputs[1]
    assert records_outputs[0] == records_outputs[1]


def test_module_entry_point_logs_when_asked(tmp_path):
    env = dict(os.environ, CHAPLYGIN_LOG="info")
    out = subprocess.run(
        [sys.executable, "-m", "chaplab.cli", "solve", "--config", _config(tmp_path)],
        env=env,
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["region"] == "IV"
    assert "INFO" in out.stderr

"""Command-line interface: run, check, gaugefix."""

import csv
import json
import subprocess

import numpy as np
import pytest

import swflow.checks
from swflow.cli import main, parse_scalar_curvature
from swflow.clifford import CliffordTable, standard_table
from swflow.fields import load_configuration, random_configuration, save_configuration
from swflow.functional import energy_weitzenbock
from swflow.lattice import Lattice, codiff1, l2_norm

HEADER = "iter,energy,grad_norm,phi_linf,excess_measure,radial_excess,gauge_step_distance"


def write_config(path, **overrides):
    config = {
        "dims": [3, 3, 3, 3],
        "spacing": 1.5,
        "scalar_curvature": "constant:-1",
        "seed": 5,
        "amplitudes": {"a": 0.3, "phi": 1.0},
        "minimize": {"max_iters": 5, "grad_tol": 1e-12, "gaugefix_every": 2},
        "output_dir": str(path.parent / "out"),
    }
    config.update(overrides)
    path.write_text(json.dumps(config))
    return config


def test_run_writes_history_final_and_summary(tmp_path, capsys):
    cfg_path = tmp_path / "exp.json"
    config = write_config(cfg_path)
    assert main(["run", str(cfg_path)]) == 0
    out = tmp_path / "out"

    lines = (out / "history.csv").read_text().splitlines()
    assert lines[0] == HEADER
    assert len(lines) == 2 + 5  # header, iterate 0, five iterations
    rows = list(csv.DictReader(lines))
    energies = [float(r["energy"]) for r in rows]
    assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))

    final = load_configuration(out / "final.json")
    assert final.lattice == Lattice((3, 3, 3, 3), 1.5)

    summary = json.loads((out / "summary.json").read_text())
    assert set(summary) == {"reason", "iterations", "wall_time_seconds", "final", "config"}
    assert summary["reason"] == "max_iters"
    assert summary["iterations"] == 5
    assert set(summary["final"]) == {
        "energy", "grad_norm", "phi_linf", "threshold",
        "excess_measure", "radial_excess", "eta_norm",
    }
    assert summary["config"] == config
    assert "max_iters after 5 iterations" in capsys.readouterr().out


def test_run_with_max_iters_zero_emits_single_row(tmp_path):
    cfg_path = tmp_path / "exp.json"
    write_config(cfg_path, minimize={"max_iters": 0})
    assert main(["run", str(cfg_path)]) == 0
    lines = (tmp_path / "out" / "history.csv").read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == HEADER
    assert lines[1].startswith("0,")


def test_run_missing_config_exits_2_without_outputs(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.json")]) == 2
    assert list(tmp_path.iterdir()) == []
    assert "not found" in capsys.readouterr().err


@pytest.mark.parametrize(
    "overrides",
    [
        dict(dims=[1, 3, 3, 3]),
        dict(scalar_curvature="blob:1"),
        dict(minimize={"max_iters": 5, "method": "newton"}),
        dict(amplitudes={"a": -0.1, "phi": 0.5}),
    ],
)
def test_run_rejects_bad_config(tmp_path, capsys, overrides):
    cfg_path = tmp_path / "exp.json"
    write_config(cfg_path, **overrides)
    assert main(["run", str(cfg_path)]) == 2
    assert not (tmp_path / "out").exists()
    assert capsys.readouterr().err


def test_run_is_deterministic(tmp_path):
    for name in ("one", "two"):
        cfg_path = tmp_path / f"{name}.json"
        write_config(cfg_path, output_dir=str(tmp_path / name))
        assert main(["run", str(cfg_path)]) == 0
    first = (tmp_path / "one" / "history.csv").read_bytes()
    second = (tmp_path / "two" / "history.csv").read_bytes()
    assert first == second


def test_run_bump_profile(tmp_path):
    cfg_path = tmp_path / "exp.json"
    write_config(
        cfg_path,
        dims=[4, 4, 4, 4],
        spacing=1.0,
        scalar_curvature="bump:-2.0,1.0",
        minimize={"max_iters": 0},
    )
    assert main(["run", str(cfg_path)]) == 0
    final = load_configuration(tmp_path / "out" / "final.json")
    s = final.scalar_curvature
    assert s[2, 2, 2, 2] == pytest.approx(-2.0)
    assert abs(s[0, 0, 0, 0]) <= 1e-6
    assert np.all(s <= 0.0)


def test_run_maximum_principle_experiment(tmp_path):
    # the full 6^4 negative-curvature experiment through the CLI: the
    # converged spinor must sit under the maximum-principle ceiling
    cfg_path = tmp_path / "exp.json"
    write_config(
        cfg_path,
        dims=[6, 6, 6, 6],
        spacing=1.0,
        seed=77,
        amplitudes={"a": 0.3, "phi": 1.6},
        minimize={
            "max_iters": 4000,
            "grad_tol": 1e-4,
            "method": "conjugate",
            "gaugefix_every": 10,
        },
    )
    assert main(["run", str(cfg_path)]) == 0
    summary = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert summary["reason"] == "converged"
    assert summary["final"]["phi_linf"] <= 1.05
    assert summary["final"]["radial_excess"] <= 1e-6


def test_parse_scalar_curvature_forms():
    lat = Lattice((3, 3, 3, 3), 1.0)
    assert np.all(parse_scalar_curvature(-1.5, lat) == -1.5)
    assert np.all(parse_scalar_curvature("constant:2.25", lat) == 2.25)
    bump = parse_scalar_curvature("bump:3.0,0.8", lat)
    assert bump.max() <= 3.0 and bump.min() >= 0.0
    for bad in ("bump:3.0", "bump:1,0", "profile:x", True):
        with pytest.raises(ValueError):
            parse_scalar_curvature(bad, lat)


def test_check_fast_passes_and_prints_one_line_per_check(capsys):
    assert main(["check", "--level", "fast"]) == 0
    out = capsys.readouterr().out.splitlines()
    check_lines = [l for l in out if l.startswith(("PASS", "FAIL"))]
    assert len(check_lines) == 13
    assert all(l.startswith("PASS") for l in check_lines)
    assert out[-1] == "13/13 checks passed"


def test_check_full_includes_refinement_study(capsys):
    assert main(["check", "--level", "full"]) == 0
    out = capsys.readouterr().out
    assert "weitzenbock_gap_contraction" in out


def test_check_fails_on_corrupted_clifford_table(monkeypatch, capsys):
    sigma = standard_table().sigma.copy()
    sigma[1, 0, 0] += 0.05
    monkeypatch.setattr(swflow.checks, "standard_table", lambda: CliffordTable(sigma))
    assert main(["check", "--level", "fast"]) == 1
    out = capsys.readouterr().out
    assert "FAIL clifford_relation_defect" in out


def fixture_configuration():
    lat = Lattice((3, 3, 4, 3), 0.8)
    cfg = random_configuration(lat, 23, (0.5, 0.9))
    a = cfg.gauge.a.copy()
    a[..., 1] += 2.4 * 2.0 * np.pi / lat.lengths[1]
    return cfg.replace(a=a)


def test_gaugefix_cli_roundtrip(tmp_path, capsys):
    cfg = fixture_configuration()
    src, dst = tmp_path / "in.json", tmp_path / "fixed.json"
    save_configuration(cfg, src)
    assert main(["gaugefix", str(src), str(dst)]) == 0
    assert "energy drift" in capsys.readouterr().out

    fixed = load_configuration(dst)
    lat = fixed.lattice
    assert l2_norm(lat, codiff1(lat, fixed.gauge.a)) <= 1e-8
    drift = abs(energy_weitzenbock(fixed) - energy_weitzenbock(cfg))
    assert drift <= 1e-10 * abs(energy_weitzenbock(cfg))

    report = json.loads((tmp_path / "fixed.json.report.json").read_text())
    assert set(report) == {"residual", "winding", "harmonic"}
    assert report["winding"] == [0, 2, 0, 0]
    for mu, h in enumerate(report["harmonic"]):
        assert -np.pi / lat.lengths[mu] <= h < np.pi / lat.lengths[mu]


def test_gaugefix_cli_idempotent(tmp_path):
    cfg = fixture_configuration()
    src = tmp_path / "in.json"
    save_configuration(cfg, src)
    assert main(["gaugefix", str(src), str(tmp_path / "once.json")]) == 0
    assert main(["gaugefix", str(tmp_path / "once.json"), str(tmp_path / "twice.json")]) == 0
    once = load_configuration(tmp_path / "once.json")
    twice = load_configuration(tmp_path / "twice.json")
    assert np.max(np.abs(once.gauge.a - twice.gauge.a)) <= 1e-10
    report = json.loads((tmp_path / "twice.json.report.json").read_text())
    assert report["winding"] == [0, 0, 0, 0]


def test_gaugefix_missing_or_garbled_input(tmp_path, capsys):
    assert main(["gaugefix", str(tmp_path / "no.json"), str(tmp_path / "o.json")]) == 2
    garbled = tmp_path / "bad.json"
    garbled.write_text("{not json")
    assert main(["gaugefix", str(garbled), str(tmp_path / "o.json")]) == 2
    assert not (tmp_path / "o.json").exists()
    assert capsys.readouterr().err


def test_console_script_entry_point():
    proc = subprocess.run(
        ["swflow", "check", "--level", "fast"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "checks passed" in proc.stdout

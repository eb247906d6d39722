# tests/test_pipelines.py
import csv
import json
import os

import numpy as np
import pytest

import run_experiment
from experiments.pipelines import recompute_metrics, run_fig1, run_fig2, run_fig3, run_fig4, run_single
from experiments.settings import ConfigError, parse_config
from experiments.sweeps import SWEEP_COLUMNS
from simulators.ensemble import run_ensemble
from simulators.params import SimParams

SMALL = {"steps": 1200, "n_traj": 4, "sample_stride": 5, "max_lag": 10, "seed": 42, "n_blocks": 2}


def _cfg(tmp_path, name="out", **changes):
    values = dict(SMALL, output_dir=str(tmp_path / name))
    values.update(changes)
    return parse_config(overrides=values)


def _rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(line for line in f if not line.startswith("#")))


def _read(path):
    with open(path, "rb") as f:
        return f.read()


def test_run_single_is_deterministic(tmp_path):
    first = run_single(_cfg(tmp_path, "a", model="quantum"))
    second = run_single(_cfg(tmp_path, "b", model="quantum"))
    assert len(first) == 2 * SMALL["n_traj"]
    for a, b in zip(first, second):
        assert os.path.basename(a) == os.path.basename(b)
    # headers differ only through output_dir
    for a, b in zip(first, second):
        body_a = [l for l in _read(a).splitlines() if not l.startswith(b"#")]
        body_b = [l for l in _read(b).splitlines() if not l.startswith(b"#")]
        assert body_a == body_b


def test_rerun_from_header_is_byte_identical(tmp_path):
    written = run_single(_cfg(tmp_path, model="classical", n_traj=1))
    emissions = written[0]
    before = _read(emissions)
    run_single(parse_config(emissions))
    assert _read(emissions) == before


def test_undriven_classical_emissions_are_zero(tmp_path):
    written = run_single(_cfg(tmp_path, model="classical", omega=0.0, n_traj=2))
    rows = _rows(written[0])
    assert list(rows[0].keys()) == ["step", "t", "r1", "r2"]
    assert len(rows) == SMALL["steps"]
    assert all(r["r1"] == "0" and r["r2"] == "0" for r in rows)
    assert float(rows[10]["t"]) == pytest.approx(0.1)


def test_run_single_rejects_sweep(tmp_path):
    with pytest.raises(ConfigError):
        run_single(_cfg(tmp_path, couplings=[0.0, 1.0]))


@pytest.mark.parametrize("model", ["classical", "quantum"])
def test_worker_count_and_batching_do_not_change_ensemble(model):
    p = SimParams(omega=1.0, gamma=1.0, coupling=0.5, steps=800, n_traj=7, seed=9, sample_stride=4)
    reference = run_ensemble(p, model, workers=1, verbose=False)
    for workers, batch_size in ((1, 2), (3, 2), (2, 3)):
        other = run_ensemble(p, model, workers=workers, batch_size=batch_size, verbose=False)
        assert np.array_equal(reference.r1, other.r1)
        assert np.array_equal(reference.r2, other.r2)
        assert np.array_equal(reference.states, other.states)


def test_worker_count_does_not_change_output(tmp_path):
    one = run_fig2(_cfg(tmp_path, "w1", couplings=[0.0, 1.0], workers=1, n_traj=6))
    two = run_fig2(_cfg(tmp_path, "w2", couplings=[0.0, 1.0], workers=2, n_traj=6))
    table_one = [l for l in _read(one[0]).splitlines() if not l.startswith(b"#")]
    table_two = [l for l in _read(two[0]).splitlines() if not l.startswith(b"#")]
    assert table_one == table_two


def test_fig1_self_baseline_and_slopes(tmp_path):
    cfg = _cfg(tmp_path, couplings=[0.0, 3.0], steps=3000, n_traj=6)
    written = run_fig1(cfg)
    names = {os.path.basename(p) for p in written}
    for model in ("classical", "quantum"):
        for tag in ("J0", "J3"):
            assert f"fig1_raster_{model}_{tag}.csv" in names
            assert f"fig1_counts_{model}_{tag}.csv" in names
            assert f"fig1_correlations_{model}_{tag}.csv" in names
    rows = _rows(os.path.join(cfg.output_dir, "fig1_correlations_quantum_J0.csv"))
    assert list(rows[0].keys()) == ["tau", "lag_steps", "c11", "c22", "c12", "dc11", "dc22", "dc12"]
    assert len(rows) == cfg.max_lag + 1
    assert all(float(r[k]) == 0.0 for r in rows for k in ("dc11", "dc22", "dc12"))
    summary = json.load(open(os.path.join(cfg.output_dir, "fig1_summary.json")))
    locked = summary["points"]["classical_J3"]
    assert locked["mean_total_emissions"] < locked["baseline_mean_total_emissions"]


def test_fig2_occupancy_regimes(tmp_path):
    cfg = _cfg(tmp_path, couplings=[0.0, 3.0], steps=5000, n_traj=16, sample_stride=10)
    written = run_fig2(cfg)
    rows = _rows(written[0])
    assert [(r["model"], float(r["coupling"])) for r in rows] == [
        ("classical", 0.0), ("classical", 3.0), ("quantum", 0.0), ("quantum", 3.0)]
    tables = {(r["model"], float(r["coupling"])): np.array([float(r[k]) for k in ("p00", "p01", "p10", "p11")])
              for r in rows}
    assert all(np.isclose(t.sum(), 1.0) for t in tables.values())
    classical_locked = tables[("classical", 3.0)]
    assert classical_locked[0] + classical_locked[3] >= 0.9
    assert np.all(tables[("quantum", 3.0)] > 0.0)


def test_fig3_sweep_files(tmp_path, monkeypatch):
    import experiments.pipelines as pipelines
    monkeypatch.setattr(pipelines, "FIG3_GAMMAS", (1.0,))
    monkeypatch.setattr(pipelines, "FIG3_OMEGAS", (1.0,))
    monkeypatch.setattr(pipelines, "FIG3_SWEEP_POINTS", 2)
    cfg = _cfg(tmp_path, ratios=[0.5, 2.0], coupling=1.0)
    written = run_fig3(cfg)
    names = {os.path.basename(p) for p in written}
    assert {"fig3_vs_ratio.csv", "fig3_vs_omega.csv", "fig3_vs_gamma.csv", "fig3_summary.json"} <= names
    rows = _rows(os.path.join(cfg.output_dir, "fig3_vs_ratio.csv"))
    assert list(rows[0].keys()) == list(SWEEP_COLUMNS)
    assert all(float(r["coupling"]) == 0.0 for r in rows)
    assert [(r["model"], float(r["omega_over_gamma"])) for r in rows] == [
        ("classical", 0.5), ("classical", 2.0), ("quantum", 0.5), ("quantum", 2.0)]
    summary = json.load(open(os.path.join(cfg.output_dir, "fig3_summary.json")))
    assert set(summary["peaks"]) == {"classical", "quantum"}
    assert "welch" in summary


def test_fig4_sorted_sweep_and_statistics(tmp_path):
    cfg = _cfg(tmp_path, couplings=[1.0, 0.0, 0.5], ratios=[2.0, 1.0])
    run_fig4(cfg)
    rows = _rows(os.path.join(cfg.output_dir, "fig4_sweep.csv"))
    keys = [(r["model"], float(r["omega_over_gamma"]), float(r["coupling"])) for r in rows]
    assert keys == sorted(keys)
    assert len(rows) == 12
    assert all(int(r["n_traj"]) == SMALL["n_traj"] and int(r["seed"]) == 42 for r in rows)
    assert all(float(r["mi"]) >= 0.0 for r in rows)
    stats = json.load(open(os.path.join(cfg.output_dir, "fig4_statistics.json")))
    assert set(stats["lz_vs_mi"]) == {"classical", "quantum"}
    assert len(stats["lz_vs_coupling"]) == 4


def test_recompute_metrics_from_emissions(tmp_path):
    written = run_single(_cfg(tmp_path, model="quantum", n_traj=1, omega=2.0))
    cfg = _cfg(tmp_path, "metrics")
    result = recompute_metrics(written[0], cfg)
    assert result["steps"] == SMALL["steps"]
    assert result["transient_start"] == int(0.2 * SMALL["steps"])
    assert result["lz"] > 0.0
    assert os.path.exists(os.path.join(cfg.output_dir, "metrics_emissions_quantum_traj0000.json"))


def test_cli_success_and_exit_codes(tmp_path, capsys):
    out = str(tmp_path / "cli")
    base = ["--steps", "600", "--n-traj", "2", "--max-lag", "5", "--out", out]
    assert run_experiment.main(["simulate", "--model", "classical"] + base) == 0

    assert run_experiment.main(["simulate", "--dt", "0.1", "--gamma", "1"] + base) == 2
    assert "FATAL" in capsys.readouterr().out

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"unknown_key": 1}))
    assert run_experiment.main(["simulate", "--config", str(bad)] + base) == 2

    blocker = tmp_path / "blocker"
    blocker.write_text("x")
    assert run_experiment.main(["simulate", "--model", "classical", "--steps", "600", "--n-traj", "2",
                                "--max-lag", "5", "--out", str(blocker / "sub")]) == 3

    assert run_experiment.main(["simulate", "--model", "classical", "--coupling", "10"] + base) == 4

    emissions = os.path.join(out, "emissions_classical_traj0000.csv")
    assert run_experiment.main(["metrics", "--input", emissions, "--max-lag", "5", "--out", out]) == 0


def test_recompute_metrics_uses_header_parameters(tmp_path):
    # gamma=0.1 with dt=0.5 only passes the gamma*dt guard with the file's own gamma
    written = run_single(_cfg(tmp_path, model="classical", n_traj=1, gamma=0.1, dt=0.5, omega=0.1))
    result = recompute_metrics(written[0], _cfg(tmp_path, "metrics"))
    assert result["model"] == "classical"
    assert result["params"]["gamma"] == 0.1
    assert result["params"]["dt"] == 0.5
    assert result["params"]["omega"] == 0.1


def test_recompute_metrics_delta_against_baseline(tmp_path):
    coupled = run_single(_cfg(tmp_path, "j1", model="quantum", n_traj=1, coupling=1.0))[0]
    uncoupled = run_single(_cfg(tmp_path, "j0", model="quantum", n_traj=1))[0]
    cfg = _cfg(tmp_path, "metrics")

    recompute_metrics(coupled, cfg)
    base = "metrics_emissions_quantum_traj0000_correlations.csv"
    rows = _rows(os.path.join(cfg.output_dir, base))
    assert list(rows[0].keys()) == ["tau", "lag_steps", "c11", "c22", "c12", "dc11", "dc22", "dc12"]
    assert all(float(r[k]) == 0.0 for r in rows for k in ("dc11", "dc22", "dc12"))

    result = recompute_metrics(coupled, cfg, baseline=uncoupled)
    assert result["baseline"] == uncoupled
    rows = _rows(os.path.join(cfg.output_dir, base))
    recompute_metrics(uncoupled, _cfg(tmp_path, "baseline"))
    base_rows = {int(r["lag_steps"]): r for r in _rows(os.path.join(str(tmp_path / "baseline"), base))}
    for r in rows:
        expected = float(r["c12"]) - float(base_rows[int(r["lag_steps"])]["c12"])
        assert float(r["dc12"]) == pytest.approx(expected)


def test_recompute_metrics_rejects_mismatched_baseline(tmp_path):
    record = run_single(_cfg(tmp_path, "a", model="classical", n_traj=1))[0]
    shorter = run_single(_cfg(tmp_path, "b", model="classical", n_traj=1, steps=800))[0]
    with pytest.raises(ValueError):
        recompute_metrics(record, _cfg(tmp_path, "metrics"), baseline=shorter)


def test_cli_metrics_reads_parameters_from_header(tmp_path):
    out = str(tmp_path / "cli")
    base = ["--steps", "600", "--n-traj", "1", "--max-lag", "5", "--out", out]
    assert run_experiment.main(["simulate", "--model", "classical", "--gamma", "0.1", "--dt", "0.5"] + base) == 0
    emissions = os.path.join(out, "emissions_classical_traj0000.csv")
    assert run_experiment.main(["metrics", "--input", emissions, "--max-lag", "5", "--out", out,
                                "--baseline", emissions]) == 0

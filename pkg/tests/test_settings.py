# tests/test_settings.py
import json

import pytest

from experiments.settings import ConfigError, ExperimentConfig, parse_config
from simulators.params import SimParams


def test_empty_config_gives_documented_defaults():
    cfg = parse_config()
    p = cfg.params
    assert (p.omega, p.gamma, p.coupling, p.beta) == (1.0, 1.0, 0.0, 1.0)
    assert (p.dt, p.steps, p.n_traj, p.seed) == (0.01, 100_000, 200, 1)
    assert cfg.model == "both"
    assert cfg.transient_fraction == 0.2
    assert cfg.mi_mode == "ensemble"
    assert cfg.emission_convention == "any-flip"
    assert cfg.couplings is None and cfg.ratios is None


def test_flags_override_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"coupling": 0.0, "steps": 5000, "couplings": [0, 1]}))
    cfg = parse_config(str(path), {"coupling": 3.0, "seed": None})
    assert cfg.params.coupling == 3.0
    assert cfg.params.steps == 5000
    assert cfg.params.seed == 1
    assert cfg.couplings == (0.0, 1.0)


def test_unknown_key_is_named(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"omgea": 2.0}))
    with pytest.raises(ConfigError, match="omgea"):
        parse_config(str(path))


def test_step_size_guard_rejected():
    with pytest.raises(ConfigError, match="gamma\\*dt"):
        parse_config(overrides={"dt": 0.1, "gamma": 1.0})


@pytest.mark.parametrize("overrides", [
    {"transient_fraction": 1.0},
    {"model": "hybrid"},
    {"mi_mode": "average"},
    {"emission_convention": "up-flip"},
    {"couplings": []},
    {"ratios": [0.0, 1.0]},
    {"max_lag": 10_000_000},
    {"workers": 0},
    {"steps": 0},
])
def test_invalid_values_rejected(overrides):
    with pytest.raises(ConfigError):
        parse_config(overrides=overrides)


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        parse_config("/nonexistent/config.json")


def test_malformed_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        parse_config(str(path))
    path.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        parse_config(str(path))


def test_transient_start_ignores_ensemble_size():
    a = ExperimentConfig(params=SimParams(steps=1000, n_traj=5), transient_fraction=0.25)
    b = ExperimentConfig(params=SimParams(steps=1000, n_traj=500), transient_fraction=0.25)
    assert a.transient_start == b.transient_start == 250


def test_round_trip_through_output_header(tmp_path):
    cfg = parse_config(overrides={"omega": 0.7, "steps": 3000, "ratios": [1, 2], "output_dir": str(tmp_path)})
    path = tmp_path / "table.csv"
    path.write_text(f"# seed={cfg.params.seed}\n# config={json.dumps(cfg.to_dict(), sort_keys=True)}\na,b\n1,2\n")
    assert parse_config(str(path)) == cfg


def test_csv_without_header_rejected(tmp_path):
    path = tmp_path / "table.csv"
    path.write_text("# seed=1\nstep,t,r1,r2\n0,0.0,0,0\n")
    with pytest.raises(ConfigError):
        parse_config(str(path))


def test_models_property():
    assert ExperimentConfig(model="both").models == ("classical", "quantum")
    assert ExperimentConfig(model="quantum").models == ("quantum",)

# src/experiments/pipelines.py
import os
import re
import sys
from dataclasses import replace

import numpy as np

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
config_dir = os.path.join(project_root, 'config')
if config_dir not in sys.path:
    sys.path.insert(0, config_dir)

try:
    from config import FIG1_COUPLINGS, FIG2_COUPLINGS, SWEEP_COUPLINGS, FIG4_RATIOS, FIG3_RATIO_MIN, \
                       FIG3_RATIO_MAX, FIG3_RATIO_POINTS, FIG3_GAMMAS, FIG3_OMEGAS, FIG3_OMEGA_RANGE, \
                       FIG3_GAMMA_RANGE, FIG3_SWEEP_POINTS
except ImportError:
    print("ERROR (experiments.pipelines): Could not import figure presets from config.py.")
    raise

from experiments.settings import PARAM_KEYS, ConfigError, ExperimentConfig
from experiments.storage import EMISSIONS_COLUMNS, ResultStore, read_emissions_csv
from experiments.sweeps import SWEEP_COLUMNS, SweepPoint, build_points, ensemble_correlations, \
                               evaluate_ensemble, run_sweep, simulate_point
from matkit.operators import BASIS_LABELS
from metrics.complexity import encode_joint, normalized_lz
from metrics.correlations import CorrelationSeries, cross_correlation, delta_correlation
from metrics.counting import counts_slope, cumulative_counts, emission_rate
from metrics.statistics import UndefinedCorrelationError, mean_sem, spearman, welch_t_test
from simulators.ensemble import MODELS
from simulators.params import EmissionRecord, SimParams

CORRELATION_COLUMNS = ("tau", "lag_steps", "c11", "c22", "c12", "dc11", "dc22", "dc12")
OCCUPANCY_COLUMNS = ("model", "coupling", "p00", "p01", "p10", "p11")
SCATTER_COLUMNS = ("model", "omega_over_gamma", "coupling", "lz", "lz_err", "mi", "mi_err")
EMISSIONS_NAME = re.compile(r"emissions_(classical|quantum)_traj\d+\.csv$")


def _tag(value: float) -> str:
    return f"{value:g}"


def _store(cfg: ExperimentConfig) -> ResultStore:
    return ResultStore(cfg.output_dir, cfg.to_dict())


def _emission_rows(rec: EmissionRecord):
    dt = rec.dt
    for step, (a, b) in enumerate(zip(rec.r1.tolist(), rec.r2.tolist())):
        yield [step, step * dt, a, b]


def _state_columns(model: str) -> tuple[str, ...]:
    if model == "quantum":
        return ("step", "t") + tuple(f"{part}_{label}" for label in BASIS_LABELS for part in ("re", "im"))
    return "step", "t", "s1", "s2"


def _state_rows(rec: EmissionRecord):
    for step, state in rec.state_samples:
        if rec.model == "quantum":
            values = [v for amp in state.tolist() for v in (amp.real, amp.imag)]
        else:
            values = [int(v) for v in state]
        yield [step, step * rec.dt] + values


def run_single(cfg: ExperimentConfig) -> list[str]:
    """Emissions (step, t, r1, r2) and state samples of every trajectory, one file pair each."""
    if cfg.couplings is not None or cfg.ratios is not None:
        raise ConfigError("run_single: sweep grids (couplings, ratios) are not used by 'simulate'; "
                          "set coupling / omega / gamma instead.")
    store = _store(cfg)
    for model in cfg.models:
        ensemble = simulate_point(cfg, SweepPoint(model, cfg.params))
        for i in range(ensemble.n_traj):
            rec = ensemble.record(i)
            store.write_table(f"emissions_{model}_traj{i:04d}.csv", EMISSIONS_COLUMNS, _emission_rows(rec))
            store.write_table(f"states_{model}_traj{i:04d}.csv", _state_columns(model), _state_rows(rec))
    return store.written


def run_fig1(cfg: ExperimentConfig) -> list[str]:
    """
    Trajectory rasters, cumulative counts and Delta C(tau, J) tables. The J=0
    baseline reuses the same seed, hence the same per-trajectory streams.
    """
    store = _store(cfg)
    couplings = cfg.couplings or FIG1_COUPLINGS
    start = cfg.transient_start
    summary = {}
    for model in cfg.models:
        baseline = simulate_point(cfg, SweepPoint(model, replace(cfg.params, coupling=0.0)))
        base_corr = ensemble_correlations(baseline, start, cfg.max_lag)
        base_total = baseline.r1.sum(axis=1) + baseline.r2.sum(axis=1)

        for coupling in couplings:
            print(f"fig1: model={model} J={coupling:g}")
            if coupling == 0.0:
                ensemble = baseline
            else:
                ensemble = simulate_point(cfg, SweepPoint(model, replace(cfg.params, coupling=coupling)))
            tag = f"{model}_J{_tag(coupling)}"

            raster = ensemble.record(0)
            store.write_table(f"fig1_raster_{tag}.csv", EMISSIONS_COLUMNS, _emission_rows(raster))
            n1, n2 = cumulative_counts(raster)
            events = np.flatnonzero(raster.r1 | raster.r2)
            store.write_table(f"fig1_counts_{tag}.csv", ("step", "t", "n1", "n2"),
                              ([int(s), s * raster.dt, int(n1[s]), int(n2[s])] for s in events))

            corr = ensemble_correlations(ensemble, start, cfg.max_lag)
            with store.open_table(f"fig1_correlations_{tag}.csv", CORRELATION_COLUMNS) as table:
                for lag in range(cfg.max_lag + 1):
                    c = [corr[k][0][lag] for k in ("c11", "c22", "c12")]
                    dc = [corr[k][0][lag] - base_corr[k][0][lag] for k in ("c11", "c22", "c12")]
                    table.write_row([lag * cfg.params.dt, lag] + c + dc)

            slopes = []
            for i in range(ensemble.n_traj):
                c1, c2 = cumulative_counts(ensemble.record(i))
                try:
                    slopes.append(counts_slope(c1, c2))
                except ValueError:
                    continue
            slope, slope_err = mean_sem(slopes) if slopes else (None, None)
            total = ensemble.r1.sum(axis=1) + ensemble.r2.sum(axis=1)
            summary[tag] = {
                "model": model,
                "coupling": coupling,
                "counts_slope": slope,
                "counts_slope_err": slope_err,
                "n_slopes": len(slopes),
                "mean_total_emissions": float(total.mean()),
                "baseline_mean_total_emissions": float(base_total.mean()),
                "delta_c12_max_abs": float(np.max(np.abs(corr["c12"][0] - base_corr["c12"][0]))),
                "c12_sem_max": float(np.max(corr["c12"][1])),
            }
    store.write_json("fig1_summary.json", {"points": summary})
    return store.written


def run_fig2(cfg: ExperimentConfig) -> list[str]:
    """2x2 joint occupancy tables per (model, J); quantum tables are density-matrix diagonals."""
    store = _store(cfg)
    couplings = cfg.couplings or FIG2_COUPLINGS
    points = build_points(cfg, [{"coupling": float(j)} for j in couplings])
    errors = {}
    with store.open_table("fig2_occupancy.csv", OCCUPANCY_COLUMNS) as table:
        for point in points:
            print(f"fig2: model={point.model} J={point.params.coupling:g}")
            result = evaluate_ensemble(cfg, simulate_point(cfg, point))
            table.write_row([point.model, point.params.coupling] + result.occupancy.ravel().tolist())
            errors[f"{point.model}_J{_tag(point.params.coupling)}"] = {
                "model": point.model,
                "coupling": point.params.coupling,
                "p": result.occupancy.ravel(),
                "p_err": result.occupancy_err.ravel(),
                "max_deviation_from_uniform": float(np.max(np.abs(result.occupancy - 0.25))),
                "mi": result.mi,
                "mi_err": result.mi_err,
            }
    store.write_json("fig2_occupancy_sem.json", {"n_blocks": cfg.n_blocks, "tables": errors})
    return store.written


def fig3_ratio_grid(cfg: ExperimentConfig) -> tuple[float, ...]:
    if cfg.ratios is not None:
        return cfg.ratios
    return tuple(float(r) for r in np.geomspace(FIG3_RATIO_MIN, FIG3_RATIO_MAX, FIG3_RATIO_POINTS))


def _peak(results) -> dict:
    best = max(results, key=lambda r: r.lz)
    return {"omega_over_gamma": best.ratio, "lz": best.lz, "lz_err": best.lz_err, "n_traj": best.params.n_traj}


def run_fig3(cfg: ExperimentConfig) -> list[str]:
    """
    Uncoupled complexity scans: LZ vs omega at fixed gammas, LZ vs gamma at fixed
    omegas and LZ vs omega/gamma, followed by the peak comparison of the models.
    """
    if cfg.params.coupling != 0.0:
        print(f"fig3: forcing J=0 (configured coupling {cfg.params.coupling:g} ignored).")
    cfg = cfg.with_params(coupling=0.0, couplings=None)
    store = _store(cfg)
    gamma = cfg.params.gamma
    omega_grid = np.geomspace(*FIG3_OMEGA_RANGE, FIG3_SWEEP_POINTS)
    gamma_grid = np.geomspace(*FIG3_GAMMA_RANGE, FIG3_SWEEP_POINTS)

    scans = {
        "vs_ratio": [{"omega": r * gamma} for r in fig3_ratio_grid(cfg)],
        "vs_omega": [{"omega": float(o), "gamma": g} for g in FIG3_GAMMAS for o in omega_grid],
        "vs_gamma": [{"omega": o, "gamma": float(g)} for o in FIG3_OMEGAS for g in gamma_grid],
    }
    plans = {name: build_points(cfg, grid) for name, grid in scans.items()}

    results = {}
    for name, points in plans.items():
        with store.open_table(f"fig3_{name}.csv", SWEEP_COLUMNS) as table:
            results[name] = run_sweep(cfg, points, table, label=f"fig3 {name}")

    peaks = {model: _peak([r for r in results["vs_ratio"] if r.model == model]) for model in cfg.models}
    summary = {"peaks": peaks}
    if "quantum" in peaks and "classical" in peaks:
        q, c = peaks["quantum"], peaks["classical"]
        try:
            t, p_value = welch_t_test(q["lz"], q["lz_err"], q["n_traj"], c["lz"], c["lz_err"], c["n_traj"])
            summary["welch"] = {"t": t, "p_value": p_value}
        except ValueError as e:
            print(f"fig3: Welch comparison skipped: {e}")
            summary["welch"] = {"t": None, "p_value": None, "reason": str(e)}
    store.write_json("fig3_summary.json", summary)
    return store.written


def _spearman_entry(x, y) -> dict:
    try:
        rho, p_value = spearman(x, y)
        return {"rho": rho, "p_value": p_value, "n": len(x)}
    except UndefinedCorrelationError as e:
        return {"rho": None, "p_value": None, "n": len(x), "reason": str(e)}


def run_fig4(cfg: ExperimentConfig) -> list[str]:
    """LZ(J) and MI(J) per model and omega/gamma, the pooled (LZ, MI) scatter and its rank statistics."""
    store = _store(cfg)
    couplings = cfg.couplings or SWEEP_COUPLINGS
    ratios = cfg.ratios or FIG4_RATIOS
    gamma = cfg.params.gamma
    points = build_points(cfg, [{"omega": r * gamma, "coupling": float(j)} for r in ratios for j in couplings])

    with store.open_table("fig4_sweep.csv", SWEEP_COLUMNS) as table:
        results = run_sweep(cfg, points, table, label="fig4")
    store.write_table("fig4_scatter.csv", SCATTER_COLUMNS,
                      ([r.model, r.ratio, r.params.coupling, r.lz, r.lz_err, r.mi, r.mi_err] for r in results))

    pooled, vs_coupling = {}, {}
    for model in cfg.models:
        rows = [r for r in results if r.model == model]
        pooled[model] = _spearman_entry([r.lz for r in rows], [r.mi for r in rows])
        for ratio in sorted({r.ratio for r in rows}):
            subset = [r for r in rows if r.ratio == ratio]
            vs_coupling[f"{model}_ratio{_tag(ratio)}"] = dict(
                _spearman_entry([r.params.coupling for r in subset], [r.lz for r in subset]),
                model=model, omega_over_gamma=ratio)
    store.write_json("fig4_statistics.json", {"lz_vs_mi": pooled, "lz_vs_coupling": vs_coupling})
    return store.written


def _header_params(header: dict, cfg: ExperimentConfig, steps: int) -> SimParams:
    """SimParams of the run that wrote a file; keys missing from its header fall back to cfg."""
    values = cfg.params.to_dict()
    values.update({k: header[k] for k in PARAM_KEYS if k in header})
    values.update(steps=steps, n_traj=1)
    return SimParams(**values)


def _record_model(path: str, header: dict) -> str:
    match = EMISSIONS_NAME.match(os.path.basename(path))
    if match:
        return match.group(1)
    return header["model"] if header.get("model") in MODELS else "unknown"


def _read_record(path: str, cfg: ExperimentConfig) -> EmissionRecord:
    header, steps, r1, r2 = read_emissions_csv(path)
    params = _header_params(header, cfg, int(steps.size))
    return EmissionRecord(r1=r1, r2=r2, dt=params.dt, params=params, model=_record_model(path, header))


def _record_correlations(rec: EmissionRecord, start: int, max_lag: int) -> dict[str, CorrelationSeries]:
    a, b = rec.r1[start:], rec.r2[start:]
    return {"c11": cross_correlation(a, a, max_lag), "c22": cross_correlation(b, b, max_lag),
            "c12": cross_correlation(a, b, max_lag)}


def recompute_metrics(path: str, cfg: ExperimentConfig, baseline: str | None = None) -> dict:
    """
    Normalized joint LZ, per-channel rates and the correlation table of an
    emissions CSV. Physical parameters come from the file's config header when
    present. Delta C is taken against the `baseline` emissions file; without one
    the record is its own baseline and the dc columns are 0.
    """
    rec = _read_record(path, cfg)
    start = int(cfg.transient_fraction * rec.steps)
    if not 0 <= cfg.max_lag < rec.steps - start:
        raise ValueError(f"recompute_metrics: max_lag {cfg.max_lag} does not fit the "
                         f"{rec.steps - start}-step post-transient window of {path}.")
    corr = _record_correlations(rec, start, cfg.max_lag)
    base_corr = corr
    if baseline is not None:
        base_rec = _read_record(baseline, cfg)
        if base_rec.steps != rec.steps or base_rec.dt != rec.dt:
            raise ValueError(f"recompute_metrics: baseline {baseline} must share steps and dt with {path}.")
        base_corr = _record_correlations(base_rec, start, cfg.max_lag)

    rate1, rate2 = emission_rate(rec, start)
    result = {
        "input": path,
        "baseline": baseline,
        "model": rec.model,
        "params": rec.params.to_dict(),
        "steps": rec.steps,
        "transient_start": start,
        "lz": normalized_lz(encode_joint(rec.r1[start:], rec.r2[start:], cfg.joint_encoding)),
        "joint_encoding": cfg.joint_encoding,
        "rate1": rate1,
        "rate2": rate2,
        "total_emissions": [int(rec.r1.sum()), int(rec.r2.sum())],
    }

    store = _store(cfg)
    base = os.path.splitext(os.path.basename(path))[0]
    keys = ("c11", "c22", "c12")
    delta = {k: delta_correlation(corr[k], base_corr[k]).values for k in keys}
    with store.open_table(f"metrics_{base}_correlations.csv", CORRELATION_COLUMNS) as table:
        for lag in range(cfg.max_lag + 1):
            table.write_row([lag * rec.dt, lag] + [corr[k].values[lag] for k in keys]
                            + [delta[k][lag] for k in keys])
    store.write_json(f"metrics_{base}.json", result)
    return result

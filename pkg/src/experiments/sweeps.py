# src/experiments/sweeps.py
"""
Evaluation of one (model, omega, gamma, J) point and of whole parameter grids.

All metrics use post-transient steps only. LZ errors are standard errors
across trajectories; MI and occupancy errors are standard errors across
contiguous trajectory blocks.
"""
from dataclasses import dataclass, field, replace

import numpy as np

from experiments.settings import ExperimentConfig
from metrics.blocking import block_slices
from metrics.complexity import encode_joint, normalized_lz
from metrics.correlations import cross_correlation
from metrics.counting import emission_rate
from metrics.information import occupancy_from_density_matrix, occupancy_table
from metrics.statistics import mean_sem
from simulators.ensemble import Ensemble, run_ensemble
from simulators.params import SimParams
from simulators.qjump import density_matrix_from_samples, pure_state_mutual_information, \
                             quantum_mutual_information
from simulators.telegraph import classical_mutual_information

SWEEP_COLUMNS = ("model", "omega", "gamma", "coupling", "omega_over_gamma", "lz", "lz_err",
                 "mi", "mi_err", "n_traj", "steps", "seed")
MODEL_ORDER = {"classical": 0, "quantum": 1}


@dataclass(frozen=True)
class SweepPoint:
    model: str
    params: SimParams

    @property
    def ratio(self) -> float:
        return self.params.omega / self.params.gamma if self.params.gamma > 0 else float("inf")

    def sort_key(self):
        return (MODEL_ORDER[self.model], self.ratio, self.params.coupling, self.params.omega, self.params.gamma)


@dataclass(frozen=True)
class PointResult:
    model: str
    params: SimParams
    lz: float
    lz_err: float
    mi: float
    mi_err: float
    rates: tuple[float, float]
    occupancy: np.ndarray                     # p[s1, s2]
    occupancy_err: np.ndarray
    lz_values: np.ndarray = field(repr=False, default=None)

    @property
    def ratio(self) -> float:
        return SweepPoint(self.model, self.params).ratio

    def sweep_row(self) -> list:
        p = self.params
        return [self.model, p.omega, p.gamma, p.coupling, self.ratio, self.lz, self.lz_err,
                self.mi, self.mi_err, p.n_traj, p.steps, p.seed]


def _block_sem(values: list[float]) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / np.sqrt(len(values)))


def _window(ensemble: Ensemble, start: int) -> np.ndarray:
    states = ensemble.window_states(start)
    if states.shape[1] == 0:
        raise ValueError(f"sweeps: no state samples after step {start}; reduce sample_stride "
                         f"(currently {ensemble.params.sample_stride}) or transient_fraction.")
    return states


def _state_statistics(ensemble: Ensemble, states: np.ndarray) -> tuple[float, np.ndarray]:
    """Ensemble MI and occupancy table of a block of window samples."""
    if ensemble.model == "quantum":
        rho = density_matrix_from_samples(states)
        return max(0.0, quantum_mutual_information(rho)), occupancy_from_density_matrix(rho).p
    occ = occupancy_table(states.reshape(-1, 2))
    return classical_mutual_information(occ), occ.p


def _per_trajectory_mi(ensemble: Ensemble, states: np.ndarray) -> np.ndarray:
    if ensemble.model == "quantum":
        return np.array([pure_state_mutual_information(s) for s in states])
    return np.array([classical_mutual_information(occupancy_table(s)) for s in states])


def joint_lz_values(ensemble: Ensemble, start: int, encoding: str = "symbol") -> np.ndarray:
    """Normalized joint LZ of every trajectory's post-transient record."""
    return np.array([normalized_lz(encode_joint(r1[start:], r2[start:], encoding))
                     for r1, r2 in zip(ensemble.r1, ensemble.r2)])


def evaluate_ensemble(cfg: ExperimentConfig, ensemble: Ensemble) -> PointResult:
    start = cfg.transient_start
    states = _window(ensemble, start)

    lz_values = joint_lz_values(ensemble, start, cfg.joint_encoding)
    lz, lz_err = mean_sem(lz_values)

    mi, occupancy = _state_statistics(ensemble, states)
    blocks = [_state_statistics(ensemble, states[rows]) for rows in block_slices(ensemble.n_traj, cfg.n_blocks)]
    occupancy_err = np.array([[_block_sem([b[1][i, j] for b in blocks]) for j in range(2)] for i in range(2)])
    if cfg.mi_mode == "per-trajectory":
        mi, mi_err = mean_sem(_per_trajectory_mi(ensemble, states))
    else:
        mi_err = _block_sem([b[0] for b in blocks])

    rates = np.array([emission_rate(ensemble.record(i), start) for i in range(ensemble.n_traj)])
    return PointResult(model=ensemble.model, params=ensemble.params, lz=lz, lz_err=lz_err, mi=float(mi),
                       mi_err=mi_err, rates=(float(rates[:, 0].mean()), float(rates[:, 1].mean())),
                       occupancy=occupancy, occupancy_err=occupancy_err, lz_values=lz_values)


def simulate_point(cfg: ExperimentConfig, point: SweepPoint) -> Ensemble:
    return run_ensemble(point.params, point.model, workers=cfg.workers,
                        emission_convention=cfg.emission_convention)


def evaluate_point(cfg: ExperimentConfig, point: SweepPoint) -> PointResult:
    return evaluate_ensemble(cfg, simulate_point(cfg, point))


def ensemble_correlations(ensemble: Ensemble, start: int, max_lag: int,
                          centered: bool = False) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Trajectory-averaged C11, C22, C12 with their standard errors, keyed 'c11', 'c22', 'c12'."""
    series = {"c11": [], "c22": [], "c12": []}
    for r1, r2 in zip(ensemble.r1, ensemble.r2):
        a, b = r1[start:], r2[start:]
        series["c11"].append(cross_correlation(a, a, max_lag, centered).values)
        series["c22"].append(cross_correlation(b, b, max_lag, centered).values)
        series["c12"].append(cross_correlation(a, b, max_lag, centered).values)
    result = {}
    for key, rows in series.items():
        rows = np.array(rows)
        sem = rows.std(axis=0, ddof=1) / np.sqrt(rows.shape[0]) if rows.shape[0] > 1 else np.zeros(rows.shape[1])
        result[key] = (rows.mean(axis=0), sem)
    return result


def build_points(cfg: ExperimentConfig, grid: list[dict]) -> list[SweepPoint]:
    """
    One SweepPoint per model and grid entry, sorted by (model, omega/gamma, J).
    Every SimParams is built before anything runs, so a bad grid fails early.
    """
    points = [SweepPoint(model, replace(cfg.params, **changes)) for model in cfg.models for changes in grid]
    return sorted(points, key=SweepPoint.sort_key)


def run_sweep(cfg: ExperimentConfig, points: list[SweepPoint], table=None, label: str = "sweep") -> list[PointResult]:
    """Evaluate points in order, appending each row to `table` as soon as it is done."""
    results = []
    for i, point in enumerate(points, start=1):
        p = point.params
        print(f"{label}: point {i}/{len(points)} model={point.model} omega={p.omega:g} "
              f"gamma={p.gamma:g} J={p.coupling:g}")
        result = evaluate_point(cfg, point)
        if table is not None:
            table.write_row(result.sweep_row())
        results.append(result)
    return results

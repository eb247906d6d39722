# src/simulators/ensemble.py
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from simulators.params import TRAJECTORY_BATCH, EmissionRecord, SimParams
from simulators.qjump import simulate_quantum_batch
from simulators.telegraph import simulate_classical_batch

MODELS = ("classical", "quantum")


@dataclass(frozen=True)
class Ensemble:
    """Stacked records of trajectories 0..n_traj-1 of one model."""
    model: str
    params: SimParams
    r1: np.ndarray            # (n_traj, steps) uint8
    r2: np.ndarray
    sample_steps: np.ndarray
    states: np.ndarray        # (n_traj, m, 4) complex or (n_traj, m, 2) uint8
    emission_convention: str = "any-flip"

    @property
    def n_traj(self) -> int:
        return self.r1.shape[0]

    def record(self, traj_index: int) -> EmissionRecord:
        return EmissionRecord(r1=self.r1[traj_index], r2=self.r2[traj_index], dt=self.params.dt,
                              params=self.params, model=self.model,
                              sample_steps=self.sample_steps, states=self.states[traj_index])

    def window_states(self, start: int, end: int | None = None) -> np.ndarray:
        """Samples with start <= step < end, shape (n_traj, m_window, ...)."""
        end = self.params.steps if end is None else end
        mask = (self.sample_steps >= start) & (self.sample_steps < end)
        return self.states[:, mask]


def _run_job(job):
    params, model, start, stop, emission_convention = job
    indices = np.arange(start, stop)
    if model == "quantum":
        return simulate_quantum_batch(params, indices)
    return simulate_classical_batch(params, indices, emission_convention)


def run_ensemble(p: SimParams, model: str, workers: int = 1, emission_convention: str = "any-flip",
                 batch_size: int = TRAJECTORY_BATCH, verbose: bool = True) -> Ensemble:
    """
    Simulate trajectories 0..p.n_traj-1 in fixed index batches on a worker pool.

    Batches are reassembled in index order, so the result is identical for any
    number of workers.
    """
    if model not in MODELS:
        raise ValueError(f"run_ensemble: model must be one of {MODELS}, got {model!r}.")
    if workers < 1 or batch_size < 1:
        raise ValueError(f"run_ensemble: workers and batch_size must be >= 1, got {workers} and {batch_size}.")

    jobs = [(p, model, start, min(start + batch_size, p.n_traj), emission_convention)
            for start in range(0, p.n_traj, batch_size)]
    if verbose:
        print(f"EnsembleRunner: Simulating {p.n_traj} {model} trajectories x {p.steps} steps "
              f"(omega={p.omega:g}, gamma={p.gamma:g}, J={p.coupling:g}) in {len(jobs)} batch(es) "
              f"on {min(workers, len(jobs))} worker(s)...")

    if workers > 1 and len(jobs) > 1:
        with Pool(processes=min(workers, len(jobs))) as pool:
            batches = pool.map(_run_job, jobs)
    else:
        batches = [_run_job(job) for job in jobs]

    return Ensemble(
        model=model,
        params=p,
        r1=np.concatenate([b.r1 for b in batches]),
        r2=np.concatenate([b.r2 for b in batches]),
        sample_steps=batches[0].sample_steps,
        states=np.concatenate([b.states for b in batches]),
        emission_convention=emission_convention,
    )

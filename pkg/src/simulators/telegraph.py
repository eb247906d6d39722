# src/simulators/telegraph.py
"""
Interacting telegraph-spin model: two bits flipping with probability
dt * gamma * omega_eff * exp(-beta J (2 s_i - 1)(2 s_j - 1)) per step.

Both flips in a step are decided from the pre-step configuration with
independent draws (u1 for spin 1, u2 for spin 2). Trajectories start in (0, 0).
"""
import numpy as np

from metrics.information import OccupancyTable, shannon_entropy
from simulators.params import (MAX_FLIP_PROBABILITY, STEP_CHUNK, ClassicalState, EmissionRecord,
                               SimParams, StepSizeError, TrajectoryBatch)
from simulators.seeding import draw_block, trajectory_rng

EMISSION_CONVENTIONS = ("any-flip", "down-flip")


def effective_drive(p: SimParams) -> float:
    """omega_eff = gamma omega^2 / (gamma^2 + 2 (omega^2 + J^2)); 0/0 resolves to 0."""
    denominator = p.gamma ** 2 + 2.0 * (p.omega ** 2 + p.coupling ** 2)
    if denominator == 0.0:
        return 0.0
    return p.gamma * p.omega ** 2 / denominator


def flip_probability(s_i: int, s_j: int, p: SimParams) -> float:
    if s_i not in (0, 1) or s_j not in (0, 1):
        raise ValueError(f"flip_probability: spins must be 0 or 1, got ({s_i}, {s_j}).")
    bias = np.exp(-p.beta * p.coupling * (2 * s_i - 1) * (2 * s_j - 1))
    prob = p.dt * p.gamma * effective_drive(p) * bias
    if prob > MAX_FLIP_PROBABILITY:
        raise StepSizeError(
            f"flip_probability: per-step flip probability {prob:.4g} exceeds {MAX_FLIP_PROBABILITY}; "
            f"use a smaller dt (currently {p.dt}).")
    return float(prob)


def _check_convention(emission_convention: str):
    if emission_convention not in EMISSION_CONVENTIONS:
        raise ValueError(
            f"telegraph: emission convention must be one of {EMISSION_CONVENTIONS}, got {emission_convention!r}.")


def _emissions(flips, spins_before, emission_convention: str):
    if emission_convention == "down-flip":
        return flips & (spins_before == 1)
    return flips


def tg_step(state: ClassicalState, p: SimParams, rng: np.random.Generator | None = None,
            draws: tuple[float, float] | None = None,
            emission_convention: str = "any-flip") -> tuple[ClassicalState, int, int]:
    """Simultaneous update of both spins; `draws` forces (u1, u2) instead of sampling `rng`."""
    _check_convention(emission_convention)
    if draws is None:
        if rng is None:
            raise ValueError("tg_step: either rng or forced draws are required.")
        draws = rng.random(2)
    p1 = flip_probability(state.s1, state.s2, p)
    p2 = flip_probability(state.s2, state.s1, p)
    flip1 = bool(draws[0] < p1)
    flip2 = bool(draws[1] < p2)
    emit1 = bool(_emissions(flip1, state.s1, emission_convention))
    emit2 = bool(_emissions(flip2, state.s2, emission_convention))
    return ClassicalState(state.s1 ^ flip1, state.s2 ^ flip2), int(emit1), int(emit2)


def simulate_classical_batch(p: SimParams, traj_indices, emission_convention: str = "any-flip",
                             step_chunk: int = STEP_CHUNK) -> TrajectoryBatch:
    _check_convention(emission_convention)
    traj_indices = np.asarray(traj_indices, dtype=np.int64)
    n = traj_indices.size
    rngs = [trajectory_rng(p.seed, int(i)) for i in traj_indices]
    # the bias only depends on whether the spins are aligned
    p_aligned = flip_probability(1, 1, p)
    p_anti = flip_probability(1, 0, p)

    s1 = np.zeros(n, dtype=np.uint8)
    s2 = np.zeros(n, dtype=np.uint8)
    sample_steps = np.arange(0, p.steps, p.sample_stride, dtype=np.int64)
    states = np.empty((n, sample_steps.size, 2), dtype=np.uint8)
    r1 = np.zeros((n, p.steps), dtype=np.uint8)
    r2 = np.zeros((n, p.steps), dtype=np.uint8)

    for chunk_start in range(0, p.steps, step_chunk):
        chunk = min(step_chunk, p.steps - chunk_start)
        draws = draw_block(rngs, chunk, width=2)
        for offset in range(chunk):
            step = chunk_start + offset
            if step % p.sample_stride == 0:
                k = step // p.sample_stride
                states[:, k, 0] = s1
                states[:, k, 1] = s2
            prob = np.where(s1 == s2, p_aligned, p_anti)
            flip1 = draws[:, offset, 0] < prob
            flip2 = draws[:, offset, 1] < prob
            r1[:, step] = _emissions(flip1, s1, emission_convention)
            r2[:, step] = _emissions(flip2, s2, emission_convention)
            s1 = s1 ^ flip1.astype(np.uint8)
            s2 = s2 ^ flip2.astype(np.uint8)
    return TrajectoryBatch(traj_indices, r1, r2, sample_steps, states)


def run_trajectory_classical(p: SimParams, traj_index: int,
                             emission_convention: str = "any-flip") -> EmissionRecord:
    batch = simulate_classical_batch(p, [traj_index], emission_convention)
    return EmissionRecord(r1=batch.r1[0], r2=batch.r2[0], dt=p.dt, params=p, model="classical",
                          sample_steps=batch.sample_steps, states=batch.states[0])


def classical_mutual_information(occ: OccupancyTable) -> float:
    """I_cl = H(s1) + H(s2) - H(s1, s2) in nats."""
    table = occ.p
    mi = (shannon_entropy(table.sum(axis=1))
          + shannon_entropy(table.sum(axis=0))
          - shannon_entropy(table.ravel()))
    return max(mi, 0.0)

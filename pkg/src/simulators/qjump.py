# src/simulators/qjump.py
"""
Quantum-jump Monte Carlo for two driven, independently decaying qubits.

Between jumps the state follows U_eff = exp(-i H_eff dt); at each step a single
uniform draw u selects jump 1 on [0, p1), jump 2 on [p1, p1 + p2) and the
no-jump evolution otherwise. Trajectories start in |gg>.

The batched kernel keeps amplitudes as separate real and imaginary arrays and
combines them with elementwise operations only, so every trajectory's arithmetic
is identical whatever batch it is simulated in.
"""
import numpy as np

from matkit.dense import kron, mat_exp, partial_trace, von_neumann_entropy
from matkit.operators import IDENTITY_2, SIGMA_MINUS, SIGMA_X, SIGMA_Z, basis_index
from simulators.params import STEP_CHUNK, EmissionRecord, SimParams, TrajectoryBatch
from simulators.seeding import draw_block, trajectory_rng

NORM_TOL = 1e-8
GROUND = basis_index(0, 0)


def build_hamiltonian(p: SimParams) -> np.ndarray:
    """H = (omega/2)(sx (x) I + I (x) sx) + J sz (x) sz."""
    drive = kron(SIGMA_X, IDENTITY_2) + kron(IDENTITY_2, SIGMA_X)
    return 0.5 * p.omega * drive + p.coupling * kron(SIGMA_Z, SIGMA_Z)


def jump_operators(p: SimParams) -> tuple[np.ndarray, np.ndarray]:
    rate = np.sqrt(p.gamma)
    return rate * kron(SIGMA_MINUS, IDENTITY_2), rate * kron(IDENTITY_2, SIGMA_MINUS)


def build_effective_hamiltonian(p: SimParams) -> np.ndarray:
    """H_eff = H - (i/2) sum_i L_i^dag L_i."""
    decay = sum(op.conj().T @ op for op in jump_operators(p))
    return build_hamiltonian(p) - 0.5j * decay


def build_propagator(p: SimParams) -> np.ndarray:
    return mat_exp(build_effective_hamiltonian(p), -1j * p.dt)


def _populations(re: np.ndarray, im: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pop = re * re + im * im
    return pop[:, 0] + pop[:, 1], pop[:, 0] + pop[:, 2]


def _check_normalized(psi: np.ndarray, name: str) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise ValueError(f"{name}: expected 4 amplitudes, got shape {psi.shape}.")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"{name}: state is not normalized (norm = {norm:.12g}).")
    return psi


def jump_probabilities(psi, p: SimParams) -> tuple[float, float]:
    """p_i = gamma dt <psi| n_i |psi> for each qubit."""
    psi = _check_normalized(psi, "jump_probabilities")
    n1, n2 = _populations(psi.real[None, :], psi.imag[None, :])
    gamma_dt = p.gamma * p.dt
    return float(gamma_dt * n1[0]), float(gamma_dt * n2[0])


def _propagate(u_re, u_im, re, im):
    # out[i, j] = sum_k U[j, k] psi[i, k], accumulated in fixed k order
    out_re = re[:, 0:1] * u_re[:, 0] - im[:, 0:1] * u_im[:, 0]
    out_im = re[:, 0:1] * u_im[:, 0] + im[:, 0:1] * u_re[:, 0]
    for k in range(1, 4):
        out_re = out_re + (re[:, k:k + 1] * u_re[:, k] - im[:, k:k + 1] * u_im[:, k])
        out_im = out_im + (re[:, k:k + 1] * u_im[:, k] + im[:, k:k + 1] * u_re[:, k])
    return out_re, out_im


def _collapse(re, im, rows, norm_sq, source, target):
    if np.any(norm_sq[rows] <= 0.0):
        raise RuntimeError("qjump: jump selected on a branch with zero population.")
    scale = 1.0 / np.sqrt(norm_sq[rows])
    new_re = np.zeros((rows.size, 4))
    new_im = np.zeros((rows.size, 4))
    for src, dst in zip(source, target):
        new_re[:, dst] = re[rows, src] * scale
        new_im[:, dst] = im[rows, src] * scale
    return new_re, new_im


def step_batch(re, im, u_re, u_im, gamma_dt: float, draws):
    """
    One stochastic update of a batch of normalized states.

    Returns the next (re, im) arrays and the boolean emission masks.
    """
    n1, n2 = _populations(re, im)
    p1 = gamma_dt * n1
    p2 = gamma_dt * n2
    emit1 = draws < p1
    emit2 = ~emit1 & (draws < p1 + p2)

    next_re, next_im = _propagate(u_re, u_im, re, im)
    sq = next_re * next_re + next_im * next_im
    norm = np.sqrt((sq[:, 0] + sq[:, 1]) + (sq[:, 2] + sq[:, 3]))
    next_re = next_re / norm[:, None]
    next_im = next_im / norm[:, None]

    # sigma_minus on qubit 1 maps ee -> ge and eg -> gg; on qubit 2 ee -> eg and ge -> gg
    if emit1.any():
        rows = np.flatnonzero(emit1)
        next_re[rows], next_im[rows] = _collapse(re, im, rows, n1, source=(0, 1), target=(2, 3))
    if emit2.any():
        rows = np.flatnonzero(emit2)
        next_re[rows], next_im[rows] = _collapse(re, im, rows, n2, source=(0, 2), target=(1, 3))
    return next_re, next_im, emit1, emit2


def qj_step(psi, u_eff, p: SimParams, rng: np.random.Generator | None = None,
            u: float | None = None) -> tuple[np.ndarray, int, int]:
    """Single-state update; `u` forces the uniform draw instead of sampling `rng`."""
    psi = _check_normalized(psi, "qj_step")
    if u is None:
        if rng is None:
            raise ValueError("qj_step: either rng or a forced draw u is required.")
        u = rng.random()
    u_eff = np.asarray(u_eff, dtype=complex)
    next_re, next_im, emit1, emit2 = step_batch(
        psi.real[None, :], psi.imag[None, :], u_eff.real, u_eff.imag,
        p.gamma * p.dt, np.array([u]))
    return next_re[0] + 1j * next_im[0], int(emit1[0]), int(emit2[0])


def simulate_quantum_batch(p: SimParams, traj_indices, step_chunk: int = STEP_CHUNK) -> TrajectoryBatch:
    """Run the trajectories `traj_indices` side by side, each on its own stream."""
    traj_indices = np.asarray(traj_indices, dtype=np.int64)
    n = traj_indices.size
    rngs = [trajectory_rng(p.seed, int(i)) for i in traj_indices]
    u_eff = build_propagator(p)
    u_re, u_im = np.ascontiguousarray(u_eff.real), np.ascontiguousarray(u_eff.imag)
    gamma_dt = p.gamma * p.dt

    re = np.zeros((n, 4))
    im = np.zeros((n, 4))
    re[:, GROUND] = 1.0

    sample_steps = np.arange(0, p.steps, p.sample_stride, dtype=np.int64)
    states = np.empty((n, sample_steps.size, 4), dtype=complex)
    r1 = np.zeros((n, p.steps), dtype=np.uint8)
    r2 = np.zeros((n, p.steps), dtype=np.uint8)

    for chunk_start in range(0, p.steps, step_chunk):
        chunk = min(step_chunk, p.steps - chunk_start)
        draws = draw_block(rngs, chunk)
        for offset in range(chunk):
            step = chunk_start + offset
            if step % p.sample_stride == 0:
                states[:, step // p.sample_stride] = re + 1j * im
            re, im, emit1, emit2 = step_batch(re, im, u_re, u_im, gamma_dt, draws[:, offset])
            r1[:, step] = emit1
            r2[:, step] = emit2
    return TrajectoryBatch(traj_indices, r1, r2, sample_steps, states)


def run_trajectory(p: SimParams, traj_index: int) -> EmissionRecord:
    batch = simulate_quantum_batch(p, [traj_index])
    return EmissionRecord(r1=batch.r1[0], r2=batch.r2[0], dt=p.dt, params=p, model="quantum",
                          sample_steps=batch.sample_steps, states=batch.states[0])


def density_matrix_from_samples(states) -> np.ndarray:
    """Average of |psi><psi| over sampled amplitude vectors, shape (..., 4)."""
    psi = np.asarray(states, dtype=complex).reshape(-1, 4)
    if psi.shape[0] == 0:
        raise ValueError("density_matrix_from_samples: no state samples supplied.")
    return np.einsum("si,sj->ij", psi, psi.conj()) / psi.shape[0]


def ensemble_density_matrix(p: SimParams, window: tuple[int, int], ensemble=None) -> np.ndarray:
    """
    Density matrix averaged over every trajectory and every sample with
    window[0] <= step < window[1]. Runs the quantum ensemble when none is given.
    """
    start, end = window
    if not 0 <= start < end <= p.steps:
        raise ValueError(f"ensemble_density_matrix: window {window} is empty or outside [0, {p.steps}].")
    if ensemble is None:
        from simulators.ensemble import run_ensemble
        ensemble = run_ensemble(p, "quantum")
    states = ensemble.window_states(start, end)
    if states.size == 0:
        raise ValueError(f"ensemble_density_matrix: no state samples inside window {window}.")
    return density_matrix_from_samples(states)


def quantum_mutual_information(rho_ab) -> float:
    """I_AB = S(rho_A) + S(rho_B) - S(rho_AB) in nats."""
    rho_ab = np.asarray(rho_ab, dtype=complex)
    return (von_neumann_entropy(partial_trace(rho_ab, "A"))
            + von_neumann_entropy(partial_trace(rho_ab, "B"))
            - von_neumann_entropy(rho_ab))


def pure_state_mutual_information(states) -> float:
    """Mean of 2 S(rho_A) over pure-state samples, the per-trajectory MI reading."""
    psi = np.asarray(states, dtype=complex).reshape(-1, 2, 2)
    if psi.shape[0] == 0:
        raise ValueError("pure_state_mutual_information: no state samples supplied.")
    norms = np.einsum("sik,sik->s", psi, psi.conj()).real
    rho_a = np.einsum("sik,sjk->sij", psi, psi.conj()) / norms[:, None, None]
    eigvals = np.clip(np.linalg.eigvalsh(rho_a), 0.0, 1.0)
    terms = np.where(eigvals > 1e-12, -eigvals * np.log(np.where(eigvals > 1e-12, eigvals, 1.0)), 0.0)
    return float(np.mean(2.0 * terms.sum(axis=1)))

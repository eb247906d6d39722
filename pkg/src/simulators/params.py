# src/simulators/params.py
import os
import sys
from dataclasses import dataclass, field, fields

import numpy as np

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
config_dir = os.path.join(project_root, 'config')
if config_dir not in sys.path:
    sys.path.insert(0, config_dir)

try:
    from config import OMEGA, GAMMA, COUPLING, BETA, DT, STEPS, N_TRAJ, SEED, SAMPLE_STRIDE, \
                       MAX_GAMMA_DT, MAX_FLIP_PROBABILITY, STEP_CHUNK, TRAJECTORY_BATCH
except ImportError:
    print("ERROR (simulators.params): Could not import defaults from config.py.")
    raise

MAX_SEED = 2**64 - 1


class StepSizeError(ValueError):
    """A per-step probability exceeds its first-order validity bound; dt must shrink."""


@dataclass(frozen=True)
class SimParams:
    """Physical and numerical parameters shared by the quantum and classical engines."""
    omega: float = OMEGA
    gamma: float = GAMMA
    coupling: float = COUPLING
    beta: float = BETA
    dt: float = DT
    steps: int = STEPS
    n_traj: int = N_TRAJ
    seed: int = SEED
    sample_stride: int = SAMPLE_STRIDE

    def __post_init__(self):
        for name in ("omega", "gamma", "coupling", "beta", "dt"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"SimParams: {name} must be finite, got {value}.")
            object.__setattr__(self, name, float(value))
        for name in ("steps", "n_traj", "seed", "sample_stride"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ValueError(f"SimParams: {name} must be an integer, got {value}.")
            object.__setattr__(self, name, int(value))

        if self.omega < 0:
            raise ValueError(f"SimParams: omega must be >= 0, got {self.omega}.")
        if self.gamma < 0:
            raise ValueError(f"SimParams: gamma must be >= 0, got {self.gamma}.")
        if self.dt <= 0:
            raise ValueError(f"SimParams: dt must be > 0, got {self.dt}.")
        for name in ("steps", "n_traj", "sample_stride"):
            if getattr(self, name) < 1:
                raise ValueError(f"SimParams: {name} must be >= 1, got {getattr(self, name)}.")
        if not 0 <= self.seed <= MAX_SEED:
            raise ValueError(f"SimParams: seed must be an unsigned 64-bit integer, got {self.seed}.")
        if self.gamma * self.dt > MAX_GAMMA_DT:
            raise ValueError(
                f"SimParams: gamma*dt = {self.gamma * self.dt:.4g} exceeds {MAX_GAMMA_DT}; "
                f"reduce dt below {MAX_GAMMA_DT / self.gamma:.4g}.")

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class ClassicalState:
    s1: int
    s2: int

    def __post_init__(self):
        if self.s1 not in (0, 1) or self.s2 not in (0, 1):
            raise ValueError(f"ClassicalState: spins must be 0 or 1, got ({self.s1}, {self.s2}).")


@dataclass(frozen=True)
class TrajectoryBatch:
    """Records of a contiguous block of trajectories, stacked along the first axis."""
    traj_indices: np.ndarray
    r1: np.ndarray            # (n, steps) uint8
    r2: np.ndarray
    sample_steps: np.ndarray  # (m,) step index of each state sample
    states: np.ndarray        # (n, m, 4) complex amplitudes or (n, m, 2) spins


@dataclass(frozen=True)
class EmissionRecord:
    """Per-channel emission bits of one trajectory plus its sampled states."""
    r1: np.ndarray
    r2: np.ndarray
    dt: float
    params: SimParams
    model: str
    sample_steps: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    states: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), dtype=np.uint8))

    def __post_init__(self):
        r1 = np.asarray(self.r1, dtype=np.uint8)
        r2 = np.asarray(self.r2, dtype=np.uint8)
        if r1.shape != (self.params.steps,) or r2.shape != (self.params.steps,):
            raise ValueError(
                f"EmissionRecord: channels must have length steps={self.params.steps}, "
                f"got {r1.shape} and {r2.shape}.")
        if np.any(r1 > 1) or np.any(r2 > 1):
            raise ValueError("EmissionRecord: emission channels must contain only 0 and 1.")
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)

    @property
    def steps(self) -> int:
        return self.params.steps

    @property
    def state_samples(self) -> list[tuple[int, np.ndarray]]:
        return [(int(step), state) for step, state in zip(self.sample_steps, self.states)]

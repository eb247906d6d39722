# src/simulators/seeding.py
import numpy as np


def trajectory_rng(seed: int, traj_index: int) -> np.random.Generator:
    """
    Independent random stream for one trajectory.

    The splitting function is SeedSequence(entropy=seed, spawn_key=(traj_index,))
    feeding a PCG64 generator, so a trajectory's draws depend only on
    (seed, traj_index) and never on scheduling or batch layout.
    """
    if traj_index < 0:
        raise ValueError(f"trajectory_rng: trajectory index must be >= 0, got {traj_index}.")
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(traj_index),))
    return np.random.Generator(np.random.PCG64(sequence))


def draw_block(rngs: list[np.random.Generator], size: int, width: int = 1) -> np.ndarray:
    """Next `size` steps of uniforms from every stream, shape (len(rngs), size[, width])."""
    shape = (size,) if width == 1 else (size, width)
    return np.stack([rng.random(shape) for rng in rngs])

# src/metrics/information.py
from dataclasses import dataclass

import numpy as np

from matkit.operators import excitations

PROBABILITY_TOL = 1e-9


@dataclass(frozen=True)
class OccupancyTable:
    """Joint probabilities P(s1, s2), indexed p[s1, s2]."""
    p: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.p, dtype=float)
        if table.shape != (2, 2):
            raise ValueError(f"OccupancyTable: expected a 2x2 table, got shape {table.shape}.")
        if np.any(table < 0) or abs(table.sum() - 1.0) > PROBABILITY_TOL:
            raise ValueError(f"OccupancyTable: entries must be >= 0 and sum to 1, got {table.ravel()}.")
        object.__setattr__(self, "p", table)

    def as_row(self) -> tuple[float, float, float, float]:
        """(p00, p01, p10, p11)"""
        return tuple(float(v) for v in self.p.ravel())


def shannon_entropy(dist) -> float:
    """-sum p ln p in nats with 0 ln 0 = 0."""
    dist = np.asarray(dist, dtype=float).ravel()
    if dist.size == 0 or np.any(dist < 0) or abs(dist.sum() - 1.0) > PROBABILITY_TOL:
        raise ValueError(f"shannon_entropy: not a probability distribution: {dist}.")
    nonzero = dist[dist > 0]
    return float(-np.sum(nonzero * np.log(nonzero)))


def occupancy_table(samples) -> OccupancyTable:
    """Empirical frequencies of the four joint spin states."""
    if not isinstance(samples, np.ndarray):
        samples = [(s.s1, s.s2) if hasattr(s, "s1") else tuple(s) for s in samples]
    pairs = np.asarray(samples, dtype=np.int64).reshape(-1, 2)
    if pairs.shape[0] == 0:
        raise ValueError("occupancy_table: no samples supplied.")
    if np.any((pairs != 0) & (pairs != 1)):
        raise ValueError("occupancy_table: spin samples must be 0 or 1.")
    counts = np.bincount(2 * pairs[:, 0] + pairs[:, 1], minlength=4)
    return OccupancyTable((counts / pairs.shape[0]).reshape(2, 2))


def occupancy_from_density_matrix(rho) -> OccupancyTable:
    """Computational-basis populations of a two-qubit density matrix."""
    diag = np.clip(np.real(np.diag(np.asarray(rho))), 0.0, None)
    if diag.shape != (4,) or diag.sum() <= 0:
        raise ValueError("occupancy_from_density_matrix: expected a 4x4 density matrix.")
    table = np.zeros((2, 2))
    for index, weight in enumerate(diag / diag.sum()):
        table[excitations(index)] = weight
    return OccupancyTable(table)

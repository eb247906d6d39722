# src/metrics/counting.py
import numpy as np
from scipy.stats import linregress


def cumulative_counts(rec) -> tuple[np.ndarray, np.ndarray]:
    """Running emission totals N1(t), N2(t) of an EmissionRecord."""
    return np.cumsum(rec.r1, dtype=np.int64), np.cumsum(rec.r2, dtype=np.int64)


def emission_rate(rec, start: int = 0) -> tuple[float, float]:
    """Mean emissions per unit time of each channel over steps >= start."""
    if not 0 <= start < rec.r1.size:
        raise ValueError(f"emission_rate: start must be in [0, {rec.r1.size}), got {start}.")
    return float(rec.r1[start:].mean() / rec.dt), float(rec.r2[start:].mean() / rec.dt)


def counts_slope(n1, n2) -> float:
    """Least-squares slope of N2 against N1."""
    n1 = np.asarray(n1, dtype=float)
    n2 = np.asarray(n2, dtype=float)
    if n1.size < 2 or np.ptp(n1) == 0:
        raise ValueError("counts_slope: N1 must take at least two distinct values.")
    return float(linregress(n1, n2).slope)

# src/metrics/correlations.py
"""
Lagged time averages of emission records.

values[tau] = 1/(n - tau) * sum_t a[t] b[t + tau]: the second record is advanced
by tau, and each lag averages over its n - tau overlapping pairs.
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CorrelationSeries:
    lags: np.ndarray    # in units of dt
    values: np.ndarray

    def __post_init__(self):
        lags = np.asarray(self.lags, dtype=np.int64)
        values = np.asarray(self.values, dtype=float)
        if lags.ndim != 1 or lags.shape != values.shape:
            raise ValueError(f"CorrelationSeries: lags {lags.shape} and values {values.shape} must match.")
        if lags.size and (lags[0] != 0 or np.any(np.diff(lags) <= 0)):
            raise ValueError("CorrelationSeries: lags must start at 0 and increase strictly.")
        if not np.all(np.isfinite(values)):
            raise ValueError("CorrelationSeries: values must be finite.")
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "values", values)


def _lag_average(a: np.ndarray, b: np.ndarray, max_lag: int) -> np.ndarray:
    n = a.size
    return np.array([np.dot(a[:n - tau], b[tau:]) / (n - tau) for tau in range(max_lag + 1)])


def cross_correlation(r1, r2, max_lag: int, centered: bool = False) -> CorrelationSeries:
    """<r1(t) r2(t + tau)>_t; `centered` subtracts each record's mean first."""
    a = np.asarray(getattr(r1, "symbols", r1), dtype=float)
    b = np.asarray(getattr(r2, "symbols", r2), dtype=float)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"cross_correlation: records must be 1-D with equal lengths, got {a.shape} and {b.shape}.")
    if not 0 <= max_lag < a.size:
        raise ValueError(f"cross_correlation: max_lag must be in [0, {a.size}), got {max_lag}.")
    if centered:
        a = a - a.mean()
        b = b - b.mean()
    return CorrelationSeries(np.arange(max_lag + 1), _lag_average(a, b, max_lag))


def autocorrelation(r, max_lag: int, centered: bool = False) -> CorrelationSeries:
    return cross_correlation(r, r, max_lag, centered)


def delta_correlation(c_j: CorrelationSeries, c_0: CorrelationSeries) -> CorrelationSeries:
    """C(tau, J) - C(tau, 0) on a shared lag grid."""
    if not np.array_equal(c_j.lags, c_0.lags):
        raise ValueError("delta_correlation: correlation series use different lag grids.")
    return CorrelationSeries(c_j.lags, c_j.values - c_0.values)

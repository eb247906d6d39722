# src/metrics/statistics.py
import numpy as np
from scipy import stats


class UndefinedCorrelationError(ValueError):
    """Rank correlation is undefined for fewer than three points or constant ranks."""


def mean_sem(values) -> tuple[float, float]:
    """Sample mean and its standard error; the error is 0 for a single value."""
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("mean_sem: no values supplied.")
    if values.size == 1:
        return float(values[0]), 0.0
    return float(values.mean()), float(values.std(ddof=1) / np.sqrt(values.size))


def spearman(x, y) -> tuple[float, float]:
    """
    Spearman rank correlation with average ranks for ties and a two-sided
    p-value from t = rho sqrt((n - 2) / (1 - rho^2)) on n - 2 degrees of freedom.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise ValueError(f"spearman: inputs differ in length ({x.size} vs {y.size}).")
    n = x.size
    if n < 3:
        raise UndefinedCorrelationError(f"spearman: need at least 3 points, got {n}.")
    rank_x = stats.rankdata(x)
    rank_y = stats.rankdata(y)
    if np.ptp(rank_x) == 0 or np.ptp(rank_y) == 0:
        raise UndefinedCorrelationError("spearman: ranks of one input have zero variance.")
    rho = float(np.clip(np.corrcoef(rank_x, rank_y)[0, 1], -1.0, 1.0))
    if abs(rho) == 1.0:
        return rho, 0.0
    t = rho * np.sqrt((n - 2) / (1.0 - rho * rho))
    return rho, float(2.0 * stats.t.sf(abs(t), n - 2))


def welch_t_test(mean_a: float, sem_a: float, n_a: int,
                 mean_b: float, sem_b: float, n_b: int) -> tuple[float, float]:
    """Welch t statistic and two-sided p-value from means and their standard errors."""
    if sem_a <= 0 or sem_b <= 0:
        raise ValueError(f"welch_t_test: standard errors must be > 0, got {sem_a} and {sem_b}.")
    if n_a < 2 or n_b < 2:
        raise ValueError(f"welch_t_test: sample sizes must be >= 2, got {n_a} and {n_b}.")
    result = stats.ttest_ind_from_stats(mean_a, sem_a * np.sqrt(n_a), n_a,
                                        mean_b, sem_b * np.sqrt(n_b), n_b, equal_var=False)
    return float(result.statistic), float(result.pvalue)

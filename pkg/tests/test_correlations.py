# tests/test_correlations.py
import numpy as np
import pytest

from metrics.correlations import CorrelationSeries, autocorrelation, cross_correlation, delta_correlation


def test_zero_lag_autocorrelation_is_the_mean(rng):
    r = (rng.random(5000) < 0.2).astype(np.uint8)
    c = autocorrelation(r, 20)
    assert np.isclose(c.values[0], r.mean())
    assert c.lags.tolist() == list(range(21))


def test_second_channel_is_advanced_by_tau():
    r1 = np.zeros(100, dtype=np.uint8)
    r2 = np.zeros(100, dtype=np.uint8)
    r1[10] = 1
    r2[13] = 1
    forward = cross_correlation(r1, r2, 5)
    assert np.flatnonzero(forward.values).tolist() == [3]
    assert np.isclose(forward.values[3], 1 / 97)
    backward = cross_correlation(r2, r1, 5)
    assert np.all(backward.values == 0)


def test_unbiased_lag_normalization():
    ones = np.ones(10, dtype=np.uint8)
    assert np.allclose(cross_correlation(ones, ones, 9).values, 1.0)


def test_centered_constant_record_has_no_covariance():
    ones = np.ones(50)
    assert np.allclose(autocorrelation(ones, 5, centered=True).values, 0.0)


def test_independent_channels_factorize(rng):
    r1 = (rng.random(200_000) < 0.1).astype(np.uint8)
    r2 = (rng.random(200_000) < 0.3).astype(np.uint8)
    c = cross_correlation(r1, r2, 10)
    assert np.allclose(c.values, r1.mean() * r2.mean(), atol=0.003)


def test_max_lag_bounds():
    r = np.zeros(10)
    with pytest.raises(ValueError):
        cross_correlation(r, r, 10)
    with pytest.raises(ValueError):
        cross_correlation(r, r, -1)
    with pytest.raises(ValueError):
        cross_correlation(r, np.zeros(9), 2)


def test_delta_correlation():
    a = CorrelationSeries(np.arange(3), np.array([0.3, 0.2, 0.1]))
    b = CorrelationSeries(np.arange(3), np.array([0.1, 0.1, 0.1]))
    assert np.allclose(delta_correlation(a, b).values, [0.2, 0.1, 0.0])
    assert np.allclose(delta_correlation(a, a).values, 0.0)
    with pytest.raises(ValueError):
        delta_correlation(a, CorrelationSeries(np.arange(2), np.zeros(2)))


def test_series_validation():
    with pytest.raises(ValueError):
        CorrelationSeries(np.array([1, 2]), np.zeros(2))
    with pytest.raises(ValueError):
        CorrelationSeries(np.arange(2), np.array([0.0, np.inf]))

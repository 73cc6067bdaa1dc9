import numpy as np
import pytest

from app.core.errors import InputValidationError, InsufficientSamplesError
from app.services.sampling import (
    ensemble_batcher,
    estimate_moment,
    infinitesimal_estimator,
    sample_goe,
    sample_wishart,
    trace_power_samples,
)


def test_samples_are_reproducible_from_a_seed():
    first, second = sample_goe(6, seed=11), sample_goe(6, seed=11)

    assert np.array_equal(first, second)
    assert np.allclose(first, first.T)
    assert not np.array_equal(first, sample_goe(6, seed=12))


def test_wishart_samples_are_hermitian_and_positive():
    w = sample_wishart(8, 5, seed=3)

    assert w.shape == (5, 5)
    assert np.allclose(w, w.conj().T)
    assert np.linalg.eigvalsh(w).min() > -1e-12


def test_trace_samples_use_every_batch(monkeypatch):
    from app.core.config import settings

    monkeypatch.setattr(settings, "sampling_batch", 7)
    values = trace_power_samples(ensemble_batcher("goe", 4), 2, 20, seed=5)

    assert values.shape == (20,)
    assert np.array_equal(values, trace_power_samples(ensemble_batcher("goe", 4), 2, 20, seed=5))


def test_goe_second_moment_within_standard_errors():
    N = 20
    stats = estimate_moment(ensemble_batcher("goe", N), 2, 2000, seed=1)

    assert stats.samples == 2000
    assert abs(stats.mean - (1 + 1 / N)) < 4 * stats.std_error


def test_wishart_first_moment_within_standard_errors():
    stats = estimate_moment(ensemble_batcher("wishart", 10, 25), 1, 2000, seed=2)

    assert abs(stats.mean - 2.5) < 4 * stats.std_error


def test_infinitesimal_estimate_with_known_limit():
    estimate = infinitesimal_estimator(lambda N: ensemble_batcher("goe", N), 2, [10, 20, 40], 2000, seed=4, limit=1.0)

    assert estimate.sizes == [10, 20, 40]
    assert estimate.limit == 1.0
    assert abs(estimate.infinitesimal - 1.0) < 4 * estimate.infinitesimal_std_error
    assert set(estimate.to_dict()) == {"limit", "infinitesimal", "sizes", "per_size"}


@pytest.mark.slow
def test_goe_fourth_moment_correction_large_sample():
    estimate = infinitesimal_estimator(lambda N: ensemble_batcher("goe", N), 4, [20, 40], 100_000, seed=9, limit=2.0)

    assert abs(estimate.infinitesimal - 5.0) < 4 * estimate.infinitesimal_std_error


def test_sampling_validation():
    with pytest.raises(InputValidationError):
        ensemble_batcher("gue", 4)
    with pytest.raises(InputValidationError):
        ensemble_batcher("wishart", 4)
    with pytest.raises(InputValidationError):
        sample_goe(0)
    with pytest.raises(InsufficientSamplesError):
        estimate_moment(ensemble_batcher("goe", 4), 2, 0)
    with pytest.raises(InputValidationError):
        infinitesimal_estimator(lambda N: ensemble_batcher("goe", N), 2, [10, 10], 10)

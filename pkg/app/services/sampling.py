"""Monte-Carlo sampling of GOE and complex Wishart matrices and moment estimators."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from app.core.config import settings
from app.core.errors import InputValidationError, InsufficientSamplesError

logger = logging.getLogger(__name__)

Sampler = Callable[[np.random.Generator, int], np.ndarray]


def make_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.default_rng(settings.default_seed if seed is None else seed)


def spawn_rngs(seed: int | None, count: int) -> list[np.random.Generator]:
    """Independent streams, one per batch, derived from a single seed."""
    root = np.random.SeedSequence(settings.default_seed if seed is None else seed)
    return [np.random.default_rng(child) for child in root.spawn(count)]


def _check_size(N: int, name: str = "N") -> None:
    if N < 1:
        raise InputValidationError(f"{name} must be at least 1")


def goe_batch(rng: np.random.Generator, N: int, batch: int) -> np.ndarray:
    """batch × N × N symmetric matrices X = (G + Gᵀ)/√(2N)."""
    g = rng.standard_normal((batch, N, N))
    return (g + np.swapaxes(g, 1, 2)) / np.sqrt(2.0 * N)


def wishart_batch(rng: np.random.Generator, M: int, N: int, batch: int) -> np.ndarray:
    """batch × N × N matrices G*G/N, G of size M×N with entries (a + ib)/√2."""
    g = (rng.standard_normal((batch, M, N)) + 1j * rng.standard_normal((batch, M, N))) / np.sqrt(2.0)
    return np.conj(np.swapaxes(g, 1, 2)) @ g / N


def sample_goe(N: int, seed: int | None = None) -> np.ndarray:
    _check_size(N)
    return goe_batch(make_rng(seed), N, 1)[0]


def sample_wishart(M: int, N: int, seed: int | None = None) -> np.ndarray:
    _check_size(M, "M")
    _check_size(N)
    return wishart_batch(make_rng(seed), M, N, 1)[0]


def ensemble_batcher(ensemble: str, N: int, M: int | None = None) -> Sampler:
    """(rng, batch) -> stacked matrices for a named ensemble."""
    _check_size(N)
    if ensemble == "goe":
        return lambda rng, batch: goe_batch(rng, N, batch)
    if ensemble == "goe-average":
        return lambda rng, batch: (goe_batch(rng, N, batch) + goe_batch(rng, N, batch)) / np.sqrt(2.0)
    if ensemble == "wishart":
        if M is None:
            raise InputValidationError("a Wishart ensemble needs M")
        _check_size(M, "M")
        return lambda rng, batch: wishart_batch(rng, M, N, batch)
    raise InputValidationError(f"unknown ensemble {ensemble!r}")


@dataclass
class SampleStats:
    mean: float
    std_error: float
    samples: int

    def to_dict(self) -> dict[str, Any]:
        return {"estimate": self.mean, "std_error": self.std_error, "samples": self.samples}


def trace_power_samples(sampler: Sampler, power: int, samples: int, seed: int | None = None) -> np.ndarray:
    """tr(Xᵏ) for `samples` independent draws, generated in batches."""
    if power < 1:
        raise InputValidationError("power must be at least 1")
    if samples < 1:
        raise InsufficientSamplesError("at least one sample is required")
    batch = settings.sampling_batch
    sizes = [batch] * (samples // batch) + ([samples % batch] if samples % batch else [])
    out = []
    for rng, size in zip(spawn_rngs(seed, len(sizes)), sizes):
        x = sampler(rng, size)
        traces = np.trace(np.linalg.matrix_power(x, power), axis1=1, axis2=2) / x.shape[1]
        out.append(np.real(traces))
    return np.concatenate(out)


def estimate_moment(sampler: Sampler, power: int, samples: int, seed: int | None = None) -> SampleStats:
    values = trace_power_samples(sampler, power, samples, seed)
    std_error = float(values.std(ddof=1) / np.sqrt(len(values))) if len(values) > 1 else float("inf")
    return SampleStats(float(values.mean()), std_error, len(values))


@dataclass
class InfinitesimalEstimate:
    limit: float
    limit_std_error: float
    infinitesimal: float
    infinitesimal_std_error: float
    sizes: list[int]
    raw: list[SampleStats]

    def to_dict(self) -> dict[str, Any]:
        return {
            "limit": {"estimate": self.limit, "std_error": self.limit_std_error},
            "infinitesimal": {"estimate": self.infinitesimal, "std_error": self.infinitesimal_std_error},
            "sizes": self.sizes,
            "per_size": [stats.to_dict() for stats in self.raw],
        }


def _extrapolation_weights(xs: Sequence[float], coefficient: int) -> np.ndarray:
    """Weights w with Σ w_i y_i = the given coefficient of the interpolant through (x_i, y_i)."""
    vandermonde = np.vander(np.asarray(xs, dtype=float), len(xs), increasing=True)
    return np.linalg.inv(vandermonde)[coefficient]


def infinitesimal_estimator(
    make_sampler: Callable[[int], Sampler],
    power: int,
    sizes: Sequence[int],
    samples: int,
    seed: int | None = None,
    limit: float | None = None,
) -> InfinitesimalEstimate:
    """Estimate (m, m′) for tr(Xᵏ) from sample means at several sizes N.

    With the exact limit m known, N(mean − m) is extrapolated to N = ∞;
    otherwise the means are fitted as a polynomial in 1/N and its first two
    coefficients are read off. Standard errors follow from the linear weights.
    """
    sizes = sorted(set(int(N) for N in sizes))
    if len(sizes) < 2:
        raise InputValidationError("the N-ladder needs at least two sizes")
    if samples < 2:
        raise InsufficientSamplesError("at least two samples per size are required")
    seeds = np.random.SeedSequence(settings.default_seed if seed is None else seed).generate_state(len(sizes))
    raw = [estimate_moment(make_sampler(N), power, samples, int(s)) for N, s in zip(sizes, seeds)]
    means = np.array([r.mean for r in raw])
    errors = np.array([r.std_error for r in raw])
    xs = [1.0 / N for N in sizes]
    scales = np.array(sizes, dtype=float)
    if limit is not None:
        weights = _extrapolation_weights(xs, 0) * scales
        infinitesimal = float(weights @ (means - limit))
        inf_error = float(np.sqrt(np.sum((weights * errors) ** 2)))
        limit_value, limit_error = float(limit), 0.0
    else:
        w0, w1 = _extrapolation_weights(xs, 0), _extrapolation_weights(xs, 1)
        limit_value = float(w0 @ means)
        limit_error = float(np.sqrt(np.sum((w0 * errors) ** 2)))
        infinitesimal = float(w1 @ means)
        inf_error = float(np.sqrt(np.sum((w1 * errors) ** 2)))
    logger.info("infinitesimal estimate over N=%s: %.4f ± %.4f", sizes, infinitesimal, inf_error)
    return InfinitesimalEstimate(limit_value, limit_error, infinitesimal, inf_error, sizes, raw)

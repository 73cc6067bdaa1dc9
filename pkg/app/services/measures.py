"""Closed-form limit measures and their moments by quadrature."""

from __future__ import annotations

import logging
import warnings
from fractions import Fraction
from math import comb

import numpy as np
from scipy import integrate

from app.core.config import settings
from app.core.errors import InputValidationError, QuadratureError
from app.models.measure import SignedMeasureModel

logger = logging.getLogger(__name__)


def mp_edges(c: float) -> tuple[float, float]:
    root = float(np.sqrt(c))
    return (1.0 - root) ** 2, (1.0 + root) ** 2


def _positive(c: float | Fraction, name: str = "c") -> float:
    value = float(c)
    if not value > 0:
        raise InputValidationError(f"{name} must be positive")
    return value


def narayana(n: int, k: int) -> int:
    """Number of π ∈ NC(n) with k blocks."""
    if n == 0:
        return 1 if k == 0 else 0
    if not 1 <= k <= n:
        return 0
    return comb(n, k) * comb(n, k - 1) // n


def mp_moment(n: int, c: Fraction | int) -> Fraction:
    """Σ_{π∈NC(n)} c^{#π}."""
    c = Fraction(c)
    return sum((narayana(n, k) * c**k for k in range(n + 1)), start=Fraction(0))


def mp_inf_moment(n: int, c: Fraction | int, c_prime: Fraction | int) -> Fraction:
    """Σ_{π∈NC(n)} c′·#π·c^{#π−1}."""
    c, c_prime = Fraction(c), Fraction(c_prime)
    return sum((narayana(n, k) * k * c ** (k - 1) * c_prime for k in range(1, n + 1)), start=Fraction(0))


def goe_inf_moment_formula(n: int) -> int:
    """½(2ⁿ − C(n, n/2)) for even n ≥ 2, zero otherwise."""
    if n % 2 or n == 0:
        return 0
    return (2**n - comb(n, n // 2)) // 2


# -- models --------------------------------------------------------------------------


def semicircle_measure() -> SignedMeasureModel:
    return SignedMeasureModel("semicircle", -2.0, 2.0, lambda x: 1.0 / (2.0 * np.pi), "sqrt")


def arcsine_measure() -> SignedMeasureModel:
    return SignedMeasureModel("arcsine", -2.0, 2.0, lambda x: 1.0 / np.pi, "inv_sqrt")


def goe_inf_measure() -> SignedMeasureModel:
    """½(Bernoulli(±2) − arcsine): atoms ¼ at ±2 and density −1/(2π√(4−x²))."""
    return SignedMeasureModel(
        "goe-infinitesimal",
        -2.0,
        2.0,
        lambda x: -1.0 / (2.0 * np.pi),
        "inv_sqrt",
        atoms=((-2.0, 0.25), (2.0, 0.25)),
        expected_mass=0.0,
    )


def mp_measure(c: float | Fraction) -> SignedMeasureModel:
    """Marchenko–Pastur law with ratio c: √((b−x)(x−a))/(2πx) plus an atom 1−c at 0 when c < 1."""
    c = _positive(c)
    a, b = mp_edges(c)
    atoms = ((0.0, 1.0 - c),) if c < 1 else ()
    return SignedMeasureModel(f"marchenko-pastur(c={c:g})", a, b, lambda x: 1.0 / (2.0 * np.pi * x), "sqrt", atoms)


def wishart_inf_measure(c: float | Fraction, c_prime: float | Fraction) -> SignedMeasureModel:
    """μ′ for Wishart matrices with M = cN + c′.

    Continuous part c′(x+1−c)/(2πxQ(x)) on (a, b); atom at 0 of mass −c′ for
    c < 1, −c′/2 for c = 1, none for c > 1.
    """
    c = _positive(c)
    c_prime = float(c_prime)
    a, b = mp_edges(c)
    if c < 1:
        atoms: tuple[tuple[float, float], ...] = ((0.0, -c_prime),)
    elif c == 1:
        atoms = ((0.0, -c_prime / 2.0),)
    else:
        atoms = ()
    return SignedMeasureModel(
        f"wishart-infinitesimal(c={c:g}, c'={c_prime:g})",
        a,
        b,
        lambda x: c_prime * (x + 1.0 - c) / (2.0 * np.pi * x),
        "inv_sqrt",
        atoms,
        expected_mass=0.0,
    )


# -- quadrature -----------------------------------------------------------------------------


def _quad(model: SignedMeasureModel, power: int) -> float:
    tol = settings.quad_tol
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, error = integrate.quad(
                model.theta_integrand, 0.0, np.pi / 2.0, args=(power,), epsabs=tol, epsrel=tol, limit=200
            )
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(f"quadrature for {model.name}, n={power} failed: {exc}") from exc
    if error > 1e-8 * max(1.0, abs(value)):
        logger.warning("quadrature error %.2e for %s, n=%d", error, model.name, power)
    return float(value)


def moment_check_measure(model: SignedMeasureModel, n: int) -> float:
    """∫ xⁿ dμ: quadrature of the continuous part plus the atoms."""
    if n < 0:
        raise InputValidationError("n must be non-negative")
    atoms = sum(mass * (1.0 if n == 0 else where**n) for where, mass in model.atoms)
    return _quad(model, n) + atoms


def total_mass(model: SignedMeasureModel) -> float:
    return moment_check_measure(model, 0)


def formal_derivative_gap(c: float, c_prime: float, xs: np.ndarray, step: float = 1e-5) -> float:
    """max |c′·∂_c ρ_c(x) − ρ′(x)| over xs, ρ_c the MP density and ρ′ the μ′ density.

    Only meaningful for c ≠ 1, where the atom of μ′ is −c′·∂_c(1−c)⁺ as well.
    """
    if abs(c - 1.0) < 10 * step:
        raise InputValidationError("the formal derivative picture is not modelled at c = 1")
    upper, lower = mp_measure(c + step), mp_measure(c - step)
    target = wishart_inf_measure(c, c_prime)
    gap = 0.0
    for x in xs:
        derivative = (upper.density(float(x)) - lower.density(float(x))) / (2.0 * step)
        gap = max(gap, abs(c_prime * derivative - target.density(float(x))))
    return gap


def limit_pair(ensemble: str, c: float | Fraction = 1, c_prime: float | Fraction = 1) -> tuple[SignedMeasureModel, SignedMeasureModel]:
    """(μ, μ′) for a named ensemble."""
    if ensemble == "goe":
        return semicircle_measure(), goe_inf_measure()
    if ensemble == "wishart":
        return mp_measure(c), wishart_inf_measure(c, c_prime)
    raise InputValidationError(f"unknown ensemble {ensemble!r}; expected goe or wishart")


def density_rows(ensemble: str, grid: int, c: float | Fraction = 1, c_prime: float | Fraction = 1) -> dict[str, object]:
    """(x, μ density, μ′ density) on a midpoint grid of the support, plus both atom lists."""
    if grid < 1:
        raise InputValidationError("grid must be at least 1")
    mu, mu_prime = limit_pair(ensemble, c, c_prime)
    xs = mu_prime.grid(grid)
    rows = [[float(x), mu.density(float(x)), mu_prime.density(float(x))] for x in xs]
    return {
        "ensemble": ensemble,
        "support": [mu_prime.a, mu_prime.b],
        "columns": ["x", "mu", "mu_prime"],
        "rows": rows,
        "atoms": {"mu": mu.to_dict()["atoms"], "mu_prime": mu_prime.to_dict()["atoms"]},
    }

"""Cauchy / R-transform algebra over dual numbers, closed forms and Stieltjes inversion.

Conventions: a Cauchy-type series lives in REGIME_INV with coefficient k the
weight of w^k, w = 1/z, so G = Σ m_n w^{n+1}. R-type series live in REGIME_Z,
R(u) = Σ κ_n u^{n−1}. A DualSeries carries the infinitesimal part as its
ε-coefficients, so G + εg and R + εr travel together.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from app.core.config import enforce_cap, settings
from app.core.errors import ExtrapolationError, InconsistentSeriesError, InputValidationError
from app.models.series import REGIME_INV, REGIME_Z, DualSeries
from app.services.measures import goe_inf_moment_formula, mp_edges, mp_inf_moment, mp_moment
from app.services.noncrossing import catalan

logger = logging.getLogger(__name__)

ENSEMBLES = ("goe", "wishart")


# -- series data ----------------------------------------------------------------------


def _check_order(order: int) -> None:
    if order < 2:
        raise InputValidationError("series order must be at least 2")
    enforce_cap("series order", order, "series_max_order")


def semicircle_moment(n: int) -> int:
    return catalan(n // 2) if n % 2 == 0 else 0


def goe_cauchy_series(order: int) -> DualSeries:
    """G + εg for the GOE: semicircle moments with the infinitesimal moments as ε-part."""
    _check_order(order)
    values = [0] + [semicircle_moment(k - 1) for k in range(1, order)]
    inf = [0] + [goe_inf_moment_formula(k - 1) for k in range(1, order)]
    return DualSeries.from_parts(values, inf, REGIME_INV)


def goe_r_series(order: int) -> DualSeries:
    """R(u) = u with r(u) = u/(1−u²)."""
    _check_order(order)
    values = [1 if k == 1 else 0 for k in range(order)]
    inf = [1 if k % 2 == 1 else 0 for k in range(order)]
    return DualSeries.from_parts(values, inf, REGIME_Z)


def wishart_cauchy_series(order: int, c: Fraction | int, c_prime: Fraction | int) -> DualSeries:
    _check_order(order)
    c, c_prime = Fraction(c), Fraction(c_prime)
    values = [0] + [mp_moment(k - 1, c) for k in range(1, order)]
    inf = [0] + [mp_inf_moment(k - 1, c, c_prime) for k in range(1, order)]
    return DualSeries.from_parts(values, inf, REGIME_INV)


def wishart_r_series(order: int, c: Fraction | int, c_prime: Fraction | int) -> DualSeries:
    """R(u) = c/(1−u) with r(u) = c′/(1−u): every κ_n = c and κ′_n = c′."""
    _check_order(order)
    return DualSeries.from_parts([Fraction(c)] * order, [Fraction(c_prime)] * order, REGIME_Z)


def ensemble_series(ensemble: str, order: int, c: Any = 1, c_prime: Any = 1) -> tuple[DualSeries, DualSeries]:
    """(G + εg, R + εr) for a named ensemble."""
    if ensemble == "goe":
        return goe_cauchy_series(order), goe_r_series(order)
    if ensemble == "wishart":
        c, c_prime = Fraction(c), Fraction(c_prime)
        if c <= 0:
            raise InputValidationError("c must be positive")
        return wishart_cauchy_series(order, c, c_prime), wishart_r_series(order, c, c_prime)
    raise InputValidationError(f"unknown ensemble {ensemble!r}; expected one of {', '.join(ENSEMBLES)}")


# -- the infinitesimal relation -------------------------------------------------------


def _check_cauchy(G: DualSeries) -> None:
    if G.regime != REGIME_INV:
        raise InputValidationError("a Cauchy series must be given in the 1/z regime")
    if not G[0].is_zero() or G[1].a != 1:
        raise InconsistentSeriesError("a Cauchy series must start w + O(w²)")


def voiculescu_residual(G: DualSeries, R: DualSeries) -> DualSeries:
    """w/G + w·R(G) − 1, which vanishes when 1/G + R(G) = z.

    With dual coefficients the ε-part is the infinitesimal identity as well.
    """
    _check_cauchy(G)
    q = G.shift(-1)
    residual = q.reciprocal() + R.compose(G).shift(1)
    one = DualSeries.from_parts([1] + [0] * (residual.order - 1), regime=REGIME_INV)
    return residual - one


def is_consistent(G: DualSeries, R: DualSeries) -> bool:
    residual = voiculescu_residual(G, R)
    return residual.valuation() >= residual.order


def g_from_r(r: DualSeries, G: DualSeries, R: DualSeries | None = None) -> DualSeries:
    """g(z) = −r(G(z))·G′(z) as a 1/z series.

    In w = 1/z this reads g = r(G)·w²·dG/dw. Only the value parts of r and G
    are used; when R is given its consistency with G is checked first.
    """
    _check_cauchy(G)
    if r.regime != REGIME_Z:
        raise InputValidationError("r must be a power series in its argument")
    if R is not None and not is_consistent(G.value_part(), R.value_part()):
        raise InconsistentSeriesError("G and R do not satisfy 1/G + R(G) = z")
    value = G.value_part()
    g = (r.value_part().compose(value) * value.derivative()).shift(2)
    return g.truncate(G.order)


def r_from_g(g: DualSeries, G: DualSeries) -> DualSeries:
    """Inverse of g_from_r: r(u) = h(W(u))·W′(u), W the inverse of G and h = g/w²."""
    if g.regime != REGIME_INV:
        raise InputValidationError("g must be given in the 1/z regime")
    _check_cauchy(G)
    inverse = G.value_part().reversion()
    try:
        h = g.value_part().shift(-2).with_regime(REGIME_Z)
    except InputValidationError as exc:
        raise InconsistentSeriesError("g must vanish to second order in 1/z") from exc
    return h.compose(inverse) * inverse.derivative()


def cauchy_from_r_transform(R: DualSeries, order: int | None = None) -> DualSeries:
    """G + εg from R + εr by reverting K̂(u) = u/(1 + uR(u)), K̂(G(w)) = w."""
    if R.regime != REGIME_Z:
        raise InputValidationError("R must be a power series in its argument")
    order = order or R.order
    _check_order(order)
    R = R.truncate(order)
    one = DualSeries.from_parts([1] + [0] * (order - 1))
    k_hat = (one + R.shift(1)).reciprocal().shift(1).truncate(order)
    return k_hat.reversion().with_regime(REGIME_INV)


def r_transform_from_cauchy(G: DualSeries) -> DualSeries:
    """R + εr from G + εg: 1 + uR(u) = u/W(u) with W the inverse of G."""
    _check_cauchy(G)
    if not G[1].b == 0:
        raise InconsistentSeriesError("the infinitesimal mass m′₀ must vanish")
    inverse = G.reversion()
    ratio = inverse.shift(-1).reciprocal()
    one = DualSeries.from_parts([1] + [0] * (ratio.order - 1))
    return (ratio - one).shift(-1)


def ensemble_transform(direction: str, ensemble: str, order: int, c: Any = 1, c_prime: Any = 1) -> dict[str, Any]:
    """Run one direction of the relation on a named ensemble and report both sides."""
    G, R = ensemble_series(ensemble, order, c, c_prime)
    if direction == "g-from-r":
        result = g_from_r(R.derivative_part(), G, R)
        expected = G.derivative_part()
    elif direction == "r-from-g":
        result = r_from_g(G.derivative_part(), G)
        expected = R.derivative_part()
    else:
        raise InputValidationError(f"unknown direction {direction!r}; expected g-from-r or r-from-g")
    order_used = min(result.order, expected.order)
    logger.info("transform %s for %s through order %d", direction, ensemble, order_used)
    return {
        "direction": direction,
        "ensemble": ensemble,
        "order": order_used,
        "series": result.truncate(order_used).to_dict(),
        "matches_expected": result.truncate(order_used) == expected.truncate(order_used),
    }


# -- closed forms ---------------------------------------------------------------------


def _off_support(z: complex, a: float, b: float) -> None:
    if abs(complex(z).imag) == 0 and a <= complex(z).real <= b:
        raise InputValidationError(f"z = {z} lies on the support [{a:g}, {b:g}]; approach it from above")


def _edge_root(z: complex, a: float, b: float) -> complex:
    """√(z−a)·√(z−b) with principal roots; ~ z at infinity, analytic off [a, b]."""
    return complex(np.sqrt(complex(z) - a) * np.sqrt(complex(z) - b))


def semicircle_G(z: complex) -> complex:
    _off_support(z, -2.0, 2.0)
    return (z - _edge_root(z, -2.0, 2.0)) / 2.0


def semicircle_G_prime(z: complex) -> complex:
    _off_support(z, -2.0, 2.0)
    return (1.0 - z / _edge_root(z, -2.0, 2.0)) / 2.0


def goe_g_closed(z: complex) -> complex:
    """g(z) = G(z)/(z² − 4)."""
    _off_support(z, -2.0, 2.0)
    return semicircle_G(z) / (z * z - 4.0)


def mp_G(z: complex, c: float) -> complex:
    a, b = mp_edges(c)
    _off_support(z, a, b)
    if z == 0:
        raise InputValidationError("z = 0 is a pole of the Marchenko-Pastur transform")
    return (z + 1.0 - c - _edge_root(z, a, b)) / (2.0 * z)


def mp_G_prime(z: complex, c: float) -> complex:
    a, b = mp_edges(c)
    _off_support(z, a, b)
    p = _edge_root(z, a, b)
    p_prime = (z - 1.0 - c) / p
    return (1.0 - p_prime) / (2.0 * z) - (z + 1.0 - c - p) / (2.0 * z * z)


def mp_g(z: complex, c: float, c_prime: float) -> complex:
    """g(z) = −c′·G′(z)/(1 − G(z))."""
    return -c_prime * mp_G_prime(z, c) / (1.0 - mp_G(z, c))


def closed_form_g(ensemble: str, c: float = 1.0, c_prime: float = 1.0) -> Callable[[complex], complex]:
    if ensemble == "goe":
        return goe_g_closed
    if ensemble == "wishart":
        return lambda z: mp_g(z, c, c_prime)
    raise InputValidationError(f"unknown ensemble {ensemble!r}")


def derived_relation_gap(ensemble: str, points: Sequence[complex], c: float = 1.0) -> float:
    """max |G′(z)(−G(z)⁻² + R′(G(z))) − 1| over the points."""
    gap = 0.0
    for z in points:
        if ensemble == "goe":
            G, G_prime, R_prime = semicircle_G(z), semicircle_G_prime(z), 1.0
        elif ensemble == "wishart":
            G, G_prime = mp_G(z, c), mp_G_prime(z, c)
            R_prime = c / (1.0 - G) ** 2
        else:
            raise InputValidationError(f"unknown ensemble {ensemble!r}")
        gap = max(gap, abs(G_prime * (-1.0 / (G * G) + R_prime) - 1.0))
    return gap


# -- Stieltjes inversion --------------------------------------------------------------


def _extrapolate_to_zero(hs: Sequence[float], values: Sequence[complex]) -> complex:
    """Value at h = 0 of the interpolating polynomial through (h_i, v_i)."""
    total = 0j
    for i, (hi, vi) in enumerate(zip(hs, values)):
        weight = 1.0
        for j, hj in enumerate(hs):
            if j != i:
                weight *= hj / (hj - hi)
        total += weight * vi
    return total


@dataclass
class StieltjesResult:
    xs: list[float]
    density: list[float]
    atom_location: float | None = None
    atom_mass: float | None = None
    atom_trace: list[tuple[float, complex]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"xs": self.xs, "density": self.density}
        if self.atom_location is not None:
            payload["atom"] = {
                "location": self.atom_location,
                "mass": self.atom_mass,
                "trace": [[y, value.real, value.imag] for y, value in self.atom_trace],
            }
        return payload


def density_at(
    g: Callable[[complex], complex], x: float, eps: Sequence[float] | None = None, tolerance: float = 1e-5
) -> float:
    """−(1/π) Im g(x + iε), extrapolated to ε = 0."""
    eps = tuple(eps or settings.stieltjes_eps_schedule)
    if len(eps) < 2:
        raise InputValidationError("the ε schedule needs at least two offsets")
    samples = [-g(complex(x, e)).imag / np.pi for e in eps]
    estimate = _extrapolate_to_zero(eps, samples).real
    check = _extrapolate_to_zero(eps[1:], samples[1:]).real
    if abs(estimate - check) > tolerance * max(1.0, abs(estimate)):
        raise ExtrapolationError(f"density at x = {x:g} did not settle: {estimate:.3e} vs {check:.3e}")
    if abs(estimate - check) > 0.1 * tolerance * max(1.0, abs(estimate)):
        logger.warning("density extrapolation at x=%g is close to tolerance", x)
    return float(estimate)


def atom_mass_limit(
    g: Callable[[complex], complex], location: float, heights: Sequence[float] | None = None
) -> tuple[float, list[tuple[float, complex]]]:
    """Mass of the point at location from iy·g(location + iy), y ↓ 0.

    The last two heights are extrapolated linearly in √y, which also covers
    atoms sitting on a square-root edge.
    """
    heights = tuple(heights or settings.atom_height_schedule)
    trace = [(y, complex(0, y) * g(complex(location, y))) for y in heights]
    if len(trace) == 1:
        return float(trace[0][1].real), trace
    (y1, v1), (y2, v2) = trace[-2], trace[-1]
    s1, s2 = np.sqrt(y1), np.sqrt(y2)
    mass = v2.real - s2 * (v1.real - v2.real) / (s1 - s2)
    return float(mass), trace


def stieltjes_invert(
    g: Callable[[complex], complex],
    xs: Sequence[float],
    eps: Sequence[float] | None = None,
    atom_location: float | None = None,
    tolerance: float = 1e-5,
) -> StieltjesResult:
    density = [density_at(g, float(x), eps, tolerance) for x in xs]
    result = StieltjesResult([float(x) for x in xs], density)
    if atom_location is not None:
        mass, trace = atom_mass_limit(g, atom_location)
        result.atom_location, result.atom_mass, result.atom_trace = atom_location, mass, trace
    return result

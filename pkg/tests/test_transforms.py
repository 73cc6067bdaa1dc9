from fractions import Fraction
from math import pi

import pytest

from app.core.config import settings
from app.core.errors import ExtrapolationError, InconsistentSeriesError, InputValidationError, ResourceCapExceededError
from app.models.series import DualSeries
from app.services.measures import goe_inf_moment_formula
from app.services.transforms import (
    atom_mass_limit,
    cauchy_from_r_transform,
    closed_form_g,
    density_at,
    derived_relation_gap,
    ensemble_transform,
    g_from_r,
    goe_cauchy_series,
    goe_g_closed,
    goe_r_series,
    is_consistent,
    mp_G,
    r_from_g,
    r_transform_from_cauchy,
    semicircle_G,
    stieltjes_invert,
    voiculescu_residual,
    wishart_cauchy_series,
    wishart_r_series,
)

WISHART_PARAMETERS = [(2, 3), (1, 1), (Fraction(1, 2), 1)]


def test_goe_series_data():
    G = goe_cauchy_series(8)

    assert G.values() == [0, 1, 0, 1, 0, 2, 0, 5]
    assert G.derivatives() == [0, 0, 0, 1, 0, 5, 0, 22]
    assert goe_r_series(6).derivatives() == [0, 1, 0, 1, 0, 1]


def test_g_from_r_reproduces_goe_infinitesimal_moments():
    order = 14
    G, R = goe_cauchy_series(order), goe_r_series(order)

    g = g_from_r(R.derivative_part(), G, R)

    assert g.values() == [goe_inf_moment_formula(k - 1) if k else 0 for k in range(order)]
    assert r_from_g(g, G) == R.derivative_part()


@pytest.mark.parametrize("c, c_prime", WISHART_PARAMETERS)
def test_wishart_transform_roundtrip(c, c_prime):
    G, R = wishart_cauchy_series(10, c, c_prime), wishart_r_series(10, c, c_prime)

    assert g_from_r(R.derivative_part(), G, R) == G.derivative_part()
    assert r_from_g(G.derivative_part(), G) == R.derivative_part()


@pytest.mark.parametrize("ensemble", ["goe", "wishart"])
@pytest.mark.parametrize("direction", ["g-from-r", "r-from-g"])
def test_ensemble_transform_payload(ensemble, direction):
    payload = ensemble_transform(direction, ensemble, 12, 2, 3)

    assert payload["matches_expected"] is True
    assert payload["series"]["regime"] == ("inv" if direction == "g-from-r" else "z")
    assert payload["order"] <= 12


def test_dual_series_carry_both_relations():
    G, R = goe_cauchy_series(12), goe_r_series(12)

    assert is_consistent(G, R)
    assert voiculescu_residual(G, R).valuation() == voiculescu_residual(G, R).order
    assert cauchy_from_r_transform(R) == G
    assert r_transform_from_cauchy(G) == R


@pytest.mark.parametrize("c, c_prime", WISHART_PARAMETERS)
def test_wishart_dual_relations(c, c_prime):
    G, R = wishart_cauchy_series(10, c, c_prime), wishart_r_series(10, c, c_prime)

    assert is_consistent(G, R)
    assert cauchy_from_r_transform(R) == G
    assert r_transform_from_cauchy(G) == R


def test_inconsistent_pairs_are_rejected():
    G, R = goe_cauchy_series(8), wishart_r_series(8, 2, 3)

    assert not is_consistent(G, R)
    with pytest.raises(InconsistentSeriesError):
        g_from_r(R.derivative_part(), G, R)


def test_cauchy_series_shape_is_checked():
    with pytest.raises(InputValidationError):
        g_from_r(goe_r_series(6), goe_r_series(6))
    shifted = goe_cauchy_series(6).shift(1).with_regime("inv")
    with pytest.raises(InconsistentSeriesError):
        voiculescu_residual(shifted, goe_r_series(6))


def test_order_cap(monkeypatch):
    monkeypatch.setattr(settings, "series_max_order", 10)

    with pytest.raises(ResourceCapExceededError):
        goe_cauchy_series(11)
    with pytest.raises(InputValidationError):
        ensemble_transform("sideways", "goe", 6)


def test_closed_forms():
    assert semicircle_G(3.0) == pytest.approx((3 - 5**0.5) / 2)
    assert semicircle_G(-3.0) == pytest.approx(-(3 - 5**0.5) / 2)
    assert goe_g_closed(3j) == pytest.approx(semicircle_G(3j) / (-9 - 4))
    with pytest.raises(InputValidationError):
        semicircle_G(1.0)
    with pytest.raises(InputValidationError):
        mp_G(0, 3.0)


def test_derived_relation_holds_off_the_support():
    points = [3 + 1j, -2.5 + 0.5j, 0.3 + 2j, 10 - 1j]

    assert derived_relation_gap("goe", points) < 1e-10
    assert derived_relation_gap("wishart", points, c=2.0) < 1e-10


def test_stieltjes_density_values():
    assert density_at(closed_form_g("wishart", 1.0, 1.0), 2.0) == pytest.approx(1 / (4 * pi), abs=1e-6)
    assert density_at(goe_g_closed, 0.0) == pytest.approx(-1 / (4 * pi), abs=1e-6)
    assert density_at(lambda z: mp_G(z, 1.0), 2.0) == pytest.approx(1 / (2 * pi), abs=1e-6)


def test_density_extrapolation_failure_is_reported():
    with pytest.raises(ExtrapolationError):
        density_at(lambda z: 1 / (z - 0.5), 0.5)


@pytest.mark.parametrize(
    "g, location, mass, tolerance",
    [
        (goe_g_closed, 2.0, 0.25, 1e-3),
        (goe_g_closed, -2.0, 0.25, 1e-3),
        (closed_form_g("wishart", 0.5, 1.0), 0.0, -1.0, 1e-3),
        (closed_form_g("wishart", 1.0, 1.0), 0.0, -0.5, 1e-2),
        (closed_form_g("wishart", 3.0, 1.0), 0.0, 0.0, 1e-3),
    ],
)
def test_atom_mass_limit(g, location, mass, tolerance):
    value, trace = atom_mass_limit(g, location)

    assert value == pytest.approx(mass, abs=tolerance)
    assert len(trace) == len(settings.atom_height_schedule)


def test_stieltjes_invert_payload():
    result = stieltjes_invert(goe_g_closed, [-1.0, 0.0, 1.0], atom_location=2.0)
    payload = result.to_dict()

    assert payload["xs"] == [-1.0, 0.0, 1.0]
    assert payload["density"][0] == pytest.approx(payload["density"][2])
    assert payload["atom"]["mass"] == pytest.approx(0.25, abs=1e-3)

from fractions import Fraction
from math import comb, pi

import numpy as np
import pytest

from app.core.errors import InputValidationError
from app.services.measures import (
    density_rows,
    formal_derivative_gap,
    goe_inf_measure,
    goe_inf_moment_formula,
    limit_pair,
    moment_check_measure,
    mp_edges,
    mp_inf_moment,
    mp_measure,
    mp_moment,
    narayana,
    semicircle_measure,
    total_mass,
    wishart_inf_measure,
)
from app.services.noncrossing import catalan


def test_narayana_rows_sum_to_catalan():
    for n in range(1, 9):
        assert sum(narayana(n, k) for k in range(n + 1)) == catalan(n)
    assert narayana(0, 0) == 1


def test_closed_form_moments():
    assert [mp_moment(n, 1) for n in range(1, 6)] == [1, 2, 5, 14, 42]
    assert mp_inf_moment(2, 2, 3) == 15
    assert mp_inf_moment(1, Fraction(1, 2), 1) == 1
    assert [goe_inf_moment_formula(n) for n in (2, 4, 6, 8)] == [1, 5, 22, 93]
    assert goe_inf_moment_formula(8) == (2**8 - comb(8, 4)) // 2


def test_semicircle_moments_by_quadrature():
    model = semicircle_measure()

    for n in range(0, 9):
        expected = catalan(n // 2) if n % 2 == 0 else 0
        assert moment_check_measure(model, n) == pytest.approx(expected, abs=1e-6)


def test_goe_infinitesimal_measure_moments():
    model = goe_inf_measure()

    assert total_mass(model) == pytest.approx(0.0, abs=1e-6)
    for n in range(1, 9):
        assert moment_check_measure(model, n) == pytest.approx(goe_inf_moment_formula(n), abs=1e-6)


@pytest.mark.parametrize("c", [0.5, 1.0, 3.0])
def test_marchenko_pastur_moments(c):
    model = mp_measure(c)

    assert total_mass(model) == pytest.approx(1.0, abs=1e-6)
    for n in range(1, 7):
        assert moment_check_measure(model, n) == pytest.approx(float(mp_moment(n, Fraction(c))), abs=1e-6)


@pytest.mark.parametrize("c, atom", [(0.5, -1.0), (1.0, -0.5), (3.0, 0.0)])
def test_wishart_infinitesimal_measure(c, atom):
    model = wishart_inf_measure(c, 1.0)

    assert model.atom_mass(0.0) == atom
    assert total_mass(model) == pytest.approx(0.0, abs=1e-6)
    for n in range(1, 7):
        assert moment_check_measure(model, n) == pytest.approx(float(mp_inf_moment(n, Fraction(c), 1)), abs=1e-6)


def test_wishart_density_at_c_one():
    model = wishart_inf_measure(1.0, 1.0)

    assert model.density(2.0) == pytest.approx(1 / (4 * pi))
    assert model.density(5.0) == 0.0


def test_formal_derivative_matches_continuous_part():
    for c in (0.5, 3.0):
        a, b = mp_edges(c)
        xs = np.linspace(a, b, 12)[1:-1]
        assert formal_derivative_gap(c, 2.0, xs) < 1e-4
    with pytest.raises(InputValidationError):
        formal_derivative_gap(1.0, 1.0, np.array([1.0]))


def test_density_rows_payload():
    payload = density_rows("wishart", 5, 3.0, 1.0)
    a, b = mp_edges(3.0)

    assert payload["columns"] == ["x", "mu", "mu_prime"]
    assert len(payload["rows"]) == 5
    assert payload["support"] == pytest.approx([a, b])
    assert all(a < row[0] < b for row in payload["rows"])
    assert payload["atoms"]["mu"] == []
    assert payload["atoms"]["mu_prime"] == []


def test_density_rows_for_goe_lists_both_edge_atoms():
    payload = density_rows("goe", 4)

    assert payload["atoms"]["mu_prime"] == [{"location": -2.0, "mass": 0.25}, {"location": 2.0, "mass": 0.25}]


def test_measure_validation():
    with pytest.raises(InputValidationError):
        mp_measure(0)
    with pytest.raises(InputValidationError):
        limit_pair("gue")
    with pytest.raises(InputValidationError):
        density_rows("goe", 0)
    with pytest.raises(InputValidationError):
        moment_check_measure(semicircle_measure(), -1)

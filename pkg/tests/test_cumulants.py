from fractions import Fraction

import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from app.core.errors import InputValidationError, MissingLimitDataError, NotAlternatingError
from app.models.functional import InfFunctional
from app.models.partition import SetPartition
from app.services.cumulants import (
    check_inf_freeness,
    cumulants_to_moments,
    goe_partial_kappa,
    inf_free_alternating_moment,
    mobius_inversion_cumulant,
    moments_to_cumulants,
    one_big_block_count,
    partial_phi,
    phi_pi,
    univariate_cumulants,
    univariate_moments,
)
from app.services.genus import goe_infinitesimal_moment, goe_limit_moment
from app.services.noncrossing import enumerate_noncrossing
from app.services.verify import goe_limit_functional, wishart_limit_functional

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def _goe_sequences(n_max):
    moments = [goe_limit_moment(n) for n in range(1, n_max + 1)]
    inf_moments = [goe_infinitesimal_moment(n) for n in range(1, n_max + 1)]
    return moments, inf_moments


def test_goe_infinitesimal_cumulants():
    kappas, inf_kappas = univariate_cumulants(*_goe_sequences(10))

    assert kappas == [0, 1, 0, 0, 0, 0, 0, 0, 0, 0]
    assert inf_kappas == [0, 1, 0, 1, 0, 1, 0, 1, 0, 1]


@pytest.mark.slow
def test_goe_infinitesimal_cumulants_to_twelve():
    _, inf_kappas = univariate_cumulants(*_goe_sequences(12))

    assert inf_kappas == [Fraction(n % 2 == 0) for n in range(1, 13)]


def test_semicircle_and_free_poisson_moments():
    moments, inf_moments = univariate_moments([0, 1, 0, 0, 0, 0], [0] * 6)
    assert moments == [0, 1, 0, 2, 0, 5]
    assert inf_moments == [0] * 6

    moments, inf_moments = univariate_moments([2] * 4, [3] * 4)
    assert moments == [2, 6, 22, 90]
    assert inf_moments[1] == 15


def test_mobius_path_agrees_with_recursion():
    f = InfFunctional.univariate(*_goe_sequences(6))
    recursive = moments_to_cumulants(f)

    for n in range(1, 7):
        assert mobius_inversion_cumulant(f, ("x",) * n) == (recursive.kappa(("x",) * n), recursive.kappa_prime(("x",) * n))


def test_partial_phi_is_leibniz_rule():
    f = InfFunctional.univariate([1, 2, 3], [Fraction(1, 2), 1, 0])
    pi = SetPartition.of(3, [(1, 2), (3,)])

    assert phi_pi(pi, f, "xxx") == 2
    # φ′(x²)φ(x) + φ(x²)φ′(x)
    assert partial_phi(pi, f, "xxx") == 1 * 1 + 2 * Fraction(1, 2)


def test_goe_partial_kappa_counts():
    for n in (4, 6, 8):
        total = sum(goe_partial_kappa(pi) for pi in enumerate_noncrossing(n))
        assert total == goe_infinitesimal_moment(n)
    assert one_big_block_count(6, 4) == 6
    assert one_big_block_count(6, 3) == 0


@hypothesis_settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=6))
def test_cumulant_roundtrip_on_random_rationals(pairs):
    moments = [a for a, _ in pairs]
    inf_moments = [b for _, b in pairs]

    kappas, inf_kappas = univariate_cumulants(moments, inf_moments)

    assert univariate_moments(kappas, inf_kappas) == (moments, inf_moments)


def test_multivariate_roundtrip():
    f = wishart_limit_functional(2, 3, 4)
    back = cumulants_to_moments(moments_to_cumulants(f))

    assert back.values == f.values


def test_float_functionals_stay_floating():
    kappas, inf_kappas = univariate_cumulants([0.0, 1.0, 0.0, 2.0], [0.0, 1.0, 0.0, 5.0])

    assert kappas == pytest.approx([0.0, 1.0, 0.0, 0.0])
    assert inf_kappas == pytest.approx([0.0, 1.0, 0.0, 1.0])


def test_mixed_exact_and_float_values_are_rejected():
    with pytest.raises(InputValidationError):
        InfFunctional.univariate([Fraction(1), 0.5], [0, 0])


def test_missing_word_is_reported():
    f = InfFunctional.univariate([0, 1], [0, 1])

    with pytest.raises(MissingLimitDataError):
        moments_to_cumulants(f, [("x", "x", "x")])


def test_functional_from_payload():
    f = InfFunctional.from_dict({"values": {"x": ["0", "0"], "x x": ["1", "1"], "x,x,x": [0, 0], "xxxx": ["2", "5"]}})

    assert f.n_max == 4
    assert f.phi_prime(("x",) * 4) == 5
    assert moments_to_cumulants(f).kappa_prime(("x",) * 4) == 1


def test_wishart_colors_are_infinitesimally_free():
    report = check_inf_freeness(wishart_limit_functional(2, 3, 4), [("x",), ("y",)])

    assert report.is_free
    assert report.checked == 2**2 - 2 + 2**3 - 2 + 2**4 - 2


def test_independent_goes_are_not_infinitesimally_free():
    report = check_inf_freeness(goe_limit_functional(4), [("x",), ("y",)])

    assert not report.is_free
    words = {" ".join(word) for word, _, _ in report.violations}
    assert "x y x y" in words
    assert report.to_dict()["infinitesimally_free"] is False


def test_groups_must_be_disjoint():
    with pytest.raises(InputValidationError):
        check_inf_freeness(goe_limit_functional(2), [("x",), ("x", "y")])


def test_alternating_moment_prediction():
    f = InfFunctional(
        3,
        {
            ("a",): (0, 1),
            ("b",): (0, 2),
            ("a", "b"): (0, 0),
            ("b", "a"): (0, 0),
            ("a", "a"): (3, 0),
            ("b", "b"): (4, 0),
            ("a", "b", "a"): (0, 0),
        },
    )

    assert inf_free_alternating_moment(f, [("a",), ("b",)], ("a", "b", "a")) == 2 * 3
    assert inf_free_alternating_moment(f, [("a",), ("b",)], ("a", "b")) == 0
    with pytest.raises(NotAlternatingError):
        inf_free_alternating_moment(f, [("a",), ("b",)], ("a", "a"))

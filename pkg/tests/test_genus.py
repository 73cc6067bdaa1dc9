from fractions import Fraction
from itertools import product

import pytest

from app.core.config import settings
from app.core.errors import InputValidationError, ResourceCapExceededError
from app.models.words import ColorWord
from app.services.genus import (
    goe_full_sign_sum,
    goe_genus_profile,
    goe_infinitesimal_moment,
    goe_limit_moment,
    goe_mixed_moment_poly,
    goe_moment_poly,
    goe_sum_invariance_check,
    wishart_limit_extraction,
    wishart_limits,
    wishart_moment_poly,
)
from app.services.measures import goe_inf_moment_formula

MOMENT_TABLE = {
    2: [1, 1],
    4: [2, 5, 5],
    6: [5, 22, 52, 41],
    8: [14, 93, 374, 690, 509],
    10: [42, 386, 2290, 7150, 12143, 8229],
}


@pytest.mark.parametrize("n", sorted(MOMENT_TABLE))
def test_goe_moment_table(n):
    assert goe_moment_poly(n).inverse_n_coefficients() == [Fraction(c) for c in MOMENT_TABLE[n]]


def test_goe_text_rendering():
    assert str(goe_moment_poly(4)) == "2 + 5N⁻¹ + 5N⁻²"
    assert goe_moment_poly(4).to_dict() == {"0": "2", "-1": "5", "-2": "5"}


def test_odd_goe_moments_vanish():
    assert goe_moment_poly(5).is_zero()
    assert goe_infinitesimal_moment(7) == 0


def test_infinitesimal_moments_match_closed_form():
    assert [goe_infinitesimal_moment(n) for n in (2, 4, 6, 8, 10)] == [1, 5, 22, 93, 386]
    for n in range(1, 11):
        assert goe_infinitesimal_moment(n) == goe_inf_moment_formula(n)
    assert [goe_limit_moment(n) for n in (2, 4, 6)] == [1, 2, 5]


@pytest.mark.parametrize("n", [2, 4, 6])
def test_factorized_sum_matches_full_sign_sum(n):
    assert goe_full_sign_sum(n) == goe_moment_poly(n)


def test_genus_profile_splits_terms():
    profile = goe_genus_profile(4)

    assert profile["alternating"] == {0: 2, -2: 1}
    assert profile["other"] == {-1: 5, -2: 4}
    for n in (6, 8):
        assert all(exponent % 2 == 0 for exponent in goe_genus_profile(n)["alternating"])


def test_mixed_goe_words():
    assert goe_mixed_moment_poly(ColorWord.parse("1,1,2,2")).inverse_n_coefficients() == [1, 2, 1]
    assert goe_mixed_moment_poly(ColorWord.parse("XYXY")).to_dict() == {"-1": "1", "-2": "3"}
    assert goe_mixed_moment_poly(ColorWord.parse("1,2")).is_zero()


@pytest.mark.parametrize("n", [2, 4])
def test_sum_of_independent_goes_is_goe(n):
    assert goe_sum_invariance_check(n)


def test_goe_rejects_transposes():
    with pytest.raises(InputValidationError):
        goe_mixed_moment_poly(ColorWord.parse("1,2t"))


def test_goe_cap(monkeypatch):
    monkeypatch.setattr(settings, "goe_max_n", 8)

    with pytest.raises(ResourceCapExceededError):
        goe_moment_poly(10)


def test_wishart_small_words():
    assert wishart_moment_poly(ColorWord.parse("1")).to_dict() == {"M^1 N^-1": "1"}
    assert wishart_moment_poly(ColorWord.parse("1,1")).to_dict() == {"M^2 N^-2": "1", "M^1 N^-1": "1"}


def test_wishart_second_moment_limits():
    word = ColorWord.of([1, 1])

    assert wishart_limits(word, 2, 3) == (6, 15)
    assert wishart_limit_extraction(word, 2, 3) == (6, 15)


@pytest.mark.parametrize("c, c_prime", [(2, 3), (1, 1), (Fraction(1, 2), 1)])
def test_wishart_extraction_matches_limit_sums(c, c_prime):
    for length in range(1, 5):
        for colors in product((1, 2), repeat=length):
            word = ColorWord.of(colors)
            assert wishart_limit_extraction(word, c, c_prime) == wishart_limits(word, c, c_prime)


def test_wishart_word_validation():
    with pytest.raises(InputValidationError):
        wishart_moment_poly(ColorWord.parse("1t,1"))
    with pytest.raises(InputValidationError):
        wishart_limits(ColorWord.of([1]), 0, 1)
    with pytest.raises(InputValidationError):
        ColorWord.parse("1,a")

from fractions import Fraction

import pytest

from app.core.errors import InputValidationError
from app.models.laurent import LaurentPoly


def test_rendering_and_coefficients():
    poly = LaurentPoly.in_inverse_n([2, 5, 5])

    assert str(poly) == "2 + 5N⁻¹ + 5N⁻²"
    assert poly.to_dict() == {"0": "2", "-1": "5", "-2": "5"}
    assert poly.inverse_n_coefficients() == [2, 5, 5]
    assert poly.n_exponents() == [0, -1, -2]
    assert poly.coefficient(3) == 0


def test_arithmetic_cancels_exactly():
    p = LaurentPoly.in_inverse_n([1, Fraction(1, 3)])
    q = LaurentPoly.in_inverse_n([0, Fraction(-1, 3), 2])

    total = p + q
    assert total.terms == (((0,), Fraction(1)), ((-2,), Fraction(2)))
    assert (p * p).inverse_n_coefficients() == [1, Fraction(2, 3), Fraction(1, 9)]
    assert (p - p).is_zero()
    assert str(LaurentPoly.in_inverse_n([0, -1])) == "-N⁻¹"


def test_evaluate_is_exact_for_rationals():
    poly = LaurentPoly.in_inverse_n([2, 5, 5])

    assert poly.evaluate(N=5) == Fraction(16, 5)
    assert poly.evaluate(N=5.0) == pytest.approx(3.2)
    with pytest.raises(InputValidationError):
        poly.evaluate(M=1)


def test_substitute_m_into_second_wishart_moment():
    poly = LaurentPoly.from_counts({(2, -2): 1, (1, -1): 1}, ("M", "N"))

    assert poly.substitute_m(2, 3).inverse_n_coefficients() == [6, 15, 9]
    assert poly.evaluate(M=2, N=4) == Fraction(3, 4)


def test_positive_powers_of_n_are_rejected():
    with pytest.raises(InputValidationError):
        LaurentPoly.from_counts({(1,): 1})
    with pytest.raises(InputValidationError):
        LaurentPoly.from_counts({(2, -1): 1}, ("M", "N")).substitute_m(1, 0)
    with pytest.raises(InputValidationError):
        LaurentPoly.zero() + LaurentPoly.zero(("M", "N"))

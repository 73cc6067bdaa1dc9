"""Conversions between fractions.Fraction and sympy's QQ ground domain."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from sympy.polys.domains import QQ


def to_qq(value: Any) -> Any:
    if isinstance(value, QQ.dtype):
        return value
    value = to_fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(value: Any) -> Fraction:
    """Fraction from an int, a Fraction, a QQ element or a "p/q" string."""
    if isinstance(value, Fraction):
        return value
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    return Fraction(value)

"""Exact polynomials in N⁻¹ (and optionally M) with rational coefficients.

The genus expansions only ever produce nonpositive powers of N, so a
polynomial is stored in sympy's sparse ring QQ[N⁻¹] or QQ[M, N⁻¹]. The public
exponents keep the sign of the power of N: (−2,) means N⁻², (1, −1) means M·N⁻¹.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from app.core.errors import InputValidationError
from app.core.json_response import fraction_text
from app.models.rational import to_fraction, to_qq

_SUPERSCRIPT = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")

Exponent = tuple[int, ...]

_RINGS: dict[tuple[str, ...], PolyRing] = {
    ("N",): ring("Ninv", QQ)[0],
    ("M", "N"): ring("M,Ninv", QQ)[0],
}


def _ring_for(variables: tuple[str, ...]) -> PolyRing:
    try:
        return _RINGS[variables]
    except KeyError:
        raise InputValidationError(f"unsupported variables {variables}; expected ('N',) or ('M', 'N')") from None


def _to_monomial(exponent: Exponent) -> Exponent:
    # N is the last variable; its power is stored negated
    monomial = (*exponent[:-1], -exponent[-1])
    if any(power < 0 for power in monomial):
        raise InputValidationError(f"exponent {exponent} is outside the polynomial ring in M and N⁻¹")
    return monomial


def _to_exponent(monomial: Exponent) -> Exponent:
    return (*monomial[:-1], -monomial[-1])


def _power(symbol: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return symbol
    return symbol + str(exponent).translate(_SUPERSCRIPT)


@dataclass(frozen=True)
class LaurentPoly:
    """Σ c · M^a · N^b with b ≤ 0; exponents follow the order of `variables`."""

    variables: tuple[str, ...]
    poly: PolyElement

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_terms(cls, variables: tuple[str, ...], terms: Iterable[tuple[Exponent, Any]]) -> "LaurentPoly":
        domain = _ring_for(variables)
        merged: dict[Exponent, Any] = {}
        for exponent, coeff in terms:
            if len(exponent) != len(variables):
                raise InputValidationError("exponent length does not match the variables")
            monomial = _to_monomial(tuple(exponent))
            merged[monomial] = merged.get(monomial, QQ.zero) + to_qq(coeff)
        return cls(variables, domain.from_dict({m: c for m, c in merged.items() if c}))

    @classmethod
    def zero(cls, variables: tuple[str, ...] = ("N",)) -> "LaurentPoly":
        return cls(variables, _ring_for(variables).zero)

    @classmethod
    def constant(cls, value: int | Fraction, variables: tuple[str, ...] = ("N",)) -> "LaurentPoly":
        return cls.from_terms(variables, [((0,) * len(variables), value)])

    @classmethod
    def from_counts(cls, counts: Mapping[Exponent, int | Fraction], variables: tuple[str, ...] = ("N",)) -> "LaurentPoly":
        return cls.from_terms(variables, counts.items())

    @classmethod
    def in_inverse_n(cls, coefficients: Iterable[int | Fraction]) -> "LaurentPoly":
        """c₀ + c₁N⁻¹ + c₂N⁻² + …"""
        return cls.from_terms(("N",), (((-k,), c) for k, c in enumerate(coefficients)))

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> tuple[tuple[Exponent, Fraction], ...]:
        """(exponent, coefficient) pairs, highest exponent first."""
        return tuple(sorted(((_to_exponent(m), to_fraction(c)) for m, c in self.poly.items()), reverse=True))

    @property
    def coefficients(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    def coefficient(self, *exponent: int) -> Fraction:
        if len(exponent) != len(self.variables):
            raise InputValidationError("exponent length does not match the variables")
        monomial = (*exponent[:-1], -exponent[-1])
        if any(power < 0 for power in monomial):
            return Fraction(0)
        return to_fraction(self.poly.get(monomial, QQ.zero))

    def is_zero(self) -> bool:
        return not self.poly

    def n_exponents(self) -> list[int]:
        return sorted({-m[-1] for m in self.poly.keys()}, reverse=True)

    def inverse_n_coefficients(self) -> list[Fraction]:
        """[c₀, c₁, …] for a polynomial in N⁻¹ only."""
        if self.variables != ("N",):
            raise InputValidationError("expected a univariate polynomial in N")
        depth = max((m[0] for m in self.poly.keys()), default=-1)
        return [self.coefficient(-k) for k in range(depth + 1)]

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "LaurentPoly") -> None:
        if self.variables != other.variables:
            raise InputValidationError("polynomials use different variables")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        return LaurentPoly(self.variables, self.poly + other.poly)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.variables, -self.poly)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        return LaurentPoly(self.variables, self.poly - other.poly)

    def __mul__(self, other: "LaurentPoly | int | Fraction") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly(self.variables, self.poly * to_qq(other))
        self._check(other)
        return LaurentPoly(self.variables, self.poly * other.poly)

    __rmul__ = __mul__

    def evaluate(self, **values: Any) -> Any:
        """Value at numeric points; exact when the inputs are int/Fraction."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise InputValidationError(f"missing values for {missing}")
        if values["N"] == 0:
            raise InputValidationError("N must be nonzero")
        points = [values[v] for v in self.variables]
        if all(isinstance(p, (int, Fraction)) for p in points):
            exact = [to_qq(p) for p in points[:-1]] + [to_qq(Fraction(1) / Fraction(points[-1]))]
            return to_fraction(self.poly.evaluate(list(zip(self.poly.ring.gens, exact))))
        inverse_n = 1 / points[-1]
        total: Any = 0
        for monomial, coeff in self.poly.items():
            term: Any = float(to_fraction(coeff))
            for base, power in zip(points[:-1] + [inverse_n], monomial):
                term = term * base**power
            total = total + term
        return total

    def substitute_m(self, c: Fraction | int, c_prime: Fraction | int) -> "LaurentPoly":
        """Replace M by cN + c′, returning a polynomial in N⁻¹ alone.

        Raises InputValidationError when a positive power of N survives.
        """
        if self.variables != ("M", "N"):
            raise InputValidationError("substitution needs a polynomial in M and N")
        domain = self.poly.ring
        _, inverse_n = domain.gens
        top = max((m[0] for m in self.poly.keys()), default=0)
        # M = (c + c′N⁻¹)/N⁻¹; scaling by N⁻ᵗᵒᵖ keeps every term polynomial
        linear = inverse_n * to_qq(c_prime) + to_qq(c)
        cleared = domain.zero
        for (a, k), coeff in self.poly.items():
            cleared += linear**a * inverse_n ** (k + top - a) * coeff
        lowered: dict[Exponent, Any] = {}
        for (_, k), coeff in cleared.items():
            if k < top:
                raise InputValidationError("unexpected positive power of N after substitution")
            lowered[(k - top,)] = coeff
        return LaurentPoly(("N",), _RINGS[("N",)].from_dict(lowered))

    # -- rendering --------------------------------------------------------
    def to_dict(self) -> dict[str, str]:
        """{"exponent": "p/q"} for N-only polynomials, {"M^a N^b": ...} otherwise."""
        if self.variables == ("N",):
            return {str(e[0]): fraction_text(c) for e, c in self.terms}
        return {" ".join(f"{v}^{p}" for v, p in zip(self.variables, e)): fraction_text(c) for e, c in self.terms}

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces: list[str] = []
        for exponent, coeff in self.terms:
            monomial = "".join(_power(v, p) for v, p in zip(self.variables, exponent))
            magnitude = abs(coeff)
            body = monomial if monomial and magnitude == 1 else fraction_text(magnitude) + monomial
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f" {'-' if coeff < 0 else '+'} {body}")
        return "".join(pieces)

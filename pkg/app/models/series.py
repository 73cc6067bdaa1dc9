"""Truncated power series with dual-number coefficients a + εa′ (ε² = 0).

A series lives in one of two regimes: REGIME_Z, an ordinary power series in its
argument, or REGIME_INV, an asymptotic series in w = 1/z at infinity. Only a
REGIME_Z series can be applied to another series; arithmetic never mixes regimes.

The value part and the ε-part are kept as two sparse series in sympy's ring
QQ[t] and combined with the ring_series primitives, so every coefficient is
an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_diff, rs_mul, rs_series_inversion, rs_series_reversion, rs_subs, rs_trunc
from sympy.polys.rings import PolyElement, ring

from app.core.errors import InputValidationError, RegimeMismatchError
from app.core.json_response import fraction_text
from app.models.rational import to_fraction, to_qq

REGIME_Z = "z"
REGIME_INV = "inv"

SERIES_RING, T = ring("t", QQ)
# reversion solves f(t) = u in a second generator
_REVERSION_RING, _T2, _U2 = ring("t,u", QQ)


@dataclass(frozen=True)
class Dual:
    """a + bε with exact a, b."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", to_fraction(self.a))
        object.__setattr__(self, "b", to_fraction(self.b))

    @classmethod
    def of(cls, value: "Dual | Fraction | int") -> "Dual":
        return value if isinstance(value, Dual) else cls(value)

    def __add__(self, other: "Dual | Fraction | int") -> "Dual":
        o = Dual.of(other)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "Dual":
        return Dual(-self.a, -self.b)

    def __sub__(self, other: "Dual | Fraction | int") -> "Dual":
        return self + (-Dual.of(other))

    def __rsub__(self, other: "Dual | Fraction | int") -> "Dual":
        return Dual.of(other) - self

    def __mul__(self, other: "Dual | Fraction | int") -> "Dual":
        o = Dual.of(other)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other: "Dual | Fraction | int") -> "Dual":
        o = Dual.of(other)
        if o.a == 0:
            raise ZeroDivisionError("division by a dual number with zero real part")
        return Dual(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __pow__(self, exponent: int) -> "Dual":
        if exponent < 0:
            return Dual(1) / self**-exponent
        return Dual(self.a**exponent, exponent * self.a ** (exponent - 1) * self.b if exponent else 0)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        return f"{self.a} + {self.b}ε"


def _element(coefficients: Sequence[Any]) -> PolyElement:
    return SERIES_RING.from_dict({(k,): to_qq(c) for k, c in enumerate(coefficients) if c != 0})


def _coefficient(p: PolyElement, k: int) -> Fraction:
    return to_fraction(p.get((k,), QQ.zero))


def _low_degree(p: PolyElement) -> int | None:
    return min((monom[0] for monom in p.keys()), default=None)


@dataclass(frozen=True, eq=False)
class DualSeries:
    """Σ_{k<order} (a_k + εb_k) t^k with t = z (REGIME_Z) or t = 1/z (REGIME_INV)."""

    value: PolyElement
    epsilon: PolyElement
    order: int
    regime: str = REGIME_Z

    def __post_init__(self) -> None:
        if self.regime not in (REGIME_Z, REGIME_INV):
            raise InputValidationError(f"unknown series regime {self.regime!r}")
        if self.order < 0:
            raise InputValidationError("series order must be nonnegative")
        object.__setattr__(self, "value", rs_trunc(SERIES_RING(self.value), T, self.order))
        object.__setattr__(self, "epsilon", rs_trunc(SERIES_RING(self.epsilon), T, self.order))

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_parts(
        cls, values: Sequence[Any], derivatives: Sequence[Any] | None = None, regime: str = REGIME_Z
    ) -> "DualSeries":
        derivatives = derivatives if derivatives is not None else [0] * len(values)
        if len(derivatives) != len(values):
            raise InputValidationError("value and ε parts have different lengths")
        return cls(_element(values), _element(derivatives), len(values), regime)

    @classmethod
    def zero(cls, order: int, regime: str = REGIME_Z) -> "DualSeries":
        return cls(SERIES_RING.zero, SERIES_RING.zero, order, regime)

    @classmethod
    def variable(cls, order: int, regime: str = REGIME_Z) -> "DualSeries":
        """The series t itself."""
        return cls(T, SERIES_RING.zero, order, regime)

    def with_regime(self, regime: str) -> "DualSeries":
        """The same coefficients read in another regime."""
        return DualSeries(self.value, self.epsilon, self.order, regime)

    def _like(self, value: PolyElement, epsilon: PolyElement, order: int | None = None) -> "DualSeries":
        return DualSeries(value, epsilon, self.order if order is None else order, self.regime)

    # -- access -----------------------------------------------------------
    def __getitem__(self, k: int) -> Dual:
        if k >= self.order:
            return Dual(0)
        return Dual(_coefficient(self.value, k), _coefficient(self.epsilon, k))

    @property
    def coefficients(self) -> tuple[Dual, ...]:
        return tuple(self[k] for k in range(self.order))

    def values(self) -> list[Fraction]:
        return [_coefficient(self.value, k) for k in range(self.order)]

    def derivatives(self) -> list[Fraction]:
        return [_coefficient(self.epsilon, k) for k in range(self.order)]

    def value_part(self) -> "DualSeries":
        return self._like(self.value, SERIES_RING.zero)

    def derivative_part(self) -> "DualSeries":
        """The ε-part as an ordinary series."""
        return self._like(self.epsilon, SERIES_RING.zero)

    def valuation(self) -> int:
        lows = [d for d in (_low_degree(self.value), _low_degree(self.epsilon)) if d is not None]
        return min(lows, default=self.order)

    def truncate(self, order: int) -> "DualSeries":
        return self._like(self.value, self.epsilon, min(order, self.order))

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "DualSeries") -> None:
        if self.regime != other.regime:
            raise RegimeMismatchError(f"cannot combine a {self.regime}-series with a {other.regime}-series")

    def __add__(self, other: "DualSeries") -> "DualSeries":
        self._check(other)
        return self._like(self.value + other.value, self.epsilon + other.epsilon, min(self.order, other.order))

    def __neg__(self) -> "DualSeries":
        return self._like(-self.value, -self.epsilon)

    def __sub__(self, other: "DualSeries") -> "DualSeries":
        return self + (-other)

    def scale(self, factor: "Dual | Fraction | int") -> "DualSeries":
        factor = Dual.of(factor)
        a, b = to_qq(factor.a), to_qq(factor.b)
        return self._like(self.value * a, self.epsilon * a + self.value * b)

    def __mul__(self, other: "DualSeries | Dual | Fraction | int") -> "DualSeries":
        if not isinstance(other, DualSeries):
            return self.scale(other)
        self._check(other)
        order = min(self.order, other.order)
        value = rs_mul(self.value, other.value, T, order)
        epsilon = rs_mul(self.value, other.epsilon, T, order) + rs_mul(self.epsilon, other.value, T, order)
        return self._like(value, epsilon, order)

    __rmul__ = __mul__

    def shift(self, places: int) -> "DualSeries":
        """Multiply by t^places (places ≥ 0) or divide by t^-places when the low terms vanish."""
        if places >= 0:
            step = T**places
            return self._like(self.value * step, self.epsilon * step, self.order + places)
        drop = -places
        if self.valuation() < drop:
            raise InputValidationError(f"series is not divisible by t^{drop}")
        step = T**drop
        return self._like(self.value.exquo(step), self.epsilon.exquo(step), self.order - drop)

    def reciprocal(self) -> "DualSeries":
        """1/f for f with invertible constant term: 1/(A + εB) = 1/A − εB/A²."""
        if self.order == 0 or self[0].a == 0:
            raise InputValidationError("reciprocal needs a nonzero constant term")
        inverse = rs_series_inversion(self.value, T, self.order)
        epsilon = -rs_mul(rs_mul(inverse, inverse, T, self.order), self.epsilon, T, self.order)
        return self._like(inverse, epsilon)

    def derivative(self) -> "DualSeries":
        """d/dt, one order shorter."""
        return self._like(rs_diff(self.value, T), rs_diff(self.epsilon, T), max(self.order - 1, 0))

    def compose(self, inner: "DualSeries") -> "DualSeries":
        """self(inner); inner must vanish at t = 0. The result has inner's regime.

        (F + εF_ε)(G + εG_ε) = F(G) + ε(F_ε(G) + F′(G)·G_ε).
        """
        if self.regime != REGIME_Z:
            raise RegimeMismatchError("only a power series in its argument can be applied to another series")
        if not inner[0].is_zero():
            raise InputValidationError("inner series must have zero constant term")
        order = min(inner.order, self.order)
        g = rs_trunc(inner.value, T, order)
        value = rs_subs(self.value, {T: g}, T, order)
        slope = rs_subs(rs_diff(self.value, T), {T: g}, T, order)
        epsilon = rs_subs(self.epsilon, {T: g}, T, order) + rs_mul(slope, inner.epsilon, T, order)
        return DualSeries(value, epsilon, order, inner.regime)

    def __call__(self, inner: "DualSeries") -> "DualSeries":
        return self.compose(inner)

    def reversion(self) -> "DualSeries":
        """Compositional inverse of f = a₁t + a₂t² + …, returned in REGIME_Z.

        The inverse u ↦ t(u) is an ordinary power series in u whatever regime
        f itself lives in. Its ε-part is −f_ε(T)·T′ for T the inverse of the
        value part.
        """
        if not self[0].is_zero():
            raise InputValidationError("reversion needs a zero constant term")
        if self[1].a == 0:
            raise InputValidationError("reversion needs an invertible linear coefficient")
        order = self.order
        lifted = _REVERSION_RING.from_dict({(k, 0): c for (k,), c in self.value.items()})
        solved = rs_series_reversion(lifted, _T2, order, _U2)
        inverse = SERIES_RING.from_dict({(j,): c for (_, j), c in solved.items()})
        moved = rs_subs(self.epsilon, {T: inverse}, T, order)
        epsilon = -rs_mul(moved, rs_diff(inverse, T), T, order)
        return DualSeries(inverse, epsilon, order, REGIME_Z)

    def evaluate(self, t: "Dual | Fraction | int") -> Dual:
        """Value of the truncated series at a point, by Horner's rule."""
        total = Dual(0)
        for c in reversed(self.coefficients):
            total = total * t + c
        return total

    def to_dict(self) -> dict[str, Any]:
        return {
            "regime": self.regime,
            "order": self.order,
            "values": [fraction_text(v) for v in self.values()],
            "derivatives": [fraction_text(v) for v in self.derivatives()],
        }

    def __eq__(self, other: object) -> bool:
        """Equal regimes and equal coefficients up to the shorter order."""
        if not isinstance(other, DualSeries):
            return NotImplemented
        if self.regime != other.regime:
            return False
        order = min(self.order, other.order)
        return rs_trunc(self.value - other.value, T, order) == 0 and rs_trunc(self.epsilon - other.epsilon, T, order) == 0

    def __hash__(self) -> int:
        return hash((self.regime, self[0]))


def series_from_terms(terms: Iterable[tuple[int, Any, Any]], order: int, regime: str) -> DualSeries:
    """Build from (power, value, ε-part) triples, unlisted powers zero."""
    values: list[Any] = [0] * order
    derivatives: list[Any] = [0] * order
    for power, value, derivative in terms:
        if 0 <= power < order:
            values[power] = value
            derivatives[power] = derivative
    return DualSeries.from_parts(values, derivatives, regime)

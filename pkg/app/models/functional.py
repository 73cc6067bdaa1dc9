"""Word-indexed infinitesimal functionals (φ, φ′) and cumulants (κ, κ′)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence, Union

from app.core.errors import InputValidationError, MissingLimitDataError

Scalar = Union[Fraction, float]
Word = tuple[str, ...]
DualPair = tuple[Scalar, Scalar]

UNIVARIATE_LETTER = "x"


def _coerce(value: Any, exact: bool) -> Scalar:
    if exact:
        if isinstance(value, float):
            raise InputValidationError("float value in an exact functional")
        return Fraction(value)
    return float(value)


def _detect_exact(values: Iterable[Any]) -> bool:
    kinds = {isinstance(v, float) for v in values}
    if len(kinds) > 1:
        raise InputValidationError("exact and floating values are mixed in one functional")
    return not kinds or kinds == {False}


def parse_word(text: str | Sequence[str]) -> Word:
    """"x x y" / "x,x,y" / ["x","x","y"]; single-character letters may be run together."""
    if not isinstance(text, str):
        return tuple(str(letter) for letter in text)
    text = text.strip()
    if not text:
        return ()
    if "," in text or " " in text:
        return tuple(part for part in text.replace(",", " ").split() if part)
    return tuple(text)


@dataclass(frozen=True)
class _WordTable:
    n_max: int
    values: Mapping[Word, DualPair]
    exact: bool = field(default=True)

    def __post_init__(self) -> None:
        flat = [v for pair in self.values.values() for v in pair]
        exact = _detect_exact(flat)
        normalized = {
            tuple(word): (_coerce(a, exact), _coerce(b, exact)) for word, (a, b) in self.values.items()
        }
        object.__setattr__(self, "values", normalized)
        object.__setattr__(self, "exact", exact)
        if any(len(word) > self.n_max for word in normalized):
            raise InputValidationError("a stored word is longer than the order cap")

    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0

    def one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted({letter for word in self.values for letter in word}))

    def words(self) -> list[Word]:
        return sorted(self.values, key=lambda w: (len(w), w))

    def _lookup(self, word: Word) -> DualPair:
        try:
            return self.values[tuple(word)]
        except KeyError as exc:
            raise MissingLimitDataError(f"no value stored for word {' '.join(word) or '1'}") from exc

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_max": self.n_max,
            "exact": self.exact,
            "values": {" ".join(word): [_render(a), _render(b)] for word, (a, b) in self.values.items()},
        }


def _render(value: Scalar) -> str | float:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return value


@dataclass(frozen=True)
class InfFunctional(_WordTable):
    """(φ, φ′) on words, with φ(1) = 1 and φ′(1) = 0."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if () in self.values and self.values[()] != (self.one(), self.zero()):
            raise InputValidationError("φ(1) must be 1 and φ′(1) must be 0")

    @classmethod
    def univariate(
        cls, moments: Sequence[Any], inf_moments: Sequence[Any], letter: str = UNIVARIATE_LETTER
    ) -> "InfFunctional":
        """moments[k-1] = m_k, inf_moments[k-1] = m′_k."""
        if len(moments) != len(inf_moments):
            raise InputValidationError("moment sequences must have equal length")
        values = {(letter,) * k: (m, mp) for k, (m, mp) in enumerate(zip(moments, inf_moments), start=1)}
        return cls(len(moments), values)

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "InfFunctional":
        values = {parse_word(word): (pair[0], pair[1]) for word, pair in payload["values"].items()}
        values = {word: tuple(_parse_scalar(v) for v in pair) for word, pair in values.items()}  # type: ignore[misc]
        n_max = int(payload.get("n_max") or max((len(w) for w in values), default=0))
        return cls(n_max, values)  # type: ignore[arg-type]

    def phi(self, word: Sequence[str]) -> Scalar:
        if not word:
            return self.one()
        return self._lookup(tuple(word))[0]

    def phi_prime(self, word: Sequence[str]) -> Scalar:
        if not word:
            return self.zero()
        return self._lookup(tuple(word))[1]

    def sequence(self, letter: str = UNIVARIATE_LETTER) -> tuple[list[Scalar], list[Scalar]]:
        words = [(letter,) * k for k in range(1, self.n_max + 1)]
        return [self.phi(w) for w in words], [self.phi_prime(w) for w in words]


@dataclass(frozen=True)
class InfCumulants(_WordTable):
    """(κ, κ′) on words; multilinearity is implicit."""

    @classmethod
    def univariate(
        cls, kappas: Sequence[Any], inf_kappas: Sequence[Any], letter: str = UNIVARIATE_LETTER
    ) -> "InfCumulants":
        if len(kappas) != len(inf_kappas):
            raise InputValidationError("cumulant sequences must have equal length")
        values = {(letter,) * k: (a, b) for k, (a, b) in enumerate(zip(kappas, inf_kappas), start=1)}
        return cls(len(kappas), values)

    def kappa(self, word: Sequence[str]) -> Scalar:
        return self._lookup(tuple(word))[0]

    def kappa_prime(self, word: Sequence[str]) -> Scalar:
        return self._lookup(tuple(word))[1]

    def sequence(self, letter: str = UNIVARIATE_LETTER) -> tuple[list[Scalar], list[Scalar]]:
        words = [(letter,) * k for k in range(1, self.n_max + 1)]
        return [self.kappa(w) for w in words], [self.kappa_prime(w) for w in words]


def _parse_scalar(value: Any) -> Scalar:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        return value
    text = str(value).strip()
    try:
        return Fraction(text)
    except ValueError as exc:
        raise InputValidationError(f"cannot parse value {value!r}") from exc

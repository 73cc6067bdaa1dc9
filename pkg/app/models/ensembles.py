"""Deterministic matrix families with closed-form (infinitesimal) limits.

A trace word is a tuple of (letter, transposed) pairs; letters are 1-based.
Every family reports tr(word) exactly as a polynomial in N⁻¹, from which φ is
the N⁰ coefficient and φ′ the N⁻¹ coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from app.core.errors import InputValidationError
from app.models.laurent import LaurentPoly
from app.models.permutation import Permutation, SignPattern

TraceWord = tuple[tuple[int, bool], ...]


class ConstantEnsemble:
    """Interface shared by the shipped families."""

    name = "constant"

    @property
    def letters(self) -> int:
        raise NotImplementedError

    def admissible(self, N: int) -> bool:
        return N >= 1

    def matrix(self, letter: int, N: int) -> np.ndarray:
        """A_letter at size N as an object array of Fractions."""
        raise NotImplementedError

    def trace_poly(self, word: Sequence[tuple[int, bool]]) -> LaurentPoly:
        raise NotImplementedError

    def phi(self, word: Sequence[tuple[int, bool]]) -> Fraction:
        return self.trace_poly(word).coefficient(0)

    def phi_prime(self, word: Sequence[tuple[int, bool]]) -> Fraction:
        return self.trace_poly(word).coefficient(-1)

    def _check_letter(self, letter: int) -> None:
        if not 1 <= letter <= self.letters:
            raise InputValidationError(f"letter {letter} is outside 1..{self.letters}")

    def _check_size(self, N: int) -> None:
        if not self.admissible(N):
            raise InputValidationError(f"N = {N} is not admissible for the {self.name} family")

    def to_dict(self) -> dict[str, Any]:
        return {"family": self.name, "letters": self.letters}


@dataclass(frozen=True)
class RankOneEnsemble(ConstantEnsemble):
    """A_i = diag(λ_i, 1, …, 1): tr(word) = 1 + (Πλ − 1)/N, so φ = 1 and φ′ = Πλ − 1."""

    lambdas: tuple[Fraction, ...]
    name = "rank1"

    def __post_init__(self) -> None:
        if not self.lambdas:
            raise InputValidationError("at least one λ is required")
        object.__setattr__(self, "lambdas", tuple(Fraction(v) for v in self.lambdas))

    @property
    def letters(self) -> int:
        return len(self.lambdas)

    def matrix(self, letter: int, N: int) -> np.ndarray:
        self._check_letter(letter)
        self._check_size(N)
        out = np.identity(N, dtype=object) * Fraction(1)
        out[0, 0] = self.lambdas[letter - 1]
        return out

    def trace_poly(self, word: Sequence[tuple[int, bool]]) -> LaurentPoly:
        product = Fraction(1)
        for letter, _ in word:
            self._check_letter(letter)
            product *= self.lambdas[letter - 1]
        return LaurentPoly.in_inverse_n([1, product - 1])

    def to_dict(self) -> dict[str, Any]:
        return {"family": self.name, "lambdas": [str(v) for v in self.lambdas]}


@dataclass(frozen=True)
class TiledEnsemble(ConstantEnsemble):
    """A_i = P_i ⊗ I_{N/k} for k×k patterns P_i; tr(word) is the pattern trace, φ′ = 0."""

    patterns: tuple[tuple[tuple[Fraction, ...], ...], ...]
    name = "tiled"

    def __post_init__(self) -> None:
        if not self.patterns:
            raise InputValidationError("at least one pattern is required")
        normalized = tuple(tuple(tuple(Fraction(v) for v in row) for row in p) for p in self.patterns)
        k = len(normalized[0])
        if any(len(p) != k or any(len(row) != k for row in p) for p in normalized):
            raise InputValidationError("patterns must all be k×k")
        object.__setattr__(self, "patterns", normalized)

    @property
    def letters(self) -> int:
        return len(self.patterns)

    @property
    def block(self) -> int:
        return len(self.patterns[0])

    def admissible(self, N: int) -> bool:
        return N >= self.block and N % self.block == 0

    def _pattern(self, letter: int, transposed: bool) -> np.ndarray:
        self._check_letter(letter)
        p = np.array(self.patterns[letter - 1], dtype=object)
        return p.T if transposed else p

    def matrix(self, letter: int, N: int) -> np.ndarray:
        self._check_size(N)
        return np.kron(self._pattern(letter, False), np.identity(N // self.block, dtype=object))

    def trace_poly(self, word: Sequence[tuple[int, bool]]) -> LaurentPoly:
        product = np.identity(self.block, dtype=object) * Fraction(1)
        for letter, transposed in word:
            product = product.dot(self._pattern(letter, transposed))
        return LaurentPoly.constant(Fraction(np.trace(product)) / self.block)

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.name,
            "patterns": [[[str(v) for v in row] for row in p] for p in self.patterns],
        }


@dataclass(frozen=True)
class MultiTrace:
    """tr_σ(A^η): product over the cycles of σ of (normalized) traces with transposes per η."""

    sigma: Permutation
    eta: SignPattern
    normalized: bool = True

    def __post_init__(self) -> None:
        if self.sigma.signed or self.sigma.n != self.eta.n:
            raise InputValidationError("σ must act on [n] and η must have length n")

    def words(self) -> list[TraceWord]:
        return [tuple((k, self.eta[k] < 0) for k in cycle) for cycle in self.sigma.cycles()]

    @classmethod
    def of(cls, pattern: Any, normalized: bool = True) -> "MultiTrace":
        """From anything carrying sigma and eta, e.g. a K^δ complement."""
        return cls(pattern.sigma, pattern.eta, normalized)

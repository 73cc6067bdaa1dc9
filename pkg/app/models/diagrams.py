from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from app.core.errors import InputValidationError
from app.models.partition import SetPartition
from app.models.permutation import Permutation, SignPattern, delta


@dataclass(frozen=True)
class HalfPairing:
    """Non-crossing partition with one designated even block of through strings."""

    base: SetPartition
    special: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.special not in self.base.blocks:
            raise InputValidationError("special block must be a block of the base partition")
        if len(self.special) % 2:
            raise InputValidationError("special block must have even size")
        if any(len(block) != 2 for block in self.base.blocks if block != self.special):
            raise InputValidationError("blocks other than the special one must be pairs")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def through_count(self) -> int:
        return len(self.special)

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "blocks": [list(block) for block in self.base.blocks], "special": list(self.special)}


@dataclass(frozen=True)
class AnnularPairing:
    """A δ-symmetric pairing ρ of [±n]; membership in NC₂^δ is checked by the service layer."""

    rho: Permutation

    def __post_init__(self) -> None:
        if not self.rho.signed or not self.rho.is_pairing():
            raise InputValidationError("an annular pairing is a fixed-point free involution of [±n]")
        d = delta(self.rho.n)
        if d * self.rho * d != self.rho:
            raise InputValidationError("annular pairing must satisfy δρδ = ρ")

    @classmethod
    def from_pairs(cls, n: int, pairs: list[tuple[int, int]] | list[list[int]]) -> "AnnularPairing":
        """Accepts either all pairs or one representative per δ-orbit."""
        mapping: dict[int, int] = {}
        for r, s in pairs:
            for a, b in ((r, s), (-r, -s)):
                mapping[a] = b
                mapping[b] = a
        return cls(Permutation.from_mapping(n, mapping, True))

    @property
    def n(self) -> int:
        return self.rho.n

    def pairs(self) -> list[tuple[int, int]]:
        return self.rho.pairs()

    def through_strings(self) -> list[tuple[int, int]]:
        return [(r, s) for r, s in self.pairs() if (r > 0) != (s > 0)]

    @property
    def through_count(self) -> int:
        """Number of through strings counted once per δ-orbit."""
        return len(self.through_strings()) // 2

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "pairs": [list(pair) for pair in self.pairs()]}

    def __str__(self) -> str:
        return self.rho.format()


@dataclass(frozen=True)
class KDeltaComplement:
    """(σ, η): the multi-trace pattern Tr_σ(A^η) attached to a δ-symmetric pairing."""

    sigma: Permutation
    eta: SignPattern

    def __post_init__(self) -> None:
        if self.sigma.signed or self.sigma.n != self.eta.n:
            raise InputValidationError("σ must act on [n] and η must have length n")

    def trace_words(self) -> list[tuple[tuple[int, bool], ...]]:
        """One word per cycle of σ: (matrix index, transposed) letters."""
        return [tuple((k, self.eta[k] < 0) for k in cycle) for cycle in self.sigma.cycles()]

    def to_dict(self) -> dict[str, Any]:
        return {"sigma": self.sigma.format(), "eta": list(self.eta.signs)}

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from app.core.errors import DegreeMismatchError, InputValidationError
from app.models.permutation import Permutation, label_key


@dataclass(frozen=True)
class SetPartition:
    """A partition of [n] (or [±n]) with blocks stored in canonical order."""

    n: int
    blocks: tuple[tuple[int, ...], ...]
    signed: bool = False

    def __post_init__(self) -> None:
        canonical = tuple(
            sorted((tuple(sorted(block, key=label_key)) for block in self.blocks), key=lambda b: label_key(b[0]))
        )
        object.__setattr__(self, "blocks", canonical)
        seen = [label for block in canonical for label in block]
        if any(not block for block in canonical):
            raise InputValidationError("blocks must be nonempty")
        if sorted(seen, key=label_key) != self.ground_set():
            raise InputValidationError("blocks must be disjoint and cover the ground set")

    def ground_set(self) -> list[int]:
        labels = list(range(1, self.n + 1))
        if self.signed:
            labels += [-k for k in range(1, self.n + 1)]
        return sorted(labels, key=label_key)

    # -- constructors -----------------------------------------------------
    @classmethod
    def of(cls, n: int, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        blocks = [tuple(block) for block in blocks]
        signed = any(label < 0 for block in blocks for label in block)
        return cls(n, tuple(blocks), signed)

    @classmethod
    def singletons(cls, n: int) -> "SetPartition":
        """0_n"""
        return cls(n, tuple((k,) for k in range(1, n + 1)))

    @classmethod
    def full(cls, n: int) -> "SetPartition":
        """1_n"""
        return cls(n, (tuple(range(1, n + 1)),) if n else ())

    @classmethod
    def from_permutation(cls, p: Permutation) -> "SetPartition":
        return cls(p.n, p.cycles(), p.signed)

    @classmethod
    def kernel(cls, word: Sequence[Hashable]) -> "SetPartition":
        """ker(word): i ~ j iff word[i] == word[j], on positions 1..len(word)."""
        groups: dict[Hashable, list[int]] = {}
        for position, letter in enumerate(word, start=1):
            groups.setdefault(letter, []).append(position)
        return cls(len(word), tuple(tuple(group) for group in groups.values()))

    # -- structure --------------------------------------------------------
    def __len__(self) -> int:
        return len(self.blocks)

    def block_count(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> list[int]:
        return [len(block) for block in self.blocks]

    def block_of(self, label: int) -> tuple[int, ...]:
        for block in self.blocks:
            if label in block:
                return block
        raise InputValidationError(f"label {label} is not in the ground set")

    def is_pairing(self) -> bool:
        return all(len(block) == 2 for block in self.blocks)

    def to_permutation(self) -> Permutation:
        """Each block becomes the cycle visiting its elements in increasing order."""
        return Permutation.from_cycles(self.n, self.blocks, self.signed)

    def _check_compatible(self, other: "SetPartition") -> None:
        if self.n != other.n or self.signed != other.signed:
            raise DegreeMismatchError("partitions live on different ground sets")

    def __le__(self, other: "SetPartition") -> bool:
        """Refinement order: every block of self lies inside a block of other."""
        self._check_compatible(other)
        owner = {label: index for index, block in enumerate(other.blocks) for label in block}
        return all(len({owner[label] for label in block}) == 1 for block in self.blocks)

    def __lt__(self, other: "SetPartition") -> bool:
        return self != other and self <= other

    def join(self, other: "SetPartition") -> "SetPartition":
        self._check_compatible(other)
        parent = {label: label for label in self.ground_set()}

        def find(label: int) -> int:
            while parent[label] != label:
                parent[label] = parent[parent[label]]
                label = parent[label]
            return label

        for block in (*self.blocks, *other.blocks):
            root = find(block[0])
            for label in block[1:]:
                parent[find(label)] = root

        merged: dict[int, list[int]] = {}
        for label in self.ground_set():
            merged.setdefault(find(label), []).append(label)
        return SetPartition(self.n, tuple(tuple(block) for block in merged.values()), self.signed)

    def __or__(self, other: "SetPartition") -> "SetPartition":
        return self.join(other)

    def restrict(self, subset: Sequence[int]) -> "SetPartition":
        """Restriction to subset, relabelled 1..len(subset) by position."""
        position = {label: index for index, label in enumerate(subset, start=1)}
        blocks = []
        for block in self.blocks:
            inside = tuple(position[label] for label in block if label in position)
            if inside:
                blocks.append(inside)
        return SetPartition(len(subset), tuple(blocks))

    def format(self) -> str:
        return "".join("(" + ",".join(str(label) for label in block) + ")" for block in self.blocks) or "()"

    def to_dict(self) -> dict[str, object]:
        return {"n": self.n, "blocks": [list(block) for block in self.blocks]}

    def __str__(self) -> str:
        return self.format()

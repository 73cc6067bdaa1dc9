"""Permutations of [n] and of the signed set [±n].

Labels are the mathematical points: 1..n, plus -1..-n on a signed ground set.
Internally a signed label k is stored at slot k-1 and -k at slot n+k-1, so the
ground set [±n] is indexed by 0..2n-1. The encoding stays inside this module:
callers only ever see labels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from app.core.errors import DegreeMismatchError, InputValidationError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def label_key(label: int) -> tuple[int, int]:
    """Order 1 < -1 < 2 < -2 < ... used for canonical cycle form."""
    return (abs(label), 1 if label < 0 else 0)


@dataclass(frozen=True)
class Permutation:
    n: int
    signed: bool
    images: tuple[int, ...] = field(repr=False)

    def __post_init__(self) -> None:
        size = 2 * self.n if self.signed else self.n
        if self.n < 0:
            raise InputValidationError("degree must be non-negative")
        if len(self.images) != size or sorted(self.images) != list(range(size)):
            raise InputValidationError("mapping is not a bijection of the ground set")

    # -- label encoding ---------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.images)

    def _slot(self, label: int) -> int:
        if label == 0 or abs(label) > self.n or (label < 0 and not self.signed):
            raise InputValidationError(f"label {label} is not in the ground set")
        return label - 1 if label > 0 else self.n - label - 1

    def _label(self, slot: int) -> int:
        return slot + 1 if slot < self.n else -(slot - self.n + 1)

    def labels(self) -> list[int]:
        return [self._label(slot) for slot in range(self.size)]

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, n: int, signed: bool = False) -> "Permutation":
        return cls(n, signed, tuple(range(2 * n if signed else n)))

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, int], signed: bool = False) -> "Permutation":
        """Build from a label -> label map; unlisted labels are fixed."""
        blank = cls.identity(n, signed)
        images = list(blank.images)
        for source, target in mapping.items():
            images[blank._slot(source)] = blank._slot(target)
        return cls(n, signed, tuple(images))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]], signed: bool | None = None) -> "Permutation":
        cycles = [tuple(c) for c in cycles]
        if signed is None:
            signed = any(label < 0 for cycle in cycles for label in cycle)
        mapping: dict[int, int] = {}
        for cycle in cycles:
            for index, label in enumerate(cycle):
                if label in mapping:
                    raise InputValidationError(f"label {label} appears twice in cycle notation")
                mapping[label] = cycle[(index + 1) % len(cycle)]
        return cls.from_mapping(n, mapping, signed)

    @classmethod
    def parse(cls, text: str, n: int | None = None, signed: bool | None = None) -> "Permutation":
        """Parse cycle notation such as "(1,7)(2,3)" or "(1,-7)(-1,7)"."""
        stripped = text.replace(" ", "")
        cycles: list[tuple[int, ...]] = []
        consumed = 0
        for match in _CYCLE_RE.finditer(stripped):
            if match.start() != consumed:
                raise InputValidationError(f"cannot parse cycle notation: {text!r}")
            consumed = match.end()
            body = match.group(1)
            if not body:
                continue
            try:
                cycles.append(tuple(int(part) for part in body.split(",")))
            except ValueError as exc:
                raise InputValidationError(f"cannot parse cycle notation: {text!r}") from exc
        if consumed != len(stripped):
            raise InputValidationError(f"cannot parse cycle notation: {text!r}")
        largest = max((abs(label) for cycle in cycles for label in cycle), default=0)
        return cls.from_cycles(n if n is not None else largest, cycles, signed)

    # -- evaluation -------------------------------------------------------
    def __call__(self, label: int) -> int:
        return self._label(self.images[self._slot(label)])

    def __mul__(self, other: "Permutation") -> "Permutation":
        """self * other applies other first, then self."""
        self._check_compatible(other)
        return Permutation(self.n, self.signed, tuple(self.images[j] for j in other.images))

    def _check_compatible(self, other: "Permutation") -> None:
        if self.n != other.n or self.signed != other.signed:
            raise DegreeMismatchError(
                f"ground sets differ: {self.describe_ground()} vs {other.describe_ground()}"
            )

    def describe_ground(self) -> str:
        return f"[±{self.n}]" if self.signed else f"[{self.n}]"

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for slot, image in enumerate(self.images):
            inv[image] = slot
        return Permutation(self.n, self.signed, tuple(inv))

    def conjugate(self, by: "Permutation") -> "Permutation":
        """by * self * by^-1"""
        return by * self * by.inverse()

    # -- cycles -----------------------------------------------------------
    def slot_cycles(self) -> list[list[int]]:
        seen = [False] * self.size
        cycles: list[list[int]] = []
        for start in range(self.size):
            if seen[start]:
                continue
            cycle = []
            slot = start
            while not seen[slot]:
                seen[slot] = True
                cycle.append(slot)
                slot = self.images[slot]
            cycles.append(cycle)
        return cycles

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Canonical cycle form: each cycle led by its least label, cycles sorted."""
        result = []
        for slot_cycle in self.slot_cycles():
            labels = [self._label(slot) for slot in slot_cycle]
            lead = min(range(len(labels)), key=lambda i: label_key(labels[i]))
            result.append(tuple(labels[lead:] + labels[:lead]))
        result.sort(key=lambda cycle: label_key(cycle[0]))
        return tuple(result)

    def cycle_count(self) -> int:
        return len(self.slot_cycles())

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.cycles())

    def is_identity(self) -> bool:
        return all(slot == image for slot, image in enumerate(self.images))

    def is_involution(self) -> bool:
        return all(self.images[image] == slot for slot, image in enumerate(self.images))

    def is_pairing(self) -> bool:
        """Fixed-point free involution."""
        return all(self.images[image] == slot != image for slot, image in enumerate(self.images))

    def pairs(self) -> list[tuple[int, int]]:
        return [cycle for cycle in self.cycles() if len(cycle) == 2]  # type: ignore[misc]

    def format(self, with_fixed_points: bool = True) -> str:
        parts = [cycle for cycle in self.cycles() if with_fixed_points or len(cycle) > 1]
        if not parts:
            return "()"
        return "".join("(" + ",".join(str(label) for label in cycle) + ")" for cycle in parts)

    def __str__(self) -> str:
        return self.format()


# -- distinguished permutations --------------------------------------------


def gamma(n: int, signed: bool = False) -> Permutation:
    """The long cycle (1,2,...,n); on [±n] it fixes the negative labels."""
    if n == 0:
        return Permutation.identity(0, signed)
    return Permutation.from_cycles(n, [tuple(range(1, n + 1))], signed)


def delta(n: int) -> Permutation:
    """k -> -k on [±n]."""
    return Permutation.from_mapping(n, {**{k: -k for k in range(1, n + 1)}, **{-k: k for k in range(1, n + 1)}}, True)


def embed_signed(p: Permutation) -> Permutation:
    """View a permutation of [n] as one of [±n] fixing the negative labels."""
    if p.signed:
        return p
    return Permutation(p.n, True, p.images + tuple(range(p.n, 2 * p.n)))


@dataclass(frozen=True)
class SignPattern:
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(sign not in (1, -1) for sign in self.signs):
            raise InputValidationError("signs must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.signs)

    @classmethod
    def all_positive(cls, n: int) -> "SignPattern":
        return cls((1,) * n)

    def __getitem__(self, k: int) -> int:
        """1-based access, matching the labels."""
        return self.signs[k - 1]

    def as_permutation(self) -> Permutation:
        """k -> signs[|k|] * k on [±n]; commutes with delta."""
        mapping: dict[int, int] = {}
        for k, sign in enumerate(self.signs, start=1):
            mapping[k] = sign * k
            mapping[-k] = -sign * k
        return Permutation.from_mapping(self.n, mapping, True)

    def __str__(self) -> str:
        return "(" + ",".join(str(sign) for sign in self.signs) + ")"

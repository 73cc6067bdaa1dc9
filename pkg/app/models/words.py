from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from app.core.errors import InputValidationError
from app.models.partition import SetPartition

_LETTER_NAMES = "XYZUVW"


@dataclass(frozen=True)
class ColorWord:
    """Y_{i₁}⋯Y_{iₙ}: letters are (color, transposed) with colors numbered from 1."""

    letters: tuple[tuple[int, bool], ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise InputValidationError("a color word must be nonempty")
        if any(color < 1 for color, _ in self.letters):
            raise InputValidationError("colors are numbered from 1")

    @classmethod
    def of(cls, colors: Sequence[int]) -> "ColorWord":
        return cls(tuple((int(color), False) for color in colors))

    @classmethod
    def parse(cls, text: str) -> "ColorWord":
        """Accepts "1,1,2", "1,2t" (t marks a transpose) or letter words like "XYXY"."""
        text = text.strip()
        if not text:
            raise InputValidationError("empty word")
        if text.replace("t", "").replace("'", "").isalpha() and "," not in text:
            letters = []
            for ch in text:
                if ch in "t'":
                    if not letters:
                        raise InputValidationError(f"cannot parse word {text!r}")
                    letters[-1] = (letters[-1][0], True)
                    continue
                index = _LETTER_NAMES.find(ch.upper())
                if index < 0:
                    raise InputValidationError(f"unknown letter {ch!r} in {text!r}")
                letters.append((index + 1, False))
            return cls(tuple(letters))
        parsed = []
        for part in text.split(","):
            part = part.strip()
            transposed = part.endswith(("t", "'"))
            digits = part.rstrip("t'")
            if not digits.isdigit():
                raise InputValidationError(f"cannot parse word {text!r}")
            parsed.append((int(digits), transposed))
        return cls(tuple(parsed))

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(color for color, _ in self.letters)

    def has_transpose(self) -> bool:
        return any(transposed for _, transposed in self.letters)

    def kernel(self) -> SetPartition:
        """ker(i): positions with equal colors share a block."""
        return SetPartition.kernel(self.colors)

    def __str__(self) -> str:
        return ",".join(f"{color}{'t' if transposed else ''}" for color, transposed in self.letters)

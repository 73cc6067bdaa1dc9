"""Moment <-> cumulant transforms for infinitesimal distributions.

φ(a₁⋯aₙ) = Σ_{π∈NC(n)} κ_π and φ′(a₁⋯aₙ) = Σ_{π∈NC(n)} ∂κ_π, where ∂ is the
Leibniz derivation ∂κ_π = Σ_{V∈π} κ′_V ∏_{W≠V} κ_W. The recursive path peels
off the single π = 1ₙ term; the Möbius path inverts over NC(n) directly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Callable, Iterable, Mapping, Sequence

from app.core.config import enforce_cap
from app.core.errors import InputValidationError, NotAlternatingError
from app.models.functional import InfCumulants, InfFunctional, Scalar, Word
from app.models.partition import SetPartition
from app.services.noncrossing import enumerate_noncrossing, kreweras, mobius_to_full

logger = logging.getLogger(__name__)


def _sub(word: Word, block: Sequence[int]) -> Word:
    return tuple(word[position - 1] for position in block)


def _leibniz(values: Sequence[tuple[Scalar, Scalar]], zero: Scalar) -> tuple[Scalar, Scalar]:
    """(∏ a_V, Σ_V a′_V ∏_{W≠V} a_W) for dual factors (a_V, a′_V)."""
    plain: Scalar = zero + 1
    derived: Scalar = zero
    for a, a_prime in values:
        derived = derived * a + plain * a_prime
        plain = plain * a
    return plain, derived


class _CumulantSolver:
    """Memoized recursive extraction of (κ, κ′) on subwords of a functional."""

    def __init__(self, f: InfFunctional) -> None:
        self.f = f
        self.zero = f.zero()
        self.cache: dict[Word, tuple[Scalar, Scalar]] = {}

    def __call__(self, word: Word) -> tuple[Scalar, Scalar]:
        if word in self.cache:
            return self.cache[word]
        n = len(word)
        kappa = self.f.phi(word)
        kappa_prime = self.f.phi_prime(word)
        for pi in enumerate_noncrossing(n):
            if pi.block_count() == 1:
                continue
            plain, derived = _leibniz([self(_sub(word, block)) for block in pi.blocks], self.zero)
            kappa -= plain
            kappa_prime -= derived
        self.cache[word] = (kappa, kappa_prime)
        return kappa, kappa_prime


def moments_to_cumulants(f: InfFunctional, words: Iterable[Word] | None = None) -> InfCumulants:
    """(κ, κ′) on the given words (default: every stored word)."""
    enforce_cap("order", f.n_max, "enumeration_max_n")
    solver = _CumulantSolver(f)
    targets = list(words) if words is not None else f.words()
    values = {tuple(word): solver(tuple(word)) for word in targets if word}
    return InfCumulants(max((len(w) for w in values), default=0), values)


def cumulants_to_moments(k: InfCumulants, words: Iterable[Word] | None = None) -> InfFunctional:
    """(φ, φ′) on the given words (default: every stored word)."""
    enforce_cap("order", k.n_max, "enumeration_max_n")
    zero = k.zero()
    targets = list(words) if words is not None else k.words()
    values: dict[Word, tuple[Scalar, Scalar]] = {}
    for word in targets:
        if not word:
            continue
        phi: Scalar = zero
        phi_prime: Scalar = zero
        for pi in enumerate_noncrossing(len(word)):
            plain, derived = _leibniz(
                [(k.kappa(_sub(word, b)), k.kappa_prime(_sub(word, b))) for b in pi.blocks], zero
            )
            phi += plain
            phi_prime += derived
        values[tuple(word)] = (phi, phi_prime)
    return InfFunctional(max((len(w) for w in values), default=0), values)


def phi_pi(pi: SetPartition, f: InfFunctional, word: Sequence[str]) -> Scalar:
    """φ_π: product of φ over the blocks."""
    _check_length(pi, word)
    return prod((f.phi(_sub(tuple(word), block)) for block in pi.blocks), start=f.one())


def partial_phi(pi: SetPartition, f: InfFunctional, word: Sequence[str]) -> Scalar:
    """∂φ_π = Σ_{V∈π} φ′(a|V) ∏_{W≠V} φ(a|W)."""
    _check_length(pi, word)
    pairs = [(f.phi(_sub(tuple(word), b)), f.phi_prime(_sub(tuple(word), b))) for b in pi.blocks]
    return _leibniz(pairs, f.zero())[1]


def _check_length(pi: SetPartition, word: Sequence[str]) -> None:
    if pi.n != len(word):
        raise InputValidationError(f"partition of [{pi.n}] applied to a word of length {len(word)}")


def mobius_inversion_cumulant(f: InfFunctional, word: Sequence[str]) -> tuple[Scalar, Scalar]:
    """(κₙ, κ′ₙ) = Σ_{π∈NC(n)} μ(π, 1ₙ)·(φ_π, ∂φ_π)."""
    word = tuple(word)
    enforce_cap("order", len(word), "enumeration_max_n")
    kappa: Scalar = f.zero()
    kappa_prime: Scalar = f.zero()
    for pi in enumerate_noncrossing(len(word)):
        weight = mobius_to_full(pi)
        kappa += weight * phi_pi(pi, f, word)
        kappa_prime += weight * partial_phi(pi, f, word)
    return kappa, kappa_prime


# -- univariate helpers ---------------------------------------------------------------


def univariate_cumulants(moments: Sequence[Scalar], inf_moments: Sequence[Scalar]) -> tuple[list[Scalar], list[Scalar]]:
    result = moments_to_cumulants(InfFunctional.univariate(moments, inf_moments))
    return result.sequence()


def univariate_moments(kappas: Sequence[Scalar], inf_kappas: Sequence[Scalar]) -> tuple[list[Scalar], list[Scalar]]:
    result = cumulants_to_moments(InfCumulants.univariate(kappas, inf_kappas))
    return result.sequence()


def goe_partial_kappa(pi: SetPartition) -> int:
    """∂κ_π for the GOE limit (κ₂ = 1, κ′ₙ = 1 for even n, all else 0)."""
    sizes = pi.block_sizes()
    if any(size % 2 for size in sizes):
        return 0
    big = [size for size in sizes if size > 2]
    if not big:
        return len(sizes)
    if len(big) == 1:
        return 1
    return 0


def one_big_block_count(n: int, k: int) -> int:
    """C(n, (n+k)/2): partitions in NC(n) with one block of size k > 2, the rest pairs."""
    if n % 2 or k % 2 or k <= 2 or k > n:
        return 0
    return comb(n, (n + k) // 2)


# -- freeness ------------------------------------------------------------------------------


@dataclass
class FreenessReport:
    order: int
    groups: dict[str, int]
    violations: list[tuple[Word, Scalar, Scalar]] = field(default_factory=list)
    checked: int = 0

    @property
    def is_free(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, object]:
        return {
            "order": self.order,
            "checked": self.checked,
            "infinitesimally_free": self.is_free,
            "violations": [
                {"word": " ".join(word), "kappa": str(k), "kappa_prime": str(kp)} for word, k, kp in self.violations
            ],
        }


def _group_map(groups: Sequence[Iterable[str]] | Mapping[str, int]) -> dict[str, int]:
    if isinstance(groups, Mapping):
        return dict(groups)
    mapping: dict[str, int] = {}
    for index, letters in enumerate(groups):
        for letter in letters:
            if letter in mapping:
                raise InputValidationError(f"letter {letter!r} belongs to two groups")
            mapping[letter] = index
    return mapping


def _is_zero(value: Scalar, tolerance: float) -> bool:
    return value == 0 if isinstance(value, Fraction) else abs(value) <= tolerance


def check_inf_freeness(
    f: InfFunctional,
    groups: Sequence[Iterable[str]] | Mapping[str, int],
    order: int | None = None,
    tolerance: float = 1e-9,
) -> FreenessReport:
    """Every mixed word up to `order` whose κ or κ′ is nonzero."""
    mapping = _group_map(groups)
    order = order or f.n_max
    enforce_cap("order", order, "enumeration_max_n")
    solver = _CumulantSolver(f)
    report = FreenessReport(order=order, groups=mapping)
    letters = sorted(mapping)
    for length in range(2, order + 1):
        for word in product(letters, repeat=length):
            if len({mapping[letter] for letter in word}) < 2:
                continue
            report.checked += 1
            kappa, kappa_prime = solver(word)
            if not (_is_zero(kappa, tolerance) and _is_zero(kappa_prime, tolerance)):
                report.violations.append((word, kappa, kappa_prime))
    logger.info("freeness check: %d mixed words, %d violations", report.checked, len(report.violations))
    return report


def inf_free_alternating_moment(
    f: InfFunctional, groups: Sequence[Iterable[str]] | Mapping[str, int], word: Sequence[str]
) -> Scalar:
    """Predicted φ′ of an alternating centered word under infinitesimal freeness."""
    mapping = _group_map(groups)
    word = tuple(word)
    if not word:
        raise NotAlternatingError("empty word")
    for letter in word:
        if letter not in mapping:
            raise NotAlternatingError(f"letter {letter!r} is in no group")
        if not _is_zero(f.phi((letter,)), 1e-12):
            raise NotAlternatingError(f"letter {letter!r} is not centered")
    if any(mapping[a] == mapping[b] for a, b in zip(word, word[1:])):
        raise NotAlternatingError(f"{' '.join(word)} is not alternating")
    n = len(word)
    if n % 2 == 0:
        return f.zero()
    m = n // 2
    value = f.phi_prime((word[m],))
    for j in range(m):
        value *= f.phi((word[j], word[n - 1 - j]))
    return value


def normalized_sum_cumulant(k: InfCumulants | InfFunctional, letters: Sequence[str], n: int) -> tuple[Scalar, Scalar]:
    """(κₙ, κ′ₙ) of z = (x₁ + … + x_s)/√s by multilinearity; n must be even."""
    if n % 2:
        raise InputValidationError("normalized sums are only rational for even orders")
    cumulants = k if isinstance(k, InfCumulants) else moments_to_cumulants(
        k, [w for w in product(letters, repeat=n)]
    )
    weight = Fraction(1, len(letters) ** (n // 2))
    total = sum((cumulants.kappa(w) for w in product(letters, repeat=n)), start=cumulants.zero())
    total_prime = sum((cumulants.kappa_prime(w) for w in product(letters, repeat=n)), start=cumulants.zero())
    if not cumulants.exact:
        return total * float(weight), total_prime * float(weight)
    return total * weight, total_prime * weight


def free_prediction_sum_cumulant(k: InfCumulants, letters: Sequence[str], n: int) -> tuple[Scalar, Scalar]:
    """What infinitesimal freeness of the letters would force for z = Σx/√s."""
    if n % 2:
        raise InputValidationError("normalized sums are only rational for even orders")
    weight = Fraction(1, len(letters) ** (n // 2))
    total = sum((k.kappa((x,) * n) for x in letters), start=k.zero())
    total_prime = sum((k.kappa_prime((x,) * n) for x in letters), start=k.zero())
    if not k.exact:
        return total * float(weight), total_prime * float(weight)
    return total * weight, total_prime * weight


# -- products of free families ----------------------------------------------------------


def _phi_by_blocks(
    f: InfFunctional, letters: Word, blocks: Sequence[Sequence[int]], value: Callable[[Word], tuple[Scalar, Scalar]]
) -> tuple[Scalar, Scalar]:
    return _leibniz([value(_sub(letters, block)) for block in blocks], f.zero())


def inf_free_alternating_product(f: InfFunctional, a_word: Sequence[str], b_word: Sequence[str]) -> tuple[Scalar, Scalar]:
    """(φ, φ′)(a₁b₁⋯aₙbₙ) for {a} and {b} infinitesimally free.

    φ  = Σ_{π∈NC(n)} κ_π(a) φ_{K(π)}(b)
    φ′ = Σ_{π∈NC(n)} κ_π(a) ∂φ_{K(π)}(b) + ∂κ_π(a) φ_{K(π)}(b)
    """
    a_word, b_word = tuple(a_word), tuple(b_word)
    if len(a_word) != len(b_word) or not a_word:
        raise InputValidationError("a and b words must be nonempty and of equal length")
    solver = _CumulantSolver(f)
    phi_total: Scalar = f.zero()
    prime_total: Scalar = f.zero()
    for pi in enumerate_noncrossing(len(a_word)):
        kappa, kappa_prime = _phi_by_blocks(f, a_word, pi.blocks, solver)
        phi_b, phi_b_prime = _phi_by_blocks(
            f, b_word, kreweras(pi).blocks, lambda w: (f.phi(w), f.phi_prime(w))
        )
        phi_total += kappa * phi_b
        prime_total += kappa * phi_b_prime + kappa_prime * phi_b
    return phi_total, prime_total


def interleave(a_word: Sequence[str], b_word: Sequence[str]) -> Word:
    return tuple(letter for pair in zip(a_word, b_word) for letter in pair)

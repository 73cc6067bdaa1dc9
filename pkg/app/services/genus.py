"""Exact 1/N expansions of GOE and complex Wishart moments.

GOE: E tr(X_{i₁}⋯X_{iₙ}) is a sum over pairings π ≤ ker(i) and a through/non-
through choice per pair, each term contributing N^{#(γδγ⁻¹ ∨ ρδ) − (n/2+1)}.
Summing over the 2^{n/2} per-pair sign classes replaces the full sum over sign
patterns ε ∈ Z₂ⁿ, whose 2^{n/2} multiplicity cancels the 2^{−n/2} prefactor.

Wishart: μ_N(Y_{i₁}⋯Y_{iₙ}) = Σ_{π∈S_n, π≤ker(i)} M^{#(π)} N^{#(π⁻¹γ)−(n+1)}.
"""

from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction
from itertools import permutations, product
from typing import Iterator

from app.core.config import enforce_cap
from app.core.errors import InputValidationError
from app.models.laurent import LaurentPoly
from app.models.permutation import Permutation, SignPattern, delta, embed_signed, gamma
from app.models.words import ColorWord
from app.services.noncrossing import enumerate_noncrossing, iter_pairings
from app.services.perm_core import boundary_involution, join, pairing_join_count, rho_delta_images

logger = logging.getLogger(__name__)


def _color_respecting_pairings(colors: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    """Pairings of positions 1..n pairing equal colors only."""
    classes: dict[int, list[int]] = {}
    for position, color in enumerate(colors, start=1):
        classes.setdefault(color, []).append(position)
    if any(len(points) % 2 for points in classes.values()):
        return
    per_class = [list(iter_pairings(points)) for points in classes.values()]
    for choice in product(*per_class):
        pairs = [pair for part in choice for pair in part]
        yield sorted(pairs)


def wick_exponent_counts(n: int, pairings: Iterator[list[tuple[int, int]]]) -> Counter[int]:
    """exponent of N -> number of (π, through-flags) terms."""
    boundary = boundary_involution(n)
    offset = n // 2 + 1
    counts: Counter[int] = Counter()
    for pairs in pairings:
        for flags in product((False, True), repeat=len(pairs)):
            loops = pairing_join_count(boundary, rho_delta_images(n, pairs, list(flags)))
            counts[loops - offset] += 1
    return counts


def goe_moment_poly(n: int) -> LaurentPoly:
    """E(tr Xⁿ) for the N×N GOE as an exact polynomial in N⁻¹."""
    if n < 1:
        raise InputValidationError("n must be at least 1")
    enforce_cap("n", n, "goe_max_n")
    if n % 2:
        return LaurentPoly.zero()
    logger.info("GOE Wick sum for n=%d", n)
    counts = wick_exponent_counts(n, iter_pairings(list(range(1, n + 1))))
    return LaurentPoly.from_counts({(e,): c for e, c in counts.items()})


def goe_infinitesimal_moment(n: int) -> Fraction:
    """m′ₙ: the N⁻¹ coefficient of E(tr Xⁿ)."""
    return goe_moment_poly(n).coefficient(-1)


def goe_limit_moment(n: int) -> Fraction:
    return goe_moment_poly(n).coefficient(0)


def goe_mixed_moment_poly(word: ColorWord) -> LaurentPoly:
    """E tr(X_{i₁}⋯X_{iₙ}) for independent GOEs, pairings restricted to equal colors."""
    if word.has_transpose():
        raise InputValidationError("GOE matrices are symmetric; transpose marks are not allowed")
    n = len(word)
    enforce_cap("word length", n, "colored_max_n")
    if n % 2:
        return LaurentPoly.zero()
    counts = wick_exponent_counts(n, _color_respecting_pairings(word.colors))
    return LaurentPoly.from_counts({(e,): c for e, c in counts.items()})


def goe_sum_moment_poly(n: int) -> LaurentPoly:
    """E tr(((X+Y)/√2)ⁿ) expanded multilinearly over the 2ⁿ words in X, Y."""
    enforce_cap("n", n, "colored_max_n")
    total = LaurentPoly.zero()
    for colors in product((1, 2), repeat=n):
        total = total + goe_mixed_moment_poly(ColorWord.of(colors))
    return total * Fraction(1, 2 ** (n // 2)) if n % 2 == 0 else LaurentPoly.zero()


def goe_sum_invariance_check(n: int) -> bool:
    """(X+Y)/√2 is again a GOE: its expansion equals goe_moment_poly(n)."""
    return goe_sum_moment_poly(n) == goe_moment_poly(n)


def goe_genus_profile(n: int) -> dict[str, dict[int, int]]:
    """Term counts per exponent, split into sign-alternating and other terms.

    Sign-alternating means ε_r = −ε_s on every pair, i.e. no through strings;
    these terms only reach even powers N^{−2g}.
    """
    if n < 1:
        raise InputValidationError("n must be at least 1")
    enforce_cap("n", n, "goe_max_n")
    boundary = boundary_involution(n)
    offset = n // 2 + 1
    alternating: Counter[int] = Counter()
    mixed: Counter[int] = Counter()
    for pairs in iter_pairings(list(range(1, n + 1))):
        for flags in product((False, True), repeat=len(pairs)):
            exponent = pairing_join_count(boundary, rho_delta_images(n, pairs, list(flags))) - offset
            (mixed if any(flags) else alternating)[exponent] += 1
    return {
        "alternating": dict(sorted(alternating.items(), reverse=True)),
        "other": dict(sorted(mixed.items(), reverse=True)),
    }


def goe_full_sign_sum(n: int) -> LaurentPoly:
    """Reference path: the unfactorized double sum over π ∈ P₂(n) and ε ∈ Z₂ⁿ.

    Exponent #(εγδγ⁻¹ε ∨ πδπδ) − (n/2+1), weight 2^{−n/2}; kept for cross-checks
    of the factorized sum at small n.
    """
    if n < 1:
        raise InputValidationError("n must be at least 1")
    enforce_cap("n", n, "goe_max_n")
    if n % 2:
        return LaurentPoly.zero()
    g = gamma(n, signed=True)
    d = delta(n)
    boundary = g * d * g.inverse()
    counts: Counter[int] = Counter()
    for pairs in iter_pairings(list(range(1, n + 1))):
        pi = embed_signed(Permutation.from_cycles(n, pairs, signed=False))
        pdpd = pi * d * pi * d
        for signs in product((1, -1), repeat=n):
            eps = SignPattern(signs).as_permutation()
            blocks = join(eps * boundary * eps, pdpd).block_count()
            counts[blocks - (n // 2 + 1)] += 1
    weight = Fraction(1, 2 ** (n // 2))
    return LaurentPoly.from_counts({(e,): c * weight for e, c in counts.items()})


# -- complex Wishart --------------------------------------------------------------


def _color_respecting_permutations(colors: tuple[int, ...]) -> Iterator[list[int]]:
    """Slot arrays of π ∈ S_n with every cycle inside one color class."""
    classes: dict[int, list[int]] = {}
    for slot, color in enumerate(colors):
        classes.setdefault(color, []).append(slot)
    groups = list(classes.values())
    for choice in product(*(permutations(group) for group in groups)):
        images = [0] * len(colors)
        for group, image in zip(groups, choice):
            for source, target in zip(group, image):
                images[source] = target
        yield images


def _slot_cycle_count(images: list[int]) -> int:
    seen = bytearray(len(images))
    count = 0
    for start in range(len(images)):
        if seen[start]:
            continue
        count += 1
        slot = start
        while not seen[slot]:
            seen[slot] = 1
            slot = images[slot]
    return count


def wishart_moment_poly(word: ColorWord) -> LaurentPoly:
    """μ_N(Y_{i₁}⋯Y_{iₙ}) for independent complex Wisharts (1/N)G*G, G of size M×N."""
    if word.has_transpose():
        raise InputValidationError("transpose marks are not supported for Wishart words")
    n = len(word)
    enforce_cap("word length", n, "wishart_max_n")
    counts: Counter[tuple[int, int]] = Counter()
    gamma_images = [(slot + 1) % n for slot in range(n)]
    for pi in _color_respecting_permutations(word.colors):
        inverse = [0] * n
        for slot, image in enumerate(pi):
            inverse[image] = slot
        kreweras = [inverse[gamma_images[slot]] for slot in range(n)]
        counts[(_slot_cycle_count(pi), _slot_cycle_count(kreweras) - (n + 1))] += 1
    return LaurentPoly.from_counts(dict(counts), ("M", "N"))


def wishart_limits(word: ColorWord, c: Fraction | int, c_prime: Fraction | int) -> tuple[Fraction, Fraction]:
    """(μ, μ′): Σ_{π∈NC(n), π≤ker} c^{#π} and Σ c′·#π·c^{#π−1}."""
    c, c_prime = Fraction(c), Fraction(c_prime)
    if c <= 0:
        raise InputValidationError("c must be positive")
    kernel = word.kernel()
    limit = Fraction(0)
    infinitesimal = Fraction(0)
    for pi in enumerate_noncrossing(len(word)):
        if not pi <= kernel:
            continue
        blocks = pi.block_count()
        limit += c**blocks
        infinitesimal += c_prime * blocks * c ** (blocks - 1)
    return limit, infinitesimal


def wishart_limit_extraction(word: ColorWord, c: Fraction | int, c_prime: Fraction | int) -> tuple[Fraction, Fraction]:
    """N⁰ and N⁻¹ coefficients of wishart_moment_poly at M = cN + c′."""
    poly = wishart_moment_poly(word).substitute_m(Fraction(c), Fraction(c_prime))
    return poly.coefficient(0), poly.coefficient(-1)


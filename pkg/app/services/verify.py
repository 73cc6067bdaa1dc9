"""Verification suites tying the engines together.

Each suite returns a plain dict with a boolean `passed` so the CLI and the HTTP
layer can report it unchanged.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product
from typing import Any, Sequence

from app.core.errors import InputValidationError
from app.models.ensembles import ConstantEnsemble, RankOneEnsemble, TiledEnsemble
from app.models.functional import InfFunctional, Word
from app.models.words import ColorWord
from app.services.cumulants import (
    check_inf_freeness,
    free_prediction_sum_cumulant,
    inf_free_alternating_product,
    interleave,
    moments_to_cumulants,
    normalized_sum_cumulant,
)
from app.services.genus import goe_mixed_moment_poly, wishart_limit_extraction, wishart_limits
from app.services.matrix_lab import (
    ensemble_word_expectation_poly,
    ladder_expectation_fit,
    n_ladder,
    universal_rule_rhs,
    wick_trace_terms,
)

logger = logging.getLogger(__name__)

TWO_LETTERS = ("x", "y")


def _words(letters: Sequence[str], order: int) -> list[Word]:
    return [w for length in range(1, order + 1) for w in product(letters, repeat=length)]


def _colors(word: Word, letters: Sequence[str]) -> ColorWord:
    return ColorWord.of([letters.index(letter) + 1 for letter in word])


# -- limit functionals ------------------------------------------------------------------


def goe_limit_functional(order: int, letters: Sequence[str] = TWO_LETTERS) -> InfFunctional:
    """(φ, φ′) of independent GOEs: the N⁰ and N⁻¹ coefficients of the colored expansion."""
    values = {}
    for word in _words(letters, order):
        poly = goe_mixed_moment_poly(_colors(word, letters))
        values[word] = (poly.coefficient(0), poly.coefficient(-1))
    return InfFunctional(order, values)


def wishart_limit_functional(
    c: Fraction | int, c_prime: Fraction | int, order: int, letters: Sequence[str] = TWO_LETTERS
) -> InfFunctional:
    values = {word: wishart_limits(_colors(word, letters), c, c_prime) for word in _words(letters, order)}
    return InfFunctional(order, values)


# -- suites ---------------------------------------------------------------------------------


def build_family(name: str, lam: Any = 2, letters: int = 1) -> ConstantEnsemble:
    if name == "rank1":
        return RankOneEnsemble(tuple(Fraction(lam) + k for k in range(letters)))
    if name == "tiled":
        patterns = [((1, k + 1), (0, -1)), ((2, 0), (1, 1)), ((0, 1), (1, 0))]
        return TiledEnsemble(tuple(patterns[k % len(patterns)] for k in range(letters)))
    raise InputValidationError(f"unknown family {name!r}; expected rank1 or tiled")


def verify_universal_rule(
    family: ConstantEnsemble, n: int, assignment: Sequence[int] | None = None, ladder: Sequence[int] | None = None
) -> dict[str, Any]:
    """N⁻¹ coefficient of E tr(XA₁⋯XAₙ) against the limit-data right-hand side."""
    letters = tuple(assignment) if assignment is not None else (1,) * n
    if len(letters) != n:
        raise InputValidationError("assignment length must equal n")
    rhs = universal_rule_rhs(family, letters)
    poly = ensemble_word_expectation_poly(family, letters)
    exact = poly.coefficient(-1)
    ladder = list(ladder) if ladder is not None else n_ladder(n // 2 + 2, step=getattr(family, "block", 1))
    fitted_value = ladder_expectation_fit(family, letters, ladder=ladder)[1]
    passed = exact == rhs == fitted_value
    logger.info("universal rule n=%d: rhs=%s exact=%s fitted=%s", n, rhs, exact, fitted_value)
    return {
        "suite": "universal-rule",
        "family": family.to_dict(),
        "n": n,
        "assignment": list(letters),
        "rhs": rhs,
        "exact_coefficient": exact,
        "ladder": ladder,
        "fitted_coefficient": fitted_value,
        "expectation": poly.to_dict(),
        "passed": passed,
    }


def verify_non_freeness(n: int = 4) -> dict[str, Any]:
    """Independent GOEs: κ′ₙ of (x+y)/√2 against what infinitesimal freeness would give."""
    if n % 2 or n < 2:
        raise InputValidationError("n must be an even number ≥ 2")
    f = goe_limit_functional(n)
    cumulants = moments_to_cumulants(f)
    actual = normalized_sum_cumulant(cumulants, TWO_LETTERS, n)
    predicted = free_prediction_sum_cumulant(cumulants, TWO_LETTERS, n)
    second = normalized_sum_cumulant(cumulants, TWO_LETTERS, 2)
    report = check_inf_freeness(f, [("x",), ("y",)], order=n)
    return {
        "suite": "non-freeness",
        "n": n,
        "kappa_prime_actual": actual[1],
        "kappa_prime_free_prediction": predicted[1],
        "kappa_2_of_sum": second[0],
        "mixed_violations": len(report.violations),
        "passed": actual[1] != predicted[1] and not report.is_free and second[0] == 1,
    }


def verify_wishart_freeness(c: Any = 2, c_prime: Any = 3, order: int = 6) -> dict[str, Any]:
    """Symbolic N⁰/N⁻¹ extraction against the limit sums, then vanishing mixed cumulants."""
    c, c_prime = Fraction(c), Fraction(c_prime)
    mismatches = []
    for word in _words(TWO_LETTERS, order):
        colors = _colors(word, TWO_LETTERS)
        if wishart_limit_extraction(colors, c, c_prime) != wishart_limits(colors, c, c_prime):
            mismatches.append(" ".join(word))
    f = wishart_limit_functional(c, c_prime, order)
    report = check_inf_freeness(f, [("x",), ("y",)], order=order)
    centered_gap = _alternating_product_gap(f, order)
    return {
        "suite": "wishart-freeness",
        "c": c,
        "c_prime": c_prime,
        "order": order,
        "extraction_mismatches": mismatches,
        "freeness": report.to_dict(),
        "product_rule_gap": centered_gap,
        "passed": not mismatches and report.is_free and centered_gap == 0,
    }


def _alternating_product_gap(f: InfFunctional, order: int) -> Fraction:
    """Σ |stored − predicted| of (φ, φ′) on x y x y ⋯ under the free product rule."""
    gap = Fraction(0)
    for half in range(1, order // 2 + 1):
        a_word, b_word = ("x",) * half, ("y",) * half
        phi, phi_prime = inf_free_alternating_product(f, a_word, b_word)
        word = interleave(a_word, b_word)
        gap += abs(Fraction(phi) - Fraction(f.phi(word))) + abs(Fraction(phi_prime) - Fraction(f.phi_prime(word)))
    return gap


def wick_profile(n: int) -> dict[int, int]:
    """Number of Wick terms per power of N for a length-n word with constant matrices."""
    counts: dict[int, int] = {}
    for exponent, _ in wick_trace_terms(n):
        counts[exponent] = counts.get(exponent, 0) + 1
    return dict(sorted(counts.items(), reverse=True))

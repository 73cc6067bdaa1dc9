"""Finite-N expectations E tr(XA₁XA₂⋯XAₙ) over the GOE with constant matrices A_k.

Wick's formula with E(X_ij X_kl) = (δ_ik δ_jl + δ_il δ_jk)/N glues the index
slots of the word; the glued slots close the A's into cycles, each read as a
trace with A_k transposed where the cycle runs against it. A term with c cycles
carries N^{c − 1 − n/2} times a product of normalized traces.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

import numpy as np
from sympy import Poly, Rational, Symbol, interpolate

from app.core.config import enforce_cap
from app.core.errors import DegreeMismatchError, InputValidationError
from app.models.ensembles import ConstantEnsemble, MultiTrace, TraceWord
from app.models.laurent import LaurentPoly
from app.models.permutation import Permutation, SignPattern
from app.services.noncrossing import enumerate_nc2delta, enumerate_nc_pairings, iter_pairings, k_delta, kreweras_permutation

logger = logging.getLogger(__name__)


# -- traces ---------------------------------------------------------------------------


def _check_matrices(matrices: Sequence[np.ndarray]) -> int:
    if not matrices:
        raise InputValidationError("at least one matrix is required")
    N = matrices[0].shape[0]
    for a in matrices:
        if a.ndim != 2 or a.shape != (N, N):
            raise DegreeMismatchError(f"all matrices must be {N}×{N}, got {a.shape}")
    return N


def word_trace(word: TraceWord, matrices: Sequence[np.ndarray], normalized: bool = True) -> Any:
    """Tr (or tr) of A_{k₁}^{t₁}⋯A_{k_m}^{t_m}; letters index `matrices` from 1."""
    product = None
    for letter, transposed in word:
        a = matrices[letter - 1]
        a = a.T if transposed else a
        product = a if product is None else product.dot(a)
    if product is None:
        raise InputValidationError("empty trace word")
    value = np.trace(product)
    return value / product.shape[0] if normalized else value


def multi_trace(sigma: Permutation, eta: SignPattern, matrices: Sequence[np.ndarray], normalized: bool = True) -> Any:
    """Tr_σ(A^η) = Π over cycles c of σ of Tr(A_{c₁}^{η} A_{c₂}^{η} ⋯)."""
    pattern = MultiTrace(sigma, eta, normalized)
    _check_matrices(matrices)
    if len(matrices) != sigma.n:
        raise DegreeMismatchError(f"σ acts on {sigma.n} points but {len(matrices)} matrices were given")
    total: Any = 1
    for word in pattern.words():
        total = total * word_trace(word, matrices, normalized)
    return total


# -- Wick expansion -------------------------------------------------------------------


def _cycle_words(n: int, partner: list[int]) -> list[TraceWord]:
    """Close the A's into cycles; slot 2k is i_{k+1}, slot 2k+1 is j_{k+1} (0-based k).

    A_k runs from its row slot j_k to its column slot i_{k+1}.
    """
    seen = [False] * n
    words: list[TraceWord] = []
    for start in range(n):
        if seen[start]:
            continue
        word: list[tuple[int, bool]] = []
        k, forward = start, True
        while not seen[k]:
            seen[k] = True
            word.append((k + 1, not forward))
            slot = partner[2 * ((k + 1) % n) if forward else 2 * k + 1]
            if slot % 2:
                k, forward = (slot - 1) // 2, True
            else:
                k, forward = (slot // 2 - 1) % n, False
        words.append(tuple(word))
    return words


@lru_cache(maxsize=None)
def wick_trace_terms(n: int) -> tuple[tuple[int, tuple[TraceWord, ...]], ...]:
    """(exponent of N, cycle words) for every (pairing, straight/twisted) Wick term."""
    if n % 2:
        return ()
    terms: list[tuple[int, tuple[TraceWord, ...]]] = []
    for pairs in iter_pairings(list(range(n))):
        for mask in range(2 ** len(pairs)):
            partner = [0] * (2 * n)
            for bit, (r, s) in enumerate(pairs):
                ir, jr, is_, js = 2 * r, 2 * r + 1, 2 * s, 2 * s + 1
                if mask >> bit & 1:
                    glue = ((ir, is_), (jr, js))
                else:
                    glue = ((ir, js), (jr, is_))
                for a, b in glue:
                    partner[a], partner[b] = b, a
            words = _cycle_words(n, partner)
            terms.append((len(words) - 1 - n // 2, tuple(words)))
    logger.debug("wick expansion for n=%d has %d terms", n, len(terms))
    return tuple(terms)


def _check_word_length(n: int) -> None:
    if n < 1:
        raise InputValidationError("the word needs at least one matrix")
    enforce_cap("word length", n, "lab_max_n")


def goe_word_expectation_terms(matrices: Sequence[np.ndarray]) -> dict[int, Any]:
    """exponent e -> Σ Π tr over the Wick terms carrying N^e; E = Σ N^e · value."""
    _check_matrices(matrices)
    n = len(matrices)
    _check_word_length(n)
    grouped: dict[int, Any] = defaultdict(int)
    for exponent, words in wick_trace_terms(n):
        value: Any = 1
        for word in words:
            value = value * word_trace(word, matrices)
        grouped[exponent] = grouped[exponent] + value
    return dict(sorted(grouped.items(), reverse=True))


def exact_goe_word_expectation(matrices: Sequence[np.ndarray]) -> Any:
    """E tr(XA₁⋯XAₙ) for the N×N GOE; exact when the matrices hold Fractions."""
    N = _check_matrices(matrices)
    total: Any = 0
    scale = Fraction(1, N) if matrices[0].dtype == object else 1.0 / N
    for exponent, value in goe_word_expectation_terms(matrices).items():
        total = total + value * scale ** (-exponent)
    return total


def nc2_trace_sum(matrices: Sequence[np.ndarray]) -> Any:
    """Σ_{π∈NC₂(n)} tr_{K(π)}(A₁, …, Aₙ)."""
    n = len(matrices)
    total: Any = 0
    for pi in enumerate_nc_pairings(n):
        k = kreweras_permutation(pi)
        total = total + multi_trace(k, SignPattern.all_positive(n), matrices)
    return total


def nc2delta_trace_sum(matrices: Sequence[np.ndarray]) -> Any:
    """Σ_{ρ∈NC₂^δ(n,−n)} tr_{K^δ(ρ)}(A₁, …, Aₙ)."""
    n = len(matrices)
    total: Any = 0
    for rho in enumerate_nc2delta(n):
        pattern = k_delta(rho)
        total = total + multi_trace(pattern.sigma, pattern.eta, matrices)
    return total


# -- ensembles ------------------------------------------------------------------------


def _resolve(family: ConstantEnsemble, assignment: Sequence[int] | None, n: int | None) -> tuple[int, ...]:
    if assignment is None:
        if n is None:
            raise InputValidationError("give either an assignment of letters or n")
        assignment = (1,) * n
    assignment = tuple(assignment)
    for letter in assignment:
        family._check_letter(letter)
    _check_word_length(len(assignment))
    return assignment


def _relabel(word: TraceWord, assignment: tuple[int, ...]) -> TraceWord:
    return tuple((assignment[k - 1], transposed) for k, transposed in word)


def ensemble_word_expectation_poly(
    family: ConstantEnsemble, assignment: Sequence[int] | None = None, n: int | None = None
) -> LaurentPoly:
    """E tr(XA₁⋯XAₙ) as an exact polynomial in N⁻¹, A_k the family's matrix for letter assignment[k]."""
    letters = _resolve(family, assignment, n)
    total = LaurentPoly.zero()
    for exponent, words in wick_trace_terms(len(letters)):
        term = LaurentPoly.from_counts({(exponent,): 1})
        for word in words:
            term = term * family.trace_poly(_relabel(word, letters))
        total = total + term
    return total


def n_ladder(points: int, step: int = 1) -> list[int]:
    """step, 2·step, …, points·step."""
    return [step * k for k in range(1, points + 1)]


def ladder_expectation_fit(
    family: ConstantEnsemble, assignment: Sequence[int] | None = None, n: int | None = None, ladder: Sequence[int] | None = None
) -> list[Fraction]:
    """Coefficients c₀, c₁, … of the N⁻¹ polynomial through exact finite-N evaluations.

    A word of length n has degree at most n/2 + 1 in N⁻¹, so n/2 + 2 distinct
    sizes pin the polynomial down; n = 4 needs four. Extra sizes must agree
    with it exactly.
    """
    letters = _resolve(family, assignment, n)
    degree = len(letters) // 2 + 1
    if ladder is None:
        ladder = n_ladder(degree + 1, step=getattr(family, "block", 1))
    ladder = list(ladder)
    if len(set(ladder)) < degree + 1:
        raise InputValidationError(
            f"a word of length {len(letters)} has degree {degree} in N⁻¹, so the ladder needs at least "
            f"{degree + 1} distinct sizes; got {ladder}"
        )
    x = Symbol("x")
    points = []
    for N in sorted(set(ladder)):
        matrices = [family.matrix(letter, N) for letter in letters]
        value = exact_goe_word_expectation(matrices)
        points.append((Rational(1, N), Rational(value.numerator, value.denominator)))
    fitted = Poly(interpolate(points, x), x)
    coefficients = [Fraction(int(c.p), int(c.q)) for c in reversed(fitted.all_coeffs())]
    coefficients += [Fraction(0)] * (degree + 1 - len(coefficients))
    if any(coefficients[degree + 1 :]):
        raise DegreeMismatchError(f"ladder values over N={ladder} are not a polynomial of degree {degree} in N⁻¹")
    logger.info("ladder fit over N=%s: %s", ladder, coefficients[:2])
    return coefficients[: degree + 1]


def _partial_phi(family: ConstantEnsemble, words: Sequence[TraceWord]) -> Fraction:
    """∂φ over the blocks: Σ_V φ′(V) Π_{W≠V} φ(W)."""
    phis = [family.phi(word) for word in words]
    total = Fraction(0)
    for index, word in enumerate(words):
        rest = Fraction(1)
        for other, value in enumerate(phis):
            if other != index:
                rest *= value
        total += family.phi_prime(word) * rest
    return total


def universal_rule_rhs(family: ConstantEnsemble, assignment: Sequence[int] | None = None, n: int | None = None) -> Fraction:
    """Σ_{π∈NC₂(n)} ∂φ_{K(π)} + Σ_{ρ∈NC₂^δ(n,−n)} φ_{K^δ(ρ)} for the family's limit data."""
    letters = _resolve(family, assignment, n)
    size = len(letters)
    if size % 2:
        return Fraction(0)
    first = Fraction(0)
    for pi in enumerate_nc_pairings(size):
        cycles = kreweras_permutation(pi).cycles()
        words = [_relabel(tuple((k, False) for k in cycle), letters) for cycle in cycles]
        first += _partial_phi(family, words)
    second = Fraction(0)
    for rho in enumerate_nc2delta(size):
        value = Fraction(1)
        for word in k_delta(rho).trace_words():
            value *= family.phi(_relabel(word, letters))
        second += value
    return first + second

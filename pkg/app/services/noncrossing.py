"""Non-crossing combinatorics on the disc and on the annulus.

Diagram classes: P₂(n), NC(n), NC₂(n), the half-pairings NCC₂(n) and the
symmetric annular pairings NC₂^δ(n,−n). Kreweras complements (disc and
annular), the Möbius function of NC(n) and the annular permutation test.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import product
from math import comb
from typing import Any, Callable, Iterator, Sequence

from app.core.config import enforce_cap, settings
from app.core.errors import InputValidationError, NotComparableError, NotNonCrossingError
from app.models.diagrams import AnnularPairing, HalfPairing, KDeltaComplement
from app.models.partition import SetPartition
from app.models.permutation import Permutation, SignPattern, delta, gamma, label_key
from app.services.perm_core import (
    boundary_involution,
    lift_pairing,
    pairing_join_count,
    rho_delta_images,
)

logger = logging.getLogger(__name__)


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


# -- raw generators ------------------------------------------------------------


def iter_pairings(points: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    """All pairings of points, lexicographic: the first point is paired first."""
    if not points:
        yield []
        return
    if len(points) % 2:
        return
    first = points[0]
    for index in range(1, len(points)):
        rest = [*points[1:index], *points[index + 1 :]]
        for tail in iter_pairings(rest):
            yield [(first, points[index]), *tail]


def iter_noncrossing(points: Sequence[int], block_ok: Callable[[int], bool] = lambda size: True) -> Iterator[list[tuple[int, ...]]]:
    """Non-crossing partitions of an ordered point list whose block sizes pass block_ok."""
    if not points:
        yield []
        return

    def grow(block: list[int], last: int) -> Iterator[list[tuple[int, ...]]]:
        if block_ok(len(block)):
            for tail in iter_noncrossing(points[last + 1 :], block_ok):
                yield [tuple(block), *tail]
        for nxt in range(last + 1, len(points)):
            for gap in iter_noncrossing(points[last + 1 : nxt], block_ok):
                for rest in grow([*block, points[nxt]], nxt):
                    yield [*gap, *rest]

    yield from grow([points[0]], 0)


def _partition_key(p: SetPartition) -> tuple[tuple[int, ...], ...]:
    return p.blocks


def _permutation_key(p: Permutation) -> tuple[tuple[tuple[int, int], ...], ...]:
    return tuple(tuple(label_key(label) for label in cycle) for cycle in p.cycles())


# -- disc --------------------------------------------------------------------


def enumerate_pairings(n: int) -> list[SetPartition]:
    """P₂(n); empty for odd n."""
    if n < 0:
        raise InputValidationError("n must be non-negative")
    enforce_cap("n", n, "enumeration_max_n")
    return [SetPartition(n, tuple(pairs)) for pairs in iter_pairings(list(range(1, n + 1)))]


@lru_cache(maxsize=32)
def enumerate_noncrossing(n: int) -> tuple[SetPartition, ...]:
    """NC(n) in lexicographic order of canonical block lists."""
    if n < 0:
        raise InputValidationError("n must be non-negative")
    enforce_cap("n", n, "enumeration_max_n")
    found = [SetPartition(n, tuple(blocks)) for blocks in iter_noncrossing(list(range(1, n + 1)))]
    return tuple(sorted(found, key=_partition_key))


def enumerate_nc_pairings(n: int) -> list[SetPartition]:
    """NC₂(n)."""
    if n < 0:
        raise InputValidationError("n must be non-negative")
    enforce_cap("n", n, "enumeration_max_n")
    found = [SetPartition(n, tuple(blocks)) for blocks in iter_noncrossing(list(range(1, n + 1)), lambda size: size == 2)]
    return sorted(found, key=_partition_key)


def is_noncrossing(p: SetPartition) -> bool:
    """#(π) + #(π⁻¹γ) = n + 1, π the blocks read as increasing cycles."""
    if p.signed:
        raise InputValidationError("non-crossing test is defined on [n]")
    if p.n == 0:
        return True
    pi = p.to_permutation()
    return pi.cycle_count() + (pi.inverse() * gamma(p.n)).cycle_count() == p.n + 1


def kreweras_permutation(p: SetPartition) -> Permutation:
    """K(π) = π⁻¹γ as a permutation (for pairings this is πγ)."""
    if not is_noncrossing(p):
        raise NotNonCrossingError(f"{p} is not non-crossing")
    pi = p.to_permutation()
    return pi.inverse() * gamma(p.n)


def kreweras(p: SetPartition) -> SetPartition:
    return SetPartition.from_permutation(kreweras_permutation(p))


# -- Möbius function -----------------------------------------------------------


def _signed_catalan(size: int) -> int:
    return (-1) ** (size - 1) * catalan(size - 1)


def mobius_to_full(p: SetPartition) -> int:
    """μ(p, 1ₙ) = ∏_{V∈K(p)} (−1)^{|V|−1} C_{|V|−1}."""
    result = 1
    for block in kreweras(p).blocks:
        result *= _signed_catalan(len(block))
    return result


def _mobius_factorized(p: SetPartition, q: SetPartition) -> int:
    result = 1
    for block in q.blocks:
        result *= mobius_to_full(p.restrict(block))
    return result


def _mobius_brute(p: SetPartition, q: SetPartition) -> int:
    interval = [s for s in enumerate_noncrossing(p.n) if p <= s and s <= q]
    interval.sort(key=lambda s: -s.block_count())
    values: dict[SetPartition, int] = {}
    for s in interval:
        if s == p:
            values[s] = 1
            continue
        values[s] = -sum(value for t, value in values.items() if t <= s)
    return values[q]


def mobius_nc(p: SetPartition, q: SetPartition) -> int:
    """Möbius function of the interval [p, q] in NC(n)."""
    for part in (p, q):
        if not is_noncrossing(part):
            raise NotNonCrossingError(f"{part} is not non-crossing")
    if not p <= q:
        raise NotComparableError(f"{p} is not below {q}")
    if p.n <= settings.mobius_brute_max_n:
        return _mobius_brute(p, q)
    return _mobius_factorized(p, q)


# -- half-pairings ---------------------------------------------------------------


def enumerate_half_pairings(n: int) -> list[HalfPairing]:
    """NCC₂(n); empty for odd n."""
    if n < 0:
        raise InputValidationError("n must be non-negative")
    enforce_cap("n", n, "enumeration_max_n")
    if n % 2 or n == 0:
        return []
    found: list[HalfPairing] = []
    for blocks in iter_noncrossing(list(range(1, n + 1)), lambda size: size % 2 == 0):
        big = [block for block in blocks if len(block) > 2]
        if len(big) > 1:
            continue
        base = SetPartition(n, tuple(blocks))
        for special in big or base.blocks:
            found.append(HalfPairing(base, special))
    found.sort(key=lambda h: (h.base.blocks, h.special))
    return found


def half_pairing_to_annular(h: HalfPairing) -> AnnularPairing:
    """Through strings wire i_j to -i_{j+l} across the special block of size 2l."""
    special = sorted(h.special)
    half = len(special) // 2
    mapping: dict[int, int] = {}
    for j in range(half):
        r, s = special[j], special[j + half]
        mapping.update({r: -s, -s: r, -r: s, s: -r})
    for block in h.base.blocks:
        if block == h.special:
            continue
        r, s = block
        mapping.update({r: s, s: r, -r: -s, -s: -r})
    return AnnularPairing(Permutation.from_mapping(h.n, mapping, True))


def annular_to_half_pairing(rho: AnnularPairing) -> HalfPairing:
    through = rho.through_strings()
    if not through:
        raise InputValidationError("an annular pairing without through strings has no half-pairing")
    special = tuple(sorted({abs(label) for pair in through for label in pair}))
    pairs = [(r, s) for r, s in rho.pairs() if r > 0 and s > 0]
    return HalfPairing(SetPartition(rho.n, (special, *pairs)), special)


# -- annular pairings --------------------------------------------------------------


def is_nc2delta(rho: AnnularPairing) -> bool:
    """Membership in NC₂^δ(n,−n): no (r,−r), a through string, #(γδγ⁻¹δρ) = n."""
    n = rho.n
    if any(r == -s for r, s in rho.pairs()):
        return False
    if not rho.through_strings():
        return False
    g = gamma(n, signed=True)
    d = delta(n)
    return (g * d * g.inverse() * d * rho.rho).cycle_count() == n


def iter_nc2delta_lifts(n: int) -> Iterator[tuple[list[tuple[int, int]], list[bool]]]:
    """(pairs, through flags) of every member of NC₂^δ(n,−n), by the cycle-count test."""
    if n % 2 or n == 0:
        return
    boundary = boundary_involution(n)
    target = n // 2
    for pairs in iter_pairings(list(range(1, n + 1))):
        for flags in product((False, True), repeat=len(pairs)):
            if not any(flags):
                continue
            through = list(flags)
            if pairing_join_count(boundary, rho_delta_images(n, pairs, through)) == target:
                yield pairs, through


def enumerate_nc2delta(n: int) -> list[AnnularPairing]:
    if n < 0:
        raise InputValidationError("n must be non-negative")
    enforce_cap("n", n, "enumeration_max_n")
    logger.info("enumerating NC2-delta(%d,-%d)", n, n)
    found = [AnnularPairing(lift_pairing(n, pairs, through)) for pairs, through in iter_nc2delta_lifts(n)]
    found.sort(key=lambda rho: _permutation_key(rho.rho))
    logger.info("found %d symmetric annular pairings for n=%d", len(found), n)
    return found


def count_nc2delta(n: int) -> int:
    if n < 0:
        raise InputValidationError("n must be non-negative")
    enforce_cap("n", n, "enumeration_max_n")
    return sum(1 for _ in iter_nc2delta_lifts(n))


def nc2delta_by_through_count(n: int) -> dict[int, int]:
    """k -> number of diagrams with k through strings."""
    if n < 0:
        raise InputValidationError("n must be non-negative")
    enforce_cap("n", n, "enumeration_max_n")
    counts: dict[int, int] = {}
    for _, through in iter_nc2delta_lifts(n):
        k = 2 * sum(through)
        counts[k] = counts.get(k, 0) + 1
    return dict(sorted(counts.items()))


def half_pairing_formula(n: int) -> int:
    """½(2ⁿ − C(n, n/2)) for even n ≥ 2."""
    if n < 0:
        raise InputValidationError("n must be non-negative")
    if n % 2 or n == 0:
        return 0
    return (2**n - comb(n, n // 2)) // 2


# -- K^δ and multi-trace patterns --------------------------------------------------


def _pattern_from_paired_cycles(p: Permutation) -> KDeltaComplement:
    """Split a permutation of [±n] whose cycles pair as c, δc⁻¹δ into (σ, η).

    From each pair the cycle whose least-|label| element is positive is kept.
    """
    n = p.n
    signs = [0] * n
    chosen: list[tuple[int, ...]] = []
    for cycle in p.cycles():
        if len({abs(label) for label in cycle}) != len(cycle):
            raise InputValidationError(f"cycle {cycle} is its own δ-mirror")
        if cycle[0] < 0:
            continue
        chosen.append(tuple(abs(label) for label in cycle))
        for label in cycle:
            signs[abs(label) - 1] = 1 if label > 0 else -1
    if any(sign == 0 for sign in signs):
        raise InputValidationError("cycles of the permutation do not come in δ-mirror pairs")
    return KDeltaComplement(Permutation.from_cycles(n, chosen, signed=False), SignPattern(tuple(signs)))


def k_delta(rho: AnnularPairing | Permutation) -> KDeltaComplement:
    """(σ, η) read off the cycles of δγ⁻¹δργ."""
    r = rho.rho if isinstance(rho, AnnularPairing) else rho
    if not r.signed:
        raise InputValidationError("K^δ needs a pairing of [±n]")
    n = r.n
    g = gamma(n, signed=True)
    d = delta(n)
    return _pattern_from_paired_cycles(d * g.inverse() * d * r * g)


def pairing_trace_pattern(p: Permutation) -> KDeltaComplement:
    """(σ, η) with Σ_{ker(i) ≥ p} a¹_{i₁i₋₁}⋯aⁿ_{iₙi₋ₙ} = Tr_σ(A^η), read off pδ."""
    if not p.signed or not p.is_pairing():
        raise InputValidationError("expected a pairing of [±n]")
    return _pattern_from_paired_cycles(p * delta(p.n))


def mirrored_choice(rho: AnnularPairing | Permutation) -> KDeltaComplement:
    """The complementary representative: the δ-mirror of every cycle chosen by k_delta."""
    pattern = k_delta(rho)
    sigma = pattern.sigma.inverse()
    return KDeltaComplement(sigma, SignPattern(tuple(-sign for sign in pattern.eta.signs)))


# -- annular permutations ------------------------------------------------------------


def annular_gamma(m: int, n: int) -> Permutation:
    """γ_{m,n} = (1,…,m)(m+1,…,m+n)."""
    cycles = [tuple(range(1, m + 1)), tuple(range(m + 1, m + n + 1))]
    return Permutation.from_cycles(m + n, [cycle for cycle in cycles if cycle], signed=False)


def is_snc(p: Permutation, m: int, n: int) -> bool:
    """Non-crossing annular permutation: #(p) + #(p⁻¹γ_{m,n}) = m + n with a through cycle."""
    if p.signed or p.n != m + n:
        raise InputValidationError(f"expected a permutation of [{m + n}]")
    through = any(
        any(label <= m for label in cycle) and any(label > m for label in cycle) for cycle in p.cycles()
    )
    if not through:
        return False
    return p.cycle_count() + (p.inverse() * annular_gamma(m, n)).cycle_count() == m + n


# -- dispatch ------------------------------------------------------------------------

ENUMERATION_KINDS = ("pairings", "nc", "ncc2", "nc2delta")


def enumerate_diagrams(kind: str, n: int) -> list[Any]:
    """P₂(n), NC(n), NCC₂(n) or NC₂^δ(n,−n) by name."""
    if kind == "pairings":
        return enumerate_pairings(n)
    if kind == "nc":
        return list(enumerate_noncrossing(n))
    if kind == "ncc2":
        return list(enumerate_half_pairings(n))
    if kind == "nc2delta":
        return list(enumerate_nc2delta(n))
    raise InputValidationError(f"unknown kind {kind!r}; expected one of {', '.join(ENUMERATION_KINDS)}")


def count_diagrams(kind: str, n: int) -> int:
    if kind == "nc2delta":
        return count_nc2delta(n)
    return len(enumerate_diagrams(kind, n))

"""Permutation algebra used by every diagram formula: composition, cycle
counts, orbit structure, the Euler-characteristic genus and partition joins."""

from __future__ import annotations

import logging

from app.core.errors import DegreeMismatchError, InputValidationError, NonTransitiveError
from app.models.partition import SetPartition
from app.models.permutation import Permutation

logger = logging.getLogger(__name__)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """p∘q: apply q, then p."""
    return p * q


def cycle_count(p: Permutation) -> int:
    return p.cycle_count()


def orbits(*generators: Permutation) -> list[tuple[int, ...]]:
    """Orbits of the group generated by the given permutations, as label tuples."""
    if not generators:
        return []
    first = generators[0]
    for other in generators[1:]:
        if other.n != first.n or other.signed != first.signed:
            raise DegreeMismatchError("generators act on different ground sets")
    parent = list(range(first.size))

    def find(slot: int) -> int:
        while parent[slot] != slot:
            parent[slot] = parent[parent[slot]]
            slot = parent[slot]
        return slot

    for generator in generators:
        for slot, image in enumerate(generator.images):
            parent[find(slot)] = find(image)

    grouped: dict[int, list[int]] = {}
    for slot in range(first.size):
        grouped.setdefault(find(slot), []).append(slot)
    labels = first.labels()
    return [tuple(labels[slot] for slot in group) for group in grouped.values()]


def genus(p: Permutation, q: Permutation) -> int:
    """Genus g with #(p) + #(q p⁻¹) + #(q) = n + 2(1 - g).

    Raises NonTransitiveError when <p, q> has more than one orbit.
    """
    if p.n != q.n or p.signed != q.signed:
        raise DegreeMismatchError("genus needs permutations on the same ground set")
    components = orbits(p, q)
    if len(components) > 1:
        raise NonTransitiveError(components)
    total = p.cycle_count() + (q * p.inverse()).cycle_count() + q.cycle_count()
    surplus = p.size + 2 - total
    if surplus < 0 or surplus % 2:
        # cannot happen for a transitive pair
        raise InputValidationError(f"Euler relation violated: surplus {surplus}")
    return surplus // 2


def join(p: SetPartition | Permutation, q: SetPartition | Permutation) -> SetPartition:
    """Least upper bound in the partition lattice; permutations count by their cycles."""
    left = p if isinstance(p, SetPartition) else SetPartition.from_permutation(p)
    right = q if isinstance(q, SetPartition) else SetPartition.from_permutation(q)
    return left.join(right)


def pairing_join_count(p_images: list[int], q_images: list[int]) -> int:
    """#(p ∨ q) for two fixed-point free involutions given as slot arrays.

    Equals #(pq)/2; walks the alternating loops without building objects.
    """
    size = len(p_images)
    seen = bytearray(size)
    loops = 0
    for start in range(size):
        if seen[start]:
            continue
        loops += 1
        slot = start
        while not seen[slot]:
            seen[slot] = 1
            partner = p_images[slot]
            seen[partner] = 1
            slot = q_images[partner]
    return loops


# -- slot-level helpers for the signed set [±n] ------------------------------
#
# Wick sums touch hundreds of thousands of pairings, so the hot loops work on
# plain slot arrays (label k -> k-1, label -k -> n+k-1) instead of objects.


def signed_slot(n: int, label: int) -> int:
    return label - 1 if label > 0 else n - label - 1


def boundary_involution(n: int) -> list[int]:
    """γδγ⁻¹ on slots: k <-> -(k-1), indices mod n."""
    images = [0] * (2 * n)
    for k in range(1, n + 1):
        previous = n if k == 1 else k - 1
        images[signed_slot(n, k)] = signed_slot(n, -previous)
        images[signed_slot(n, -previous)] = signed_slot(n, k)
    return images


def rho_delta_images(n: int, pairs: list[tuple[int, int]], through: list[bool]) -> list[int]:
    """ρδ on slots for the δ-symmetric lift of a pairing of [n].

    A pair (r, s) lifts to (r, s)(-r, -s), or to the through strings
    (r, -s)(-r, s) when its flag is set. Since ρδ(x) = ρ(-x), the first lift
    gives ρδ = (r, -s)(-r, s) on those points and the second (r, s)(-r, -s).
    """
    images = [0] * (2 * n)
    for (r, s), crossing in zip(pairs, through):
        rp, rm, sp, sm = r - 1, n + r - 1, s - 1, n + s - 1
        if crossing:
            images[rp], images[sp], images[rm], images[sm] = sp, rp, sm, rm
        else:
            images[rp], images[sm], images[rm], images[sp] = sm, rp, sp, rm
    return images


def lift_pairing(n: int, pairs: list[tuple[int, int]], through: list[bool]) -> Permutation:
    """The δ-symmetric pairing ρ of [±n] described by rho_delta_images."""
    mapping: dict[int, int] = {}
    for (r, s), crossing in zip(pairs, through):
        t = -s if crossing else s
        mapping.update({r: t, t: r, -r: -t, -t: -r})
    return Permutation.from_mapping(n, mapping, True)

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.errors import DegreeMismatchError, InputValidationError, NonTransitiveError
from app.models.partition import SetPartition
from app.models.permutation import Permutation, SignPattern, delta, embed_signed, gamma
from app.services.perm_core import compose, cycle_count, genus, join, lift_pairing, orbits, pairing_join_count


def _perm(images):
    return Permutation(len(images), False, tuple(images))


permutations_of_6 = st.permutations(list(range(6))).map(_perm)


def test_cycle_notation_roundtrip():
    p = Permutation.parse("(1,7)(2,3)(4,8)(5,6)")

    assert p.n == 8
    assert p.is_pairing()
    assert p.format() == "(1,7)(2,3)(4,8)(5,6)"
    assert p(7) == 1


def test_signed_cycle_notation():
    rho = Permutation.parse("(1,-7)(-1,7)")

    assert rho.signed
    assert rho.n == 7
    assert rho.format(with_fixed_points=False) == "(1,-7)(-1,7)"
    assert rho(-7) == 1


def test_parse_rejects_garbage():
    with pytest.raises(InputValidationError):
        Permutation.parse("(1,2")
    with pytest.raises(InputValidationError):
        Permutation.parse("(1,2)(2,3)")


def test_compose_applies_right_factor_first():
    p = Permutation.parse("(1,2)", n=3)
    q = Permutation.parse("(2,3)", n=3)

    assert compose(p, q).format(with_fixed_points=False) == "(1,2,3)"
    assert compose(q, p).format(with_fixed_points=False) == "(1,3,2)"


def test_compose_rejects_mismatched_ground_sets():
    with pytest.raises(DegreeMismatchError):
        compose(gamma(3), gamma(4))
    with pytest.raises(DegreeMismatchError):
        compose(gamma(3), gamma(3, signed=True))


def test_delta_and_sign_patterns_commute():
    eta = SignPattern((1, -1, -1, 1))
    d = delta(4)

    assert d * d == Permutation.identity(4, signed=True)
    assert eta.as_permutation() * d == d * eta.as_permutation()


def test_genus_of_pairings_against_long_cycle():
    g = gamma(4)

    assert genus(Permutation.parse("(1,2)(3,4)"), g) == 0
    assert genus(Permutation.parse("(1,4)(2,3)"), g) == 0
    assert genus(Permutation.parse("(1,3)(2,4)"), g) == 1


def test_genus_requires_transitivity():
    with pytest.raises(NonTransitiveError) as info:
        genus(Permutation.identity(3), Permutation.parse("(1,2)", n=3))

    assert len(info.value.orbits) == 2


def test_orbits_and_join():
    p = Permutation.parse("(1,2)", n=5)
    q = Permutation.parse("(2,3)(4,5)")

    assert sorted(sorted(o) for o in orbits(p, q)) == [[1, 2, 3], [4, 5]]
    assert join(p, q) == SetPartition.of(5, [(1, 2, 3), (4, 5)])


def test_pairing_join_count_halves_cycle_count():
    p = Permutation.parse("(1,2)(3,4)(5,6)")
    q = Permutation.parse("(1,6)(2,3)(4,5)")

    assert pairing_join_count(list(p.images), list(q.images)) == (p * q).cycle_count() // 2
    assert pairing_join_count(list(p.images), list(q.images)) == join(p, q).block_count()


def test_lift_pairing_is_delta_symmetric():
    rho = lift_pairing(4, [(1, 2), (3, 4)], [True, False])
    d = delta(4)

    assert rho.is_pairing()
    assert d * rho * d == rho
    assert rho(1) == -2
    assert rho(3) == 4


def test_embed_signed_fixes_negative_labels():
    p = embed_signed(gamma(3))

    assert p.signed
    assert [p(-k) for k in (1, 2, 3)] == [-1, -2, -3]
    assert p(3) == 1


@given(permutations_of_6, permutations_of_6)
def test_inverse_of_product(p, q):
    assert (p * q).inverse() == q.inverse() * p.inverse()


@given(permutations_of_6)
def test_cycle_count_invariants(p):
    assert cycle_count(p * p.inverse()) == 6
    assert cycle_count(p) == cycle_count(p.inverse())
    assert cycle_count(p.conjugate(gamma(6))) == cycle_count(p)


@given(permutations_of_6)
def test_euler_bound_with_long_cycle(p):
    # #(p) + #(γp⁻¹) ≤ n + 1 for every p
    assert p.cycle_count() + (gamma(6) * p.inverse()).cycle_count() <= 7


@given(permutations_of_6, permutations_of_6)
def test_join_is_commutative_and_coarser(p, q):
    joined = join(p, q)

    assert joined == join(q, p)
    assert SetPartition.from_permutation(p) <= joined
    assert SetPartition.from_permutation(q) <= joined

import numpy as np
import pytest

from factorcheck.errors import BudgetExceededError, OrderMismatchError, PointNotInUniverseError
from factorcheck.groups import alternating_group, perm_atlas, symmetric_group
from factorcheck.perm import (DEFAULT_SEED, PointStabilizer, compose, conjugate, cycles_text, identity,
                              index2_kernel, inverse, orbit, orbits, perm_from_cycles, perm_order,
                              point_stabilizer, power, random_elements, rebase, schreier_sims, sign,
                              stabilizer_chain, tiny_intersection_order)


def test_composition_is_left_to_right():
    a = perm_from_cycles("(1,2)", 3)
    b = perm_from_cycles("(2,3)", 3)
    ab = compose(a, b)
    # 1 -> 2 under a, then 2 -> 3 under b
    assert ab[0] == 2
    assert cycles_text(ab) == "(1,3,2)"


def test_inverse_power_order_sign():
    g = perm_from_cycles("(1,2,3,4,5)(6,7)", 8)
    assert np.array_equal(compose(g, inverse(g)), identity(8))
    assert perm_order(g) == 10
    assert np.array_equal(power(g, 10), identity(8))
    assert np.array_equal(power(g, -1), inverse(g))
    assert sign(g) == -1
    x = perm_from_cycles("(1,8)", 8)
    assert perm_order(conjugate(g, x)) == 10


def test_orbit_and_orbits():
    g = perm_from_cycles("(1,2,3)(4,5)", 6)
    o = orbit([g], 0)
    assert sorted(o.points.tolist()) == [0, 1, 2]
    assert 1 in o and 3 not in o
    assert sorted(len(x) for x in orbits([g], 6)) == [1, 2, 3]
    with pytest.raises(PointNotInUniverseError):
        orbit([g], 9)
    with pytest.raises(BudgetExceededError):
        orbit([perm_from_cycles("(1,2,3,4,5,6)", 6)], 0, limit=3)


def test_a5_order_and_stabilizer():
    A5 = alternating_group(5)
    ch = schreier_sims(A5.generators, 5)
    assert ch.order == 60
    assert stabilizer_chain(ch, 0).order == 12
    assert ch.contains(perm_from_cycles("(1,2,3)", 5))
    assert not ch.contains(perm_from_cycles("(1,2)", 5))


def test_known_order_mismatch():
    S5 = symmetric_group(5)
    with pytest.raises(OrderMismatchError):
        schreier_sims(S5.generators, 5, known_order=60)


def test_rebase_keeps_order():
    ch = schreier_sims(symmetric_group(6).generators, 6)
    rb = rebase(ch, [5, 4])
    assert rb.order == 720
    assert rb.base[:2] == [5, 4]


def test_m12_order():
    M12 = perm_atlas("M12")
    assert schreier_sims(M12.generators, M12.degree).order == 95040


def test_m24_five_set_stabilizer():
    M24 = perm_atlas("M24")
    ch = schreier_sims(M24.generators, 24)
    assert ch.order == 244823040
    from factorcheck.actions import SetAction, set_orbit
    sets = set_orbit(M24.generators, [0, 1, 2, 3, 4])
    assert len(sets) == 42504
    assert ch.order // len(sets) == 5760
    act = SetAction(sets)
    induced = schreier_sims(act.perms(M24.generators), act.degree, 244823040)
    assert len(point_stabilizer(induced, 0)) > 0
    assert stabilizer_chain(induced, 0).order == 5760


def test_tiny_intersection_order():
    S6 = schreier_sims(symmetric_group(6).generators, 6)
    A6 = schreier_sims(alternating_group(6).generators, 6)
    stab = PointStabilizer(S6, 0)
    assert tiny_intersection_order(A6, stab) == 60
    assert tiny_intersection_order(A6, S6) == 360
    with pytest.raises(BudgetExceededError):
        tiny_intersection_order(S6, A6, budget=100)


def test_index2_kernel():
    gens = symmetric_group(6).generators
    ker = index2_kernel(gens, lambda g: 0 if sign(g) == 1 else 1,
                        multiply=compose, invert=inverse)
    assert schreier_sims(ker, 6).order == 360


def test_random_elements_are_deterministic():
    gens = symmetric_group(8).generators
    a = random_elements(gens, 3, seed=DEFAULT_SEED)
    b = random_elements(gens, 3, seed=DEFAULT_SEED)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    assert DEFAULT_SEED == 0x5EED


def test_contains_batch_with_ambient_base_matches_full_sift():
    S8 = schreier_sims(symmetric_group(8).generators, 8)
    A8 = schreier_sims(alternating_group(8).generators, 8)
    elems = np.concatenate(list(S8.element_batches()))[::37]
    full = A8.contains_batch(elems)
    narrow = A8.contains_batch(elems, ambient_base=S8.base)
    assert np.array_equal(full, narrow)
    assert full.sum() == sum(sign(g) == 1 for g in elems)
    assert tiny_intersection_order(A8, PointStabilizer(S8, 0), ambient_base=S8.base) == 2520

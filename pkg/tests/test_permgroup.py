import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sevenvalent import models
from sevenvalent.permgroup import (Permutation, build_group, coset_action_details, find_minimal_normal_subgroups,
                                   normal_closure, read_group_text, write_group_text)


def closure(gens, n):
    """Exhaustive closure by breadth-first multiplication (the oracle)."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


perm6 = st.permutations(list(range(6))).map(Permutation)


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def test_composition_examples():
    p = cyc(3, (0, 1, 2))
    e = Permutation.identity(3)
    assert e * p == p and p * p.inverse() == e
    assert (p * p).tolist() == cyc(3, (0, 2, 1)).tolist()
    q = cyc(3, (0, 1))
    # (p*q)(i) = p(q(i))
    assert (p * q).tolist() == [p(q(i)) for i in range(3)]


def test_random_two_generator_subgroups_of_s6():
    rng = random.Random(20261016)
    for _ in range(250):
        gens = [rng.sample(range(6), 6) for _ in range(2)]
        G = build_group([Permutation(g) for g in gens], 6)
        elems = closure([tuple(g) for g in gens], 6)
        assert G.order == len(elems)
        for x in rng.sample(sorted(elems), min(5, len(elems))):
            assert G.contains(Permutation(x))


@given(perm6, perm6, st.integers(min_value=0, max_value=5))
def test_orbit_stabilizer(a, b, point):
    G = build_group([a, b], 6)
    assert len(G.orbit(point)) * G.stabilizer(point).order == G.order
    stab = G.stabilizer(point)
    assert all(x(point) == point for x in stab.generators)


@given(perm6, perm6, perm6)
def test_membership_agrees_with_closure(a, b, c):
    G = build_group([a, b], 6)
    elems = closure([tuple(a.tolist()), tuple(b.tolist())], 6)
    assert G.contains(c) == (tuple(c.tolist()) in elems)


@pytest.mark.parametrize("gens,n,order", [
    ([cyc(8, (0, 1)), cyc(8, tuple(range(8)))], 8, 40320),
    ([Permutation.identity(4)], 4, 1),
    ([cyc(7, tuple(range(7))), Permutation([(-i) % 7 for i in range(7)])], 7, 14),
])
def test_order_examples(gens, n, order):
    assert build_group(gens, n).order == order


def test_factored_order_and_orbits():
    S8 = models.symmetric_group(8)
    assert str(S8.factored_order()) == "2^7*3^2*5*7"
    assert S8.stabilizer(0).order == 5040
    G = build_group([cyc(10, (0, 1, 2, 3, 4), (5, 6, 7, 8, 9))], 10)
    assert G.orbit(0) == {0, 1, 2, 3, 4}
    assert G.is_semiregular()
    assert not G.contains(cyc(10, (0, 1)))
    assert not build_group([cyc(3, (0, 1))], 3).is_semiregular()
    assert build_group([Permutation.identity(5)], 5).orbit(3) == {3}
    assert models.psl213().is_transitive() and len(models.psl213().orbit(5)) == 14


def test_random_words_are_members():
    S8 = models.symmetric_group(8)
    rng = random.Random(3)
    for _ in range(50):
        x = Permutation.identity(8)
        for _ in range(20):
            x = x * rng.choice(S8.generators)
        assert S8.contains(x)


def test_regular_group_stabilizer_is_trivial():
    C = build_group([cyc(12, tuple(range(12)))], 12)
    assert C.stabilizer(4).order == 1


def test_normal_closure_examples():
    S8 = models.symmetric_group(8)
    A8 = normal_closure(S8, [cyc(8, (0, 1, 2))])
    assert A8.order == 20160 and A8.is_normal_in(S8)
    assert normal_closure(S8, list(S8.generators)).order == 40320
    C = build_group([cyc(12, tuple(range(12)))], 12)
    h = cyc(12, tuple(range(12))) ** 4
    assert normal_closure(C, [h]).order == 3


def test_minimal_normal_examples():
    C15 = build_group([cyc(15, tuple(range(15)))], 15)
    res = find_minimal_normal_subgroups(C15)
    assert sorted(M.order for M in res.subgroups) == [3, 5]
    assert res.completeness == "exhaustive"
    S8 = models.symmetric_group(8)
    assert [M.order for M in find_minimal_normal_subgroups(S8).subgroups] == [20160]
    rot = cyc(43, tuple(range(43)))
    refl = Permutation([(-i) % 43 for i in range(43)])
    D = build_group([rot, refl], 43)
    mins = find_minimal_normal_subgroups(D).subgroups
    assert [M.order for M in mins] == [43]


def test_minimal_normal_subgroups_are_normal_and_minimal():
    # S4 x C3 acting on 4 + 3 points: minimal normals are V4 and C3
    gens = [cyc(7, (0, 1)), cyc(7, (0, 1, 2, 3)), cyc(7, (4, 5, 6))]
    G = build_group(gens, 7)
    mins = find_minimal_normal_subgroups(G).subgroups
    assert sorted(M.order for M in mins) == [3, 4]
    for M in mins:
        assert M.is_normal_in(G)


def test_coset_action_s8_on_agl():
    S8 = models.symmetric_group(8)
    H = models.agl32_generators()
    assert build_group(H, 8).order == 1344
    ca = coset_action_details(S8, H)
    assert ca.group.degree == 30 and ca.faithful and ca.group.order == 40320
    assert ca.subgroup_order == 1344
    assert coset_action_details(S8, list(S8.generators)).group.degree == 1


def test_coset_action_psl213_on_dihedral():
    G = models.psl213()
    D = models.dihedral_subgroup(G, 7)
    assert build_group(D, 14).order == 14
    assert coset_action_details(G, D).group.degree == 78


def test_coset_action_is_homomorphism():
    G = models.psl213()
    ca = coset_action_details(G, models.dihedral_subgroup(G, 7))
    rng = random.Random(1)
    for _ in range(10):
        x, y = G.random_element(rng), G.random_element(rng)
        assert ca.action_of(x * y) == ca.action_of(x) * ca.action_of(y)


def test_text_round_trip_and_validation():
    gens = [cyc(5, (0, 1, 2)), cyc(5, (3, 4))]
    text = write_group_text(5, gens)
    assert read_group_text(text) == gens
    assert Permutation.from_text("1 0 2").tolist() == [1, 0, 2]
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        read_group_text("degree 3\n0 1\n")


def test_elements_enumeration():
    G = build_group([cyc(4, (0, 1, 2, 3)), cyc(4, (0, 2))], 4)
    elems = list(G.elements())
    assert len(elems) == 8 == len(set(elems))
    assert np.all([G.contains(x) for x in elems])

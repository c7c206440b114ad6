import random

import pytest
from hypothesis import given, settings, strategies as st

from sevenvalent import models
from sevenvalent.automorphism import automorphism_group
from sevenvalent.graphs import (DihedrantSpec, Graph, complete_bipartite, cycle_graph, dihedrant,
                                hoffman_singleton)
from sevenvalent.numtheory import FactoredInteger
from sevenvalent.permgroup import Permutation, build_group
from sevenvalent.symmetry import (STABILIZER_TABLE, count_s_arcs, is_s_arc_transitive, s_arc_orbit_size,
                                  stabilizer_profile_check, transitivity_degree)


def enumerate_arcs(g, s):
    arcs = [(v,) for v in range(g.n)]
    for _ in range(s):
        arcs = [a + (w,) for a in arcs for w in g.neighbors(a[-1]) if len(a) < 2 or w != a[-2]]
    return arcs


def orbit_by_tuples(G, arc):
    seen, stack = {arc}, [arc]
    while stack:
        a = stack.pop()
        for x in G.generators:
            b = tuple(x(v) for v in a)
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@settings(max_examples=150)
@given(small_graphs(), st.integers(min_value=0, max_value=4))
def test_count_matches_enumeration(g, s):
    assert count_s_arcs(g, s) == len(enumerate_arcs(g, s))


def constructed_7_valent():
    return [complete_bipartite(7), hoffman_singleton(), dihedrant(DihedrantSpec(43, 4)),
            dihedrant(DihedrantSpec(29, 7)), models.cc30().graph, models.cc78_1().graph,
            models.cc78_2().graph, models.cc310().graph]


@pytest.mark.parametrize("s", [1, 2, 3])
def test_count_closed_form_on_7_valent(s):
    for g in constructed_7_valent():
        assert count_s_arcs(g, s) == g.n * 7 * 6 ** (s - 1)


def test_count_examples():
    assert count_s_arcs(complete_bipartite(7), 1) == 98
    assert count_s_arcs(hoffman_singleton(), 3) == 12600


def test_orbit_size_matches_tuple_bfs():
    g = hoffman_singleton()
    A = automorphism_group(g)
    arc = tuple(enumerate_arcs(g, 3)[0])
    assert s_arc_orbit_size(g, A, arc) == orbit_by_tuples(A, arc) == 12600


def test_arc_transitivity_examples():
    c5 = cycle_graph(5)
    D10 = build_group([Permutation([1, 2, 3, 4, 0]), Permutation([0, 4, 3, 2, 1])], 5)
    assert is_s_arc_transitive(c5, D10, 1)
    k = complete_bipartite(7)
    assert is_s_arc_transitive(k, automorphism_group(k), 3)
    cd = dihedrant(DihedrantSpec(43, 4))
    assert not is_s_arc_transitive(cd, automorphism_group(cd), 2)


def test_non_automorphism_rejected():
    c5 = cycle_graph(5)
    bad = build_group([Permutation([1, 0, 2, 3, 4])], 5)
    with pytest.raises(ValueError):
        is_s_arc_transitive(c5, bad, 1)


def test_transitivity_degree_census():
    cases = [(models.cc78_1().graph, 1, 14, "F14"),
             (models.cc310().graph, 3, 64512, "Z2^6:(SL(2,2)xSL(3,2))"),
             (models.cc30().graph, 2, 1344, "ASL(3,2)"),
             (complete_bipartite(7), 3, 3628800, "S7xS6")]
    for g, s, stab, row in cases:
        tr = transitivity_degree(g, automorphism_group(g))
        assert (tr.s, tr.stabilizer_order.value, tr.stabilizer_row.name) == (s, stab, row)


def test_hoffman_singleton_transitivity():
    # Computed: the full group is transitive on all 12600 3-arcs but not on 4-arcs.
    g = hoffman_singleton()
    tr = transitivity_degree(g, automorphism_group(g))
    assert tr.s == 3 and tr.stabilizer_order.value == 5040
    assert tr.per_level == (True, True, True, False)
    assert tr.stabilizer_rows == () and tr.flags


def test_stabilizer_table_lookup():
    assert [r.name for r in stabilizer_profile_check(7, 1)] == ["Z7"]
    assert [r.name for r in stabilizer_profile_check(FactoredInteger.parse("2^8*3^4*5^2*7"), 3)] == ["S7xS6"]
    assert stabilizer_profile_check(11, 1) == []
    with pytest.raises(ValueError):
        stabilizer_profile_check(7, 4)


def test_stabilizer_table_rows_divide_bounds():
    soluble_bound = FactoredInteger.parse("2^2*3^2*7")
    insoluble_bound = FactoredInteger.parse("2^24*3^4*5^2*7")
    for r in STABILIZER_TABLE:
        bound = soluble_bound if r.soluble else insoluble_bound
        assert r.order.divides(bound)
        assert r.order.exponent(7) == 1

import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from sevenvalent import models
from sevenvalent.automorphism import are_isomorphic, is_automorphism
from sevenvalent.graphs import (DihedrantSpec, Graph, analyze, bipartition, cayley_graph, complete_bipartite,
                                coset_graph, cycle_graph, dihedral_elements, dihedral_multiply, dihedrant,
                                dihedrant_translation, girth, gf2_subspaces, hoffman_singleton,
                                is_connected, orbital_graphs, path_graph, pg42_line_plane,
                                right_translation, solve_heptic_congruence)
from sevenvalent.permgroup import Permutation, build_group


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@st.composite
def small_graphs(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@settings(max_examples=300)
@given(small_graphs())
def test_facts_match_networkx(g):
    h = to_nx(g)
    assert is_connected(g) == nx.is_connected(h)
    assert (bipartition(g) is not None) == nx.is_bipartite(h)
    expected = nx.girth(h)
    assert girth(g) == expected


@given(small_graphs())
def test_edgelist_round_trip(g):
    assert Graph.from_edgelist(g.to_edgelist()) == g


@pytest.mark.parametrize("text", ["3 1\n0 0\n", "3 2\n0 1\n1 0\n", "3 1\n0 5\n", "3 2\n0 1\n", "x\n"])
def test_edgelist_validation(text):
    with pytest.raises(ValueError):
        Graph.from_edgelist(text)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, ((1,), ()))


def test_cyclic_cayley_is_cycle():
    g = cayley_graph(range(5), lambda x, y: (x + y) % 5, [1, 4])
    assert g == cycle_graph(5)
    with pytest.raises(ValueError):
        cayley_graph(range(5), lambda x, y: (x + y) % 5, [1])


def test_dihedral_reflections_give_k77():
    m = 7
    els = dihedral_elements(m)
    g = cayley_graph(els, dihedral_multiply(m), [(i, 1) for i in range(m)])
    f = analyze(g)
    assert f.valency == 7 and f.connected and f.bipartition is not None
    assert are_isomorphic(g, complete_bipartite(7)) is not None


def test_right_translations_are_automorphisms():
    m = 43
    els = dihedral_elements(m)
    mul = dihedral_multiply(m)
    spec = DihedrantSpec(m, 4)
    S = [((e) % m, 1) for e in spec.exponents()]
    g = cayley_graph(els, mul, S)
    assert g == dihedrant(spec)
    for x in [(1, 0), (5, 1), (17, 0)]:
        assert is_automorphism(g, right_translation(els, mul, x))
    assert is_automorphism(g, dihedrant_translation(m, 3))


@pytest.mark.parametrize("m,roots", [(29, [7, 16, 20, 23, 24, 25]), (43, [4, 11, 16, 21, 35, 41]), (5, [])])
def test_heptic_examples(m, roots):
    assert solve_heptic_congruence(m) == roots


@given(st.integers(min_value=2, max_value=3000))
def test_heptic_brute_force(m):
    brute = [x for x in range(m) if sum(pow(x, i, m) for i in range(7)) % m == 0]
    assert solve_heptic_congruence(m) == brute


@pytest.mark.parametrize("m", [29 * 127, 10 ** 7 + 19, 29 * 43 * 10 ** 6 + 0, 7 ** 5 * 29 * 127 * 1000003])
def test_heptic_large_moduli_reverified(m):
    for x in solve_heptic_congruence(m):
        assert sum(pow(x, i, m) for i in range(7)) % m == 0


def test_heptic_crt_count():
    roots = solve_heptic_congruence(29 * 127)
    assert len(roots) == 36


@pytest.mark.parametrize("m,k,n", [(29, 16, 58), (43, 4, 86)])
def test_dihedrants(m, k, n):
    g = dihedrant(DihedrantSpec(m, k))
    assert g.n == n and g.valency() == 7 and is_connected(g)


def test_dihedrant_7366():
    spec = DihedrantSpec.smallest_root(29 * 127)
    g = dihedrant(spec)
    assert g.n == 7366 and g.valency() == 7 and is_connected(g)
    with pytest.raises(ValueError):
        DihedrantSpec(29, 3)


def test_hoffman_singleton_moore_property():
    g = hoffman_singleton()
    assert g.n == 50 and g.edge_count == 175 and g.valency() == 7 and girth(g) == 5
    nb = [set(g.neighbors(v)) for v in range(g.n)]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            common = len(nb[u] & nb[v])
            assert common == (0 if v in nb[u] else 1)


def test_gf2_subspace_counts_and_pg42():
    assert len(gf2_subspaces(5, 2)) == 155 == len(gf2_subspaces(5, 3))
    g = pg42_line_plane()
    f = analyze(g)
    assert g.n == 310 and f.valency == 7 and f.connected
    assert sorted(map(len, f.bipartition)) == [155, 155]


@pytest.mark.parametrize("g,val,conn,bip,gir", [
    (cycle_graph(5), 2, True, False, 5),
    (complete_bipartite(7), 7, True, True, 4),
    (hoffman_singleton(), 7, True, False, 5),
])
def test_analyze_examples(g, val, conn, bip, gir):
    f = analyze(g)
    assert (f.valency, f.connected, f.bipartition is not None, f.girth) == (val, conn, bip, gir)


def test_path_graph_irregular():
    assert path_graph(3).valency() is None
    assert math.isinf(girth(path_graph(4)))


def test_orbital_graphs_cc30_unique():
    og = [o for o in orbital_graphs(models.cc30().group) if o.connected and not o.flagged]
    assert len(og) == 1 and og[0].graph.n == 30


def test_orbital_graphs_cyclic_regular():
    C8 = build_group([Permutation([(i + 1) % 8 for i in range(8)])], 8)
    assert orbital_graphs(C8, 7) == []
    assert all(len(o.suborbit) == 2 and o.flagged for o in orbital_graphs(C8, 2))


def test_coset_graph_matches_orbital_cc30():
    g, A = coset_graph(models.cc30_coset_spec())
    assert g.n == 30 and g.valency() == 7
    assert are_isomorphic(g, models.cc30().graph) is not None
    assert all(is_automorphism(g, x) for x in A.generators)


def test_coset_graph_trivial():
    S3 = build_group([Permutation([1, 0, 2]), Permutation([1, 2, 0])], 3)
    from sevenvalent.graphs import CosetGraphSpec
    g, _ = coset_graph(CosetGraphSpec(S3, tuple(S3.generators), Permutation.identity(3)))
    assert g.n == 1 and g.edge_count == 0


def test_cc78_models_contain_psl():
    g1 = models.cc78_1()
    g2 = models.cc78_2()
    assert g1.graph.n == g2.graph.n == 78
    assert g1.graph.valency() == g2.graph.valency() == 7
    assert are_isomorphic(g1.graph, g2.graph) is None

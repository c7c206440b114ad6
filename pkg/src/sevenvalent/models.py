"""Concrete permutation models of the groups and graphs of the 7-valent census.

All choices are deterministic: subgroups are picked as the first suitable
elements in lexicographic order of their image lists, and orbital graphs are
selected by group-theoretic properties, never by comparing automorphism groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graphs import (CosetGraphSpec, DihedrantSpec, Graph, complete_bipartite, dihedrant,
                     hoffman_singleton, orbital_graphs, pg42_line_plane)
from .permgroup import Permutation, PermutationGroup, build_group, coset_action_details


def symmetric_group(n: int) -> PermutationGroup:
    gens = [Permutation.from_cycles(n, [tuple(range(n))])]
    if n > 1:
        gens.insert(0, Permutation.from_cycles(n, [(0, 1)]))
    return build_group(gens, n)


def _linear(f) -> Permutation:
    return Permutation([f(x) for x in range(8)])


def agl32_generators() -> list[Permutation]:
    """AGL(3,2) on the 8 vectors of GF(2)^3 in binary order.

    Translations by the three basis vectors, the cyclic shift of coordinates,
    and the transvection adding the first coordinate to the second.
    """
    trans = [Permutation([x ^ v for x in range(8)]) for v in (1, 2, 4)]
    shift = _linear(lambda x: ((x << 1) & 7) | (x >> 2))
    transvection = _linear(lambda x: x ^ ((x & 1) << 1))
    return trans + [shift, transvection]


# projective line over GF(13): points 0..12 and infinity = 13
_P = 13
_INF = _P


def _mobius(f) -> Permutation:
    return Permutation([f(z) for z in range(_P + 1)])


def _translate(z):
    return _INF if z == _INF else (z + 1) % _P


def _negative_inverse(z):
    if z == _INF:
        return 0
    return _INF if z == 0 else (-pow(z, -1, _P)) % _P


def _double(z):
    # 2 is a non-square mod 13, so z -> 2z lies in PGL(2,13) \ PSL(2,13)
    return _INF if z == _INF else 2 * z % _P


def psl213_generators() -> list[Permutation]:
    return [_mobius(_translate), _mobius(_negative_inverse)]


def pgl213_outer() -> Permutation:
    return _mobius(_double)


def psl213() -> PermutationGroup:
    return build_group(psl213_generators(), 14)


def pgl213() -> PermutationGroup:
    return build_group(psl213_generators() + [pgl213_outer()], 14)


def dihedral_subgroup(G: PermutationGroup, n: int) -> list[Permutation]:
    """Generators (x, y) of a dihedral subgroup of order 2n.

    x is the first element of order n and y the first involution inverting it,
    both in lexicographic order of image lists.
    """
    elements = sorted(G.elements(), key=lambda g: g.tolist())
    x = next(g for g in elements if g.order() == n)
    x_inv = x.inverse()
    y = next(g for g in elements if g.order() == 2 and y_inverts(g, x, x_inv))
    return [x, y]


def y_inverts(y: Permutation, x: Permutation, x_inv: Permutation) -> bool:
    return y * x * y == x_inv


# ----------------------------------------------------------------------------
# the census graphs


@dataclass(frozen=True)
class ModelGraph:
    """A census graph together with a group known to act arc-transitively on it."""

    name: str
    graph: Graph
    group: PermutationGroup | None
    construction: str


def cc30() -> ModelGraph:
    """The unique connected 7-valent orbital graph of S8 on the 30 cosets of AGL(3,2)."""
    act = coset_action_details(symmetric_group(8), agl32_generators())
    graphs = [o for o in orbital_graphs(act.group) if o.connected and not o.flagged]
    if len(graphs) != 1:
        raise AssertionError(f"expected one orbital graph, found {len(graphs)}")
    return ModelGraph("CC30", graphs[0].graph, act.group,
                      "S8 on the 30 cosets of AGL(3,2), valency-7 orbital graph")


def cc30_coset_spec() -> CosetGraphSpec:
    """Coset-graph description of CC30: g is the first coset representative whose
    coset lies in the valency-7 suborbit of the action on AGL(3,2)-cosets."""
    S8 = symmetric_group(8)
    H = agl32_generators()
    act = coset_action_details(S8, H)
    delta = set(next(o.suborbit for o in orbital_graphs(act.group) if o.connected))
    v = min(delta)
    return CosetGraphSpec(S8, tuple(H), act.representatives[v])


@lru_cache(maxsize=None)
def _pgl_action_on_78():
    PGL = pgl213()
    H = dihedral_subgroup(PGL, 14)
    return coset_action_details(PGL, H)


def cc78_2() -> ModelGraph:
    """The unique valency-7 orbital graph of PGL(2,13) on the cosets of a D28."""
    act = _pgl_action_on_78()
    graphs = [o for o in orbital_graphs(act.group) if o.connected and not o.flagged]
    if len(graphs) != 1:
        raise AssertionError(f"expected one orbital graph, found {len(graphs)}")
    return ModelGraph("CC78_2", graphs[0].graph, act.group,
                      "PGL(2,13) on the 78 cosets of D28, valency-7 orbital graph")


def cc78_1() -> ModelGraph:
    """A valency-7 orbital graph of PSL(2,13) (stabilizer D14) not preserved by PGL(2,13).

    PSL(2,13) acts on the same 78 points as PGL(2,13), with point stabilizer
    D28 meet PSL(2,13) = D14.  Exactly two of its connected valency-7 orbital
    graphs are moved by the outer element z -> 2z (the two are swapped by it);
    the first one, by smallest suborbit, is returned.
    """
    act = _pgl_action_on_78()
    psl = build_group([act.action_of(g) for g in psl213_generators()], 78)
    outer = act.action_of(pgl213_outer())
    moved = []
    for o in orbital_graphs(psl):
        if o.connected and not o.flagged:
            g = o.graph
            if not all(g.has_edge(outer(u), outer(v)) for u, v in g.edges()):
                moved.append(o)
    if len(moved) != 2:
        raise AssertionError(f"expected two PGL-moved orbital graphs, found {len(moved)}")
    return ModelGraph("CC78_1", moved[0].graph, psl,
                      "PSL(2,13) on 78 points (stabilizer D14), orbital graph moved by PGL(2,13)")


def cc310() -> ModelGraph:
    return ModelGraph("CC310", pg42_line_plane(), None,
                      "lines versus planes of PG(4,2), adjacency by containment")


def k77() -> ModelGraph:
    return ModelGraph("K77", complete_bipartite(7), None, "complete bipartite graph K7,7")


def hs50() -> ModelGraph:
    return ModelGraph("HS50", hoffman_singleton(), None, "Hoffman-Singleton pentagon/pentagram model")


def cd(m: int, k: int | None = None) -> ModelGraph:
    spec = DihedrantSpec.smallest_root(m) if k is None else DihedrantSpec(m, k)
    return ModelGraph(f"CD({2 * m},7)", dihedrant(spec), None,
                      f"dihedrant with m={m}, k={spec.k}")

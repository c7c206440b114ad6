"""Graphs: the Graph type, Cayley graphs, dihedrants, named graphs, orbital graphs.

A Graph is undirected and simple, stored as sorted neighbor tuples.  Vertex
labels are optional strings describing what a vertex stands for (a group
element, a coset, a subspace).
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .numtheory import factorize
from .permgroup import Permutation, PermutationGroup, coset_action_details, _transversal_arrays


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length differs from n")
        for u, nbrs in enumerate(self.adjacency):
            if len(set(nbrs)) != len(nbrs) or u in nbrs or list(nbrs) != sorted(nbrs):
                raise ValueError(f"bad neighbor list at vertex {u}")
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if not 0 <= v < self.n or u not in self._nbr_sets[v]:
                    raise ValueError(f"asymmetric edge {u}-{v}")

    @property
    def _nbr_sets(self) -> tuple[frozenset, ...]:
        cache = self.__dict__.get("_sets")
        if cache is None:
            cache = tuple(frozenset(a) for a in self.adjacency)
            object.__setattr__(self, "_sets", cache)
        return cache

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), tuple(labels) if labels else None)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def valency(self) -> int | None:
        """Common degree, or None when the graph is irregular."""
        degs = {len(a) for a in self.adjacency}
        return degs.pop() if len(degs) == 1 else (0 if not degs else None)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """The graph with vertex v renamed perm[v]."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    # -- edge-list text format --------------------------------------------
    def to_edgelist(self) -> str:
        edges = self.edges()
        return "\n".join([f"{self.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> "Graph":
        lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines or len(lines[0]) != 2:
            raise ValueError("edge list header must be 'n m'")
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
        if len(edges) != m:
            raise ValueError(f"header announces {m} edges, found {len(edges)}")
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex out of range in edge {u} {v}")
            if u == v:
                raise ValueError(f"loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {u} {v}")
            seen.add(key)
        return cls.from_edges(n, edges)


# ----------------------------------------------------------------------------
# generic facts


@dataclass(frozen=True)
class GraphFacts:
    valency: int | str
    connected: bool
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None
    girth: float

    def to_json(self) -> dict:
        return {"valency": self.valency, "connected": self.connected,
                "bipartition_sizes": None if self.bipartition is None else [len(p) for p in self.bipartition],
                "girth": None if math.isinf(self.girth) else int(self.girth)}


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        k = 0
        while k < len(comp):
            for v in g.adjacency[comp[k]]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
            k += 1
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bipartition(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two-colouring (color class of vertex 0 first), or None if an odd cycle exists."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return (tuple(v for v in range(g.n) if color[v] == 0),
            tuple(v for v in range(g.n) if color[v] == 1))


def girth(g: Graph) -> float:
    """Length of a shortest cycle (inf for forests), by truncated BFS from every vertex."""
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for v in g.adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u]:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def analyze(g: Graph) -> GraphFacts:
    val = g.valency()
    return GraphFacts("irregular" if val is None else val, is_connected(g), bipartition(g), girth(g))


# ----------------------------------------------------------------------------
# Cayley graphs


def cayley_graph(elements: Sequence[Hashable], multiply: Callable[[Hashable, Hashable], Hashable],
                 connection_set: Iterable[Hashable], names: Callable[[Hashable], str] = str) -> Graph:
    """Cay(G, S): g ~ h iff h g^-1 lies in S, i.e. h = s g for some s in S."""
    elements = list(elements)
    index = {x: i for i, x in enumerate(elements)}
    S = list(dict.fromkeys(connection_set))
    identity = next(x for x in elements if multiply(x, x) == x)
    if identity in S:
        raise ValueError("the identity lies in the connection set")
    for s in S:
        if s not in index:
            raise ValueError(f"{s!r} is not a group element")
        inv = next(x for x in elements if multiply(s, x) == identity)
        if inv not in S:
            raise ValueError(f"connection set is not inverse-closed ({s!r})")
    edges = [(index[g], index[multiply(s, g)]) for g in elements for s in S]
    return Graph.from_edges(len(elements), edges, [names(x) for x in elements])


def right_translation(elements: Sequence[Hashable], multiply, x) -> Permutation:
    """The vertex permutation g -> g x, an automorphism of every Cayley graph Cay(G,S)."""
    index = {e: i for i, e in enumerate(elements)}
    return Permutation([index[multiply(g, x)] for g in elements])


# dihedral group of order 2m: (i, e) stands for a^i b^e


def dihedral_elements(m: int) -> list[tuple[int, int]]:
    return [(i, 0) for i in range(m)] + [(i, 1) for i in range(m)]


def dihedral_multiply(m: int) -> Callable:
    def mul(x, y):
        (i, e), (j, f) = x, y
        return ((i + j) % m, f) if e == 0 else ((i - j) % m, 1 - f)
    return mul


def dihedral_name(x: tuple[int, int]) -> str:
    i, e = x
    return f"a^{i}" + (" b" if e else "")


# ----------------------------------------------------------------------------
# the heptic congruence x^6 + ... + x + 1 = 0 (mod m)

BRUTE_FORCE_LIMIT = 10 ** 7
CRT_LIMIT = 10 ** 18


def _phi7_mod(x: int, m: int) -> int:
    v = 1
    for _ in range(6):
        v = (v * x + 1) % m
    return v


def _roots_mod_prime_power(p: int, e: int) -> list[int]:
    if p == 7:
        return [1] if e == 1 else []
    if p % 7 != 1:
        return []
    # the six elements of multiplicative order 7
    a = 2
    while True:
        r = pow(a, (p - 1) // 7, p)
        if r != 1:
            break
        a += 1
    roots = sorted(pow(r, j, p) for j in range(1, 7))
    mod = p
    for _ in range(1, e):  # Hensel: Phi_7 is separable mod p for p != 7
        mod *= p
        lifted = []
        for x in roots:
            f = _phi7_mod(x, mod)
            df = sum((t + 1) * pow(x, t, mod) for t in range(6)) % mod
            x = (x - f * pow(df, -1, mod)) % mod
            lifted.append(x)
        roots = sorted(lifted)
    return roots


def solve_heptic_congruence(m: int) -> list[int]:
    """All k in [0, m) with k^6 + k^5 + ... + k + 1 = 0 (mod m), sorted."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if m <= BRUTE_FORCE_LIMIT:
        x = np.arange(m, dtype=np.int64)
        v = np.ones(m, dtype=np.int64)
        for _ in range(6):
            v = (v * x + 1) % m
        return np.flatnonzero(v == 0).tolist()
    if m > CRT_LIMIT:
        raise ValueError(f"m = {m} is beyond the supported range (<= 10^18)")
    roots, mod = [0], 1
    for p, e in factorize(m).items():
        pe = p ** e
        local = _roots_mod_prime_power(p, e)
        if not local:
            return []
        inv = pow(mod, -1, pe)
        roots = [(r + mod * ((s - r) * inv % pe)) for r in roots for s in local]
        mod *= pe
    return sorted(r % m for r in roots)


@dataclass(frozen=True)
class DihedrantSpec:
    m: int
    k: int

    def __post_init__(self):
        if self.m < 3:
            raise ValueError("m must be at least 3")
        if _phi7_mod(self.k % self.m, self.m) != 0:
            raise ValueError(f"k = {self.k} is not a root of the heptic congruence mod {self.m}")

    @classmethod
    def smallest_root(cls, m: int) -> "DihedrantSpec":
        roots = solve_heptic_congruence(m)
        if not roots:
            raise ValueError(f"no root of the heptic congruence modulo {m}")
        return cls(m, roots[0])

    def exponents(self) -> list[int]:
        """{0} together with the partial sums 1, 1+k, ..., 1+k+...+k^5 (mod m)."""
        out, acc, pw = [0], 0, 1
        for _ in range(6):
            acc = (acc + pw) % self.m
            pw = pw * self.k % self.m
            out.append(acc)
        return out


def dihedrant(spec: DihedrantSpec) -> Graph:
    """CD(2m,7): Cayley graph of D_2m on the reflections a^e b, e in spec.exponents()."""
    m = spec.m
    exps = spec.exponents()
    if len(set(exps)) != 7:
        raise ValueError(f"connection set exponents {exps} are not distinct mod {m}")
    # index (i, e) -> i + e m; (e,1)(i,0) = (e - i, 1)
    edges = [(i, m + (e - i) % m) for i in range(m) for e in exps]
    labels = [dihedral_name(x) for x in dihedral_elements(m)]
    return Graph.from_edges(2 * m, edges, labels)


def dihedrant_translation(m: int, t: int = 1) -> Permutation:
    """Right multiplication by a^t on CD(2m,7): (i,0) -> (i+t,0) and (i,1) -> (i-t,1)."""
    return Permutation([(i + t) % m for i in range(m)] + [m + (i - t) % m for i in range(m)])


# ----------------------------------------------------------------------------
# named graphs


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(n: int) -> Graph:
    return Graph.from_edges(2 * n, ((i, n + j) for i in range(n) for j in range(n)))


def bipartite_minus_matching(n: int) -> Graph:
    return Graph.from_edges(2 * n, ((i, n + j) for i in range(n) for j in range(n) if i != j))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def hoffman_singleton() -> Graph:
    """Pentagons P_h and pentagrams Q_i; P_{h,j} ~ Q_{i, h*i + j mod 5}."""
    P = lambda h, j: 5 * h + j % 5
    Q = lambda i, j: 25 + 5 * i + j % 5
    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((P(h, j), P(h, j + 1)))
            edges.append((Q(h, j), Q(h, j + 2)))
            for i in range(5):
                edges.append((P(h, j), Q(i, h * i + j)))
    labels = [f"P{h},{j}" for h in range(5) for j in range(5)] + \
             [f"Q{i},{j}" for i in range(5) for j in range(5)]
    return Graph.from_edges(50, edges, labels)


def gf2_subspaces(dim: int, k: int) -> list[frozenset[int]]:
    """All k-dimensional subspaces of GF(2)^dim, as sets of nonzero vectors (bit masks)."""
    found = set()
    for basis in itertools.combinations(range(1, 2 ** dim), k):
        span = {0}
        for b in basis:
            span |= {x ^ b for x in span}
        if len(span) == 2 ** k:
            found.add(frozenset(span - {0}))
    return sorted(found, key=lambda s: sorted(s))


def pg42_line_plane() -> Graph:
    """Lines versus planes of PG(4,2) (2- and 3-subspaces of GF(2)^5), adjacent by containment."""
    lines = gf2_subspaces(5, 2)
    planes = gf2_subspaces(5, 3)
    nl = len(lines)
    edges = [(i, nl + j) for i, L in enumerate(lines) for j, W in enumerate(planes) if L <= W]
    labels = ["L" + ",".join(map(str, sorted(L))) for L in lines] + \
             ["W" + ",".join(map(str, sorted(W))) for W in planes]
    return Graph.from_edges(nl + len(planes), edges, labels)


NAMED_IDS = ("complete", "complete_bipartite", "bipartite_minus_matching", "hoffman_singleton",
             "pg42_line_plane")


def named_graph(name: str, n: int | None = None) -> Graph:
    if name in ("complete", "complete_bipartite", "bipartite_minus_matching"):
        if n is None or n < 1:
            raise ValueError(f"{name} needs n >= 1")
        return {"complete": complete_graph, "complete_bipartite": complete_bipartite,
                "bipartite_minus_matching": bipartite_minus_matching}[name](n)
    if name == "hoffman_singleton":
        return hoffman_singleton()
    if name == "pg42_line_plane":
        return pg42_line_plane()
    raise ValueError(f"unknown graph id {name!r}")


# ----------------------------------------------------------------------------
# coset graphs and orbital graphs


def _neighbors_from_suborbit(n: int, trans: list[np.ndarray], orbit0: list[int],
                             delta: Sequence[int]) -> list[list[int]]:
    t_of = dict(zip(orbit0, trans))
    d = np.array(sorted(delta), dtype=np.int64)
    return [t_of[v][d].tolist() for v in range(n)]


@dataclass(frozen=True)
class OrbitalGraph:
    graph: Graph
    suborbit: tuple[int, ...]
    self_paired: bool
    connected: bool
    flagged: bool = False  # built from a paired couple rather than a self-paired suborbit


def suborbits(G: PermutationGroup) -> tuple[PermutationGroup, list[list[int]]]:
    """The chain of G rebased at 0 and the orbits of the stabilizer of 0."""
    if not G.is_transitive():
        raise ValueError("group is not transitive")
    Gb = G.with_base_prefix([0])
    H = G.stabilizer(0)
    return Gb, H.orbits() if H.order > 1 else [[v] for v in range(G.degree)]


def orbital_graphs(G: PermutationGroup, valency: int = 7) -> list[OrbitalGraph]:
    """All orbital graphs of the given valency of a transitive group.

    Self-paired suborbits of that length give undirected orbital graphs.  A
    paired couple (D, D*) whose lengths add up to the valency also yields an
    undirected graph (the union of the two orbitals); such graphs are flagged.
    """
    Gb, subs = suborbits(G)
    n = G.degree
    orbit0 = list(Gb._chain.levels[0].orbit)
    trans = _transversal_arrays(Gb, 0)
    t_of = dict(zip(orbit0, trans))
    which = {v: i for i, s in enumerate(subs) for v in s}
    paired = {}
    for i, s in enumerate(subs):
        d = s[0]
        inv = np.empty(n, dtype=np.int64)
        inv[t_of[d]] = np.arange(n)
        paired[i] = which[int(inv[0])]
    out = []
    for i, s in enumerate(subs):
        if 0 in s:
            continue
        cases = []
        if paired[i] == i and len(s) == valency:
            cases.append((tuple(s), False))
        j = paired[i]
        if j > i and len(s) + len(subs[j]) == valency:
            cases.append((tuple(sorted(s + subs[j])), True))
        for delta, flagged in cases:
            nbrs = _neighbors_from_suborbit(n, trans, orbit0, delta)
            g = Graph.from_edges(n, ((u, v) for u in range(n) for v in nbrs[u]))
            out.append(OrbitalGraph(g, delta, not flagged, is_connected(g), flagged))
    return out


def orbital_graphs_valency7(G: PermutationGroup) -> list[OrbitalGraph]:
    return orbital_graphs(G, 7)


@dataclass(frozen=True)
class CosetGraphSpec:
    group: PermutationGroup
    subgroup_gens: tuple[Permutation, ...]
    arc_rep: Permutation


def coset_graph(spec: CosetGraphSpec) -> tuple[Graph, PermutationGroup]:
    """Coset graph on the left cosets xH with xH ~ yH iff x^-1 y lies in HgH.

    Returns the graph and the action group (the image of the input group).
    """
    act = coset_action_details(spec.group, list(spec.subgroup_gens))
    A = act.group
    n = A.degree
    target = act.coset_index(spec.arc_rep)
    back = act.coset_index(spec.arc_rep.inverse())
    h_perms = [act.action_of(h) for h in spec.subgroup_gens]
    delta = {target}
    frontier = [target]
    while frontier:
        x = frontier.pop()
        for h in h_perms:
            y = h(x)
            if y not in delta:
                delta.add(y)
                frontier.append(y)
    if n > 1 and 0 in delta:
        raise ValueError("arc representative lies in H (loops)")
    if back not in delta:
        raise ValueError("HgH differs from Hg^-1H: the coset graph would be directed")
    edges = []
    if n == 1:   # H = G: a single vertex, no edges
        delta = set()
    for v, rep in enumerate(act.representatives):
        pv = act.action_of(rep)
        edges += [(v, pv(d)) for d in delta]
    labels = [f"coset{v}" for v in range(n)]
    return Graph.from_edges(n, edges, labels), A

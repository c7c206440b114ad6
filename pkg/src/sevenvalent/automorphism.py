"""Graph automorphism groups and isomorphism by individualization-refinement.

The search follows the classical scheme: refine the unit partition to an
equitable one, then repeatedly individualize a vertex of the first smallest
non-singleton cell.  The leftmost path of this tree gives a base for Aut(g).
Levels are processed bottom-up; at level i each vertex of the target cell not
yet in the orbit of the path vertex (under automorphisms found so far, which
all fix the earlier path vertices) is explored until a leaf equivalent to the
first leaf is found or the subtree is exhausted.  Refinement traces serve as
node invariants, and orbits of known automorphisms prune siblings.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graphs import Graph
from .numtheory import FactoredInteger
from .permgroup import Permutation, PermutationGroup, build_group


class BudgetExceeded(Exception):
    """Raised when a search runs past its time budget."""

    def __init__(self, message: str, partial_generators: Sequence[Permutation] = ()):
        super().__init__(message)
        self.partial_generators = list(partial_generators)


@dataclass(frozen=True)
class ColoredPartition:
    """Ordered cells of vertices."""

    cells: tuple[tuple[int, ...], ...]

    @classmethod
    def unit(cls, n: int) -> "ColoredPartition":
        return cls((tuple(range(n)),) if n else ())

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> "ColoredPartition":
        by = {}
        for v, c in enumerate(colors):
            by.setdefault(c, []).append(v)
        return cls(tuple(tuple(by[c]) for c in sorted(by)))

    def cell_of(self) -> list[int]:
        out = [0] * sum(len(c) for c in self.cells)
        for i, c in enumerate(self.cells):
            for v in c:
                out[v] = i
        return out

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.cells)

    def is_equitable(self, g: Graph) -> bool:
        cell = self.cell_of()
        for c in self.cells:
            profiles = set()
            for v in c:
                cnt = [0] * len(self.cells)
                for u in g.adjacency[v]:
                    cnt[cell[u]] += 1
                profiles.add(tuple(cnt))
            if len(profiles) > 1:
                return False
        return True


class _Part:
    """Mutable ordered partition: lab holds vertices cell by cell."""

    __slots__ = ("lab", "pos", "start", "end", "ncells")

    def __init__(self, lab, pos, start, end, ncells):
        self.lab, self.pos, self.start, self.end, self.ncells = lab, pos, start, end, ncells

    @classmethod
    def from_cells(cls, n: int, cells: Sequence[Sequence[int]]) -> "_Part":
        lab, pos, start, end = [], [0] * n, [0] * n, [0] * n
        for c in cells:
            s = len(lab)
            for v in c:
                pos[v] = len(lab)
                start[v] = s
                lab.append(v)
            end[s] = len(lab)
        return cls(lab, pos, start, end, len(cells))

    def copy(self) -> "_Part":
        return _Part(self.lab[:], self.pos[:], self.start[:], self.end[:], self.ncells)

    def cells(self) -> list[list[int]]:
        out, i = [], 0
        while i < len(self.lab):
            e = self.end[i]
            out.append(self.lab[i:e])
            i = e
        return out

    def is_discrete(self) -> bool:
        return self.ncells == len(self.lab)

    def target_cell(self) -> int:
        """Start of the first smallest non-singleton cell."""
        best, best_size, i = -1, None, 0
        n = len(self.lab)
        while i < n:
            e = self.end[i]
            size = e - i
            if size > 1 and (best_size is None or size < best_size):
                best, best_size = i, size
                if size == 2:
                    break
            i = e
        return best

    def individualize(self, v: int) -> int:
        """Split {v} off the front of its cell; return the start of the singleton."""
        s = self.start[v]
        e = self.end[s]
        p = self.pos[v]
        lab, pos = self.lab, self.pos
        u = lab[s]
        lab[s], lab[p] = v, u
        pos[v], pos[u] = s, p
        self.end[s] = s + 1
        self.end[s + 1] = e
        for j in range(s + 1, e):
            self.start[lab[j]] = s + 1
        self.ncells += 1
        return s


class _Mismatch(Exception):
    pass


def _refine(adj, part: _Part, queue: list[int], ref: list | None, trace: list) -> None:
    """Equitable refinement driven by the splitter queue (cell starts).

    Every split appends (splitter, cell start, ((count, size), ...)) to trace.
    With ref given, a record differing from ref at the same position raises
    _Mismatch, which lets the caller abandon the node early.
    """
    lab, pos, start, end = part.lab, part.pos, part.start, part.end
    in_queue = set(queue)
    n = len(lab)
    qi = 0
    while qi < len(queue) and part.ncells < n:
        w = queue[qi]
        qi += 1
        in_queue.discard(w)
        cnt: dict[int, int] = {}
        for x in lab[w:end[w]]:
            for u in adj[x]:
                cnt[u] = cnt.get(u, 0) + 1
        touched: dict[int, list[int]] = {}
        for u in cnt:
            touched.setdefault(start[u], []).append(u)
        for s in sorted(touched):
            e = end[s]
            members = touched[s]
            size = e - s
            if size == 1:
                continue
            if len(members) == size:
                first = cnt[members[0]]
                if all(cnt[u] == first for u in members):
                    continue
            buckets: dict[int, list[int]] = {}
            if len(members) < size:
                hit = set(members)
                buckets[0] = [x for x in lab[s:e] if x not in hit]
            for u in members:
                buckets.setdefault(cnt[u], []).append(u)
            keys = sorted(buckets)
            record = (w, s, tuple((k, len(buckets[k])) for k in keys))
            k = len(trace)
            if ref is not None and (k >= len(ref) or ref[k] != record):
                raise _Mismatch
            trace.append(record)
            j = s
            frags = []
            for key in keys:
                frag = buckets[key]
                fs = j
                for x in frag:
                    lab[j] = x
                    pos[x] = j
                    start[x] = fs
                    j += 1
                end[fs] = j
                frags.append((fs, len(frag)))
            part.ncells += len(frags) - 1
            if s in in_queue:
                add = [fs for fs, _ in frags[1:]]
            else:
                largest = max(range(len(frags)), key=lambda i: (frags[i][1], -i))
                add = [fs for i, (fs, _) in enumerate(frags) if i != largest]
            for fs in add:
                queue.append(fs)
                in_queue.add(fs)
    if ref is not None and len(trace) != len(ref):
        raise _Mismatch


def _cell_starts(part: _Part) -> list[int]:
    out, i = [], 0
    while i < len(part.lab):
        out.append(i)
        i = part.end[i]
    return out


def refine(g: Graph, p: ColoredPartition | None = None) -> ColoredPartition:
    """Coarsest equitable refinement of p (default: the unit partition)."""
    p = p or ColoredPartition.unit(g.n)
    part = _Part.from_cells(g.n, p.cells)
    _refine(g.adjacency, part, _cell_starts(part), None, [])
    return ColoredPartition(tuple(tuple(c) for c in part.cells()))


# ----------------------------------------------------------------------------
# edge membership tests


class _EdgeSet:
    def __init__(self, g: Graph):
        self.n = g.n
        edges = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
        self.u, self.v = edges[:, 0], edges[:, 1]
        both = np.concatenate([self.u * g.n + self.v, self.v * g.n + self.u])
        self.keys = np.sort(both)

    def maps_into(self, images: np.ndarray, other: "_EdgeSet") -> bool:
        if len(self.u) != len(other.u):
            return False
        if not len(self.u):
            return True
        k = images[self.u].astype(np.int64) * other.n + images[self.v]
        idx = np.searchsorted(other.keys, k)
        idx[idx >= len(other.keys)] = 0
        return bool(np.all(other.keys[idx] == k))


def is_automorphism(g: Graph, p: Permutation) -> bool:
    """True iff p maps the edge set of g onto itself."""
    if p.degree != g.n:
        raise ValueError(f"permutation degree {p.degree} differs from graph order {g.n}")
    es = _EdgeSet(g)
    return es.maps_into(p.array, es)


def is_isomorphism(g1: Graph, g2: Graph, mapping: Sequence[int]) -> bool:
    if g1.n != g2.n or sorted(mapping) != list(range(g1.n)):
        return False
    return _EdgeSet(g1).maps_into(np.asarray(mapping, dtype=np.int64), _EdgeSet(g2))


# ----------------------------------------------------------------------------
# the search


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def add_permutation(self, arr) -> None:
        for i, j in enumerate(arr):
            if i != j:
                self.union(i, int(j))


@dataclass
class _Level:
    part: _Part          # partition before individualizing
    cell: int            # start of the target cell
    vertex: int          # vertex individualized on the first path
    trace: list          # refinement trace after individualizing


@dataclass
class _FirstPath:
    root_trace: list
    levels: list[_Level]
    leaf: list[int]


class _Searcher:
    def __init__(self, g: Graph, colors: Sequence[int] | None, deadline: float | None):
        self.g = g
        self.adj = g.adjacency
        self.colors = colors
        self.deadline = deadline
        self.nodes = 0

    def tick(self, gens=()):
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded("automorphism search exceeded its time budget", gens)

    def root(self, ref: list | None = None) -> tuple[_Part, list]:
        g = self.g
        p = ColoredPartition.from_colors(self.colors) if self.colors is not None else ColoredPartition.unit(g.n)
        part = _Part.from_cells(g.n, p.cells)
        head = ("colors", tuple(len(c) for c in p.cells))
        if ref is not None and ref[0] != head:
            raise _Mismatch
        trace: list = []
        _refine(self.adj, part, _cell_starts(part), None if ref is None else ref[1:], trace)
        return part, [head] + trace

    def child(self, part: _Part, v: int, ref: list | None) -> tuple[_Part, list]:
        c = part.copy()
        s = c.individualize(v)
        trace: list = []
        _refine(self.adj, c, [s], ref, trace)
        return c, trace

    def first_path(self) -> _FirstPath:
        part, root_trace = self.root()
        levels = []
        while not part.is_discrete():
            self.tick()
            s = part.target_cell()
            v = min(part.lab[s:part.end[s]])
            c, trace = self.child(part, v, None)
            levels.append(_Level(part, s, v, trace))
            part = c
        return _FirstPath(root_trace, levels, part.lab[:])


def _fixes(arr, prefix) -> bool:
    return all(arr[p] == p for p in prefix)


@dataclass(frozen=True)
class AutomorphismResult:
    """Outcome of an automorphism search."""

    status: str                       # "complete" or "budget-exceeded"
    generators: tuple[Permutation, ...]
    base: tuple[int, ...]
    group: PermutationGroup | None
    elapsed: float
    nodes: int

    @property
    def order(self) -> int | None:
        return None if self.group is None else self.group.order

    def factored_order(self) -> FactoredInteger | None:
        return None if self.group is None else self.group.factored_order()

    def to_json(self, include_generators: bool = True) -> dict:
        d = {"status": self.status, "base": list(self.base), "nodes": self.nodes,
             "order": None if self.group is None else str(self.group.order),
             "factored_order": None if self.group is None else str(self.group.factored_order()),
             "elapsed": self.elapsed}
        if include_generators:
            d["generators"] = [g.tolist() for g in self.generators]
        return d


def automorphism_search(g: Graph, *, colors: Sequence[int] | None = None,
                        budget_seconds: float | None = None) -> AutomorphismResult:
    """Full automorphism group (colour-preserving when colors are given).

    Never raises on budget exhaustion; the result status says what happened.
    """
    t0 = time.monotonic()
    deadline = None if budget_seconds is None else t0 + budget_seconds
    S = _Searcher(g, colors, deadline)
    es = _EdgeSet(g)
    gens: list[np.ndarray] = []
    fp = None
    try:
        fp = S.first_path()
        leaf1 = np.array(fp.leaf, dtype=np.int64)
        uf = _UnionFind(g.n)

        def leaf_automorphism(lab) -> np.ndarray | None:
            gamma = np.empty(g.n, dtype=np.int64)
            gamma[leaf1] = lab
            return gamma if es.maps_into(gamma, es) else None

        def explore(part: _Part, depth: int, prefix: list[int]) -> np.ndarray | None:
            # part is the partition after individualizing prefix[-1] at level depth-1
            S.tick([Permutation(x) for x in gens])
            if part.is_discrete():
                return leaf_automorphism(part.lab)
            lvl = fp.levels[depth]
            s = part.target_cell()
            if s != lvl.cell:
                return None
            local = _UnionFind(g.n)
            for x in gens:
                if _fixes(x, prefix):
                    local.add_permutation(x)
            failed_roots: set[int] = set()
            for u in sorted(part.lab[s:part.end[s]]):
                r = local.find(u)
                if r in failed_roots:
                    continue
                try:
                    c, _ = S.child(part, u, lvl.trace)
                except _Mismatch:
                    failed_roots.add(r)
                    continue
                found = explore(c, depth + 1, prefix + [u])
                if found is not None:
                    return found
                failed_roots.add(r)
            return None

        base = [l.vertex for l in fp.levels]
        for i in range(len(fp.levels) - 1, -1, -1):
            lvl = fp.levels[i]
            b = lvl.vertex
            failed: list[int] = []
            for w in sorted(lvl.part.lab[lvl.cell:lvl.part.end[lvl.cell]]):
                if w == b or uf.find(w) == uf.find(b):
                    continue
                rw = uf.find(w)
                if any(uf.find(x) == rw for x in failed):
                    continue
                try:
                    c, _ = S.child(lvl.part, w, lvl.trace)
                    found = explore(c, i + 1, base[:i] + [w])
                except _Mismatch:
                    found = None
                if found is None:
                    failed.append(w)
                else:
                    gens.append(found)
                    uf.add_permutation(found)
    except BudgetExceeded:
        perms = tuple(Permutation(x) for x in gens)
        base = tuple(l.vertex for l in fp.levels) if fp else ()
        return AutomorphismResult("budget-exceeded", perms, base, None, time.monotonic() - t0, S.nodes)
    perms = tuple(Permutation(x) for x in gens)
    base = tuple(l.vertex for l in fp.levels)
    group = build_group(perms, g.n, base=base, base_is_complete=True)
    return AutomorphismResult("complete", perms, base, group, time.monotonic() - t0, S.nodes)


def automorphism_group(g: Graph, *, colors: Sequence[int] | None = None,
                       budget_seconds: float | None = None) -> PermutationGroup:
    """Aut(g) as a PermutationGroup; raises BudgetExceeded when out of time."""
    res = automorphism_search(g, colors=colors, budget_seconds=budget_seconds)
    if res.status != "complete":
        raise BudgetExceeded("automorphism search exceeded its time budget", res.generators)
    return res.group


def are_isomorphic(g1: Graph, g2: Graph, *, budget_seconds: float | None = None,
                   aut2: PermutationGroup | None = None) -> list[int] | None:
    """An isomorphism g1 -> g2 as an image list, or None when none exists.

    The first path of g1's search tree is matched against every path of g2's
    tree with identical refinement traces; automorphisms of g2 prune siblings.
    """
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return None
    if sorted(map(len, g1.adjacency)) != sorted(map(len, g2.adjacency)):
        return None
    t0 = time.monotonic()
    deadline = None if budget_seconds is None else t0 + budget_seconds
    if aut2 is None:
        left = None if deadline is None else max(deadline - time.monotonic(), 0.0)
        aut2 = automorphism_group(g2, budget_seconds=left)
    gens2 = [g.array for g in aut2.strong_generators]
    S1 = _Searcher(g1, None, deadline)
    S2 = _Searcher(g2, None, deadline)
    fp = S1.first_path()
    try:
        part, _ = S2.root(fp.root_trace)
    except _Mismatch:
        return None
    es1, es2 = _EdgeSet(g1), _EdgeSet(g2)
    leaf1 = np.array(fp.leaf, dtype=np.int64)

    def search(part: _Part, depth: int, prefix: list[int]) -> list[int] | None:
        S2.tick()
        if part.is_discrete():
            phi = np.empty(g1.n, dtype=np.int64)
            phi[leaf1] = part.lab
            return phi.tolist() if es1.maps_into(phi, es2) else None
        lvl = fp.levels[depth]
        s = part.target_cell()
        if s != lvl.cell:
            return None
        local = _UnionFind(g2.n)
        for x in gens2:
            if _fixes(x, prefix):
                local.add_permutation(x)
        failed: set[int] = set()
        for u in sorted(part.lab[s:part.end[s]]):
            r = local.find(u)
            if r in failed:
                continue
            try:
                c, _ = S2.child(part, u, lvl.trace)
            except _Mismatch:
                failed.add(r)
                continue
            found = search(c, depth + 1, prefix + [u])
            if found is not None:
                return found
            failed.add(r)
        return None

    return search(part, 0, [])

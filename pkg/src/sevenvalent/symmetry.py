"""s-arcs: counting, orbit tests, the transitivity degree, stabilizer tables.

An s-arc is a walk v0, ..., vs with consecutive vertices adjacent and
v_{i-1} != v_{i+1}.  Arc-transitivity at level s is decided by computing the
orbit of one s-arc under the group, coordinatewise, and comparing its size
with the total number of s-arcs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .automorphism import is_automorphism
from .graphs import Graph
from .numtheory import FactoredInteger
from .permgroup import PermutationGroup

MAX_ARC_TUPLES = 10 ** 7


@dataclass(frozen=True)
class StabilizerRow:
    s: int
    name: str
    order: FactoredInteger
    soluble: bool

    def to_json(self) -> dict:
        return {"s": self.s, "group": self.name, "order": self.order.to_json(), "soluble": self.soluble}


def _row(s, name, order, soluble):
    return StabilizerRow(s, name, FactoredInteger.parse(order), soluble)


# Vertex stabilizers of connected 7-valent (G,s)-transitive graphs.
STABILIZER_TABLE: tuple[StabilizerRow, ...] = (
    _row(1, "Z7", "7", True),
    _row(1, "F14", "2*7", True),
    _row(1, "F21", "3*7", True),
    _row(1, "F14xZ2", "2^2*7", True),
    _row(1, "F21xZ3", "3^2*7", True),
    _row(2, "F42", "2*3*7", True),
    _row(2, "F42xZ2", "2^2*3*7", True),
    _row(2, "F42xZ3", "2*3^2*7", True),
    _row(3, "F42xZ6", "2^2*3^2*7", True),
    _row(2, "PSL(3,2)", "2^3*3*7", False),
    _row(2, "ASL(3,2)", "2^6*3*7", False),
    _row(2, "ASL(3,2)xZ2", "2^7*3*7", False),
    _row(2, "A7", "2^3*3^2*5*7", False),
    _row(2, "S7", "2^4*3^2*5*7", False),
    _row(3, "PSL(3,2)xS4", "2^6*3^2*7", False),
    _row(3, "A7xA6", "2^6*3^4*5^2*7", False),
    _row(3, "S7xS6", "2^8*3^4*5^2*7", False),
    _row(3, "(A7xA6):Z2", "2^7*3^4*5^2*7", False),
    _row(3, "Z2^6:(SL(2,2)xSL(3,2))", "2^10*3^2*7", False),
    _row(3, "[2^20]:(SL(2,2)xSL(3,2))", "2^24*3^2*7", False),
)


def stabilizer_profile_check(order, s: int) -> list[StabilizerRow]:
    """Rows of the 7-valent stabilizer table with level s and the given order."""
    if s not in (1, 2, 3):
        raise ValueError("s must be 1, 2 or 3")
    order = order if isinstance(order, FactoredInteger) else FactoredInteger.from_int(int(order))
    return [r for r in STABILIZER_TABLE if r.s == s and r.order == order]


# ----------------------------------------------------------------------------
# counting


def _arc_arrays(g: Graph):
    deg = np.array([len(a) for a in g.adjacency], dtype=np.int64)
    indptr = np.concatenate([[0], np.cumsum(deg)])
    heads = np.array([v for a in g.adjacency for v in a], dtype=np.int64)
    tails = np.repeat(np.arange(g.n, dtype=np.int64), deg)
    return indptr, tails, heads


def count_s_arcs(g: Graph, s: int) -> int:
    """Number of s-arcs, by dynamic programming over arcs.

    c_t(u,v) counts s-walks without backtracking that start with the arc (u,v):
    c_{t+1}(u,v) = sum over w in N(v) of c_t(v,w), minus c_t(v,u).
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s == 0:
        return g.n
    indptr, tails, heads = _arc_arrays(g)
    keys = tails * g.n + heads
    rev = np.searchsorted(keys, heads * g.n + tails)
    c = np.ones(len(heads), dtype=object)
    for _ in range(s - 1):
        per_vertex = np.zeros(g.n, dtype=object)
        np.add.at(per_vertex, tails, c)
        c = per_vertex[heads] - c[rev]
    return int(c.sum())


def first_s_arc(g: Graph, s: int) -> tuple[int, ...] | None:
    """Lexicographically least s-arc, or None when there is none."""

    def extend(path):
        if len(path) == s + 1:
            return path
        for w in g.adjacency[path[-1]]:
            if len(path) >= 2 and w == path[-2]:
                continue
            found = extend(path + [w])
            if found:
                return found
        return None

    for v in range(g.n):
        found = extend([v])
        if found:
            return tuple(found)
    return None


class _ArcEncoder:
    """Dense integer codes for s-arcs: v0 followed by neighbour ranks."""

    def __init__(self, g: Graph, s: int):
        self.n = g.n
        self.s = s
        self.indptr, tails, heads = _arc_arrays(g)
        self.keys = tails * g.n + heads
        self.d = max((len(a) for a in g.adjacency), default=1) or 1
        self.space = g.n * self.d ** s

    def encode(self, arcs: np.ndarray) -> np.ndarray:
        code = arcs[:, 0].astype(np.int64)
        for i in range(self.s):
            u, v = arcs[:, i], arcs[:, i + 1]
            rank = np.searchsorted(self.keys, u * self.n + v) - self.indptr[u]
            code = code * self.d + rank
        return code


def s_arc_orbit_size(g: Graph, G: PermutationGroup, arc: tuple[int, ...]) -> int:
    s = len(arc) - 1
    enc = _ArcEncoder(g, s)
    if enc.space > 5 * MAX_ARC_TUPLES:
        raise MemoryError(f"s-arc code space {enc.space} exceeds the supported size")
    seen = np.zeros(enc.space, dtype=bool)
    frontier = np.array([arc], dtype=np.int64)
    seen[enc.encode(frontier)] = True
    size = 1
    gens = [np.asarray(x.array, dtype=np.int64) for x in G.generators]
    while len(frontier):
        nxt = []
        for a in gens:
            img = a[frontier]
            codes = enc.encode(img)
            fresh = ~seen[codes]
            if fresh.any():
                codes, idx = np.unique(codes[fresh], return_index=True)
                seen[codes] = True
                nxt.append(img[fresh][idx])
        frontier = np.concatenate(nxt) if nxt else np.empty((0, s + 1), dtype=np.int64)
        size += len(frontier)
        if size > MAX_ARC_TUPLES:
            raise MemoryError(f"s-arc orbit exceeds {MAX_ARC_TUPLES} tuples")
    return size


def _check_generators(g: Graph, G: PermutationGroup) -> None:
    if G.degree != g.n:
        raise ValueError(f"group degree {G.degree} differs from graph order {g.n}")
    for x in G.generators:
        if not is_automorphism(g, x):
            raise ValueError("a group generator is not an automorphism of the graph")


def is_s_arc_transitive(g: Graph, G: PermutationGroup, s: int, *, _checked: bool = False) -> bool:
    """True iff G is transitive on the s-arcs of g (vacuously false if there are none)."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    if not _checked:
        _check_generators(g, G)
    total = count_s_arcs(g, s)
    if total > MAX_ARC_TUPLES:
        raise MemoryError(f"{total} s-arcs exceed the cap of {MAX_ARC_TUPLES}")
    arc = first_s_arc(g, s)
    if arc is None:
        return False
    return s_arc_orbit_size(g, G, arc) == total


@dataclass(frozen=True)
class TransitivityReport:
    s: int
    per_level: tuple[bool, ...]          # levels 1, 2, ... as tested
    arc_counts: tuple[int, ...]
    stabilizer_order: FactoredInteger
    stabilizer_rows: tuple[StabilizerRow, ...]
    table_consulted: bool
    flags: tuple[str, ...] = ()

    @property
    def stabilizer_row(self) -> StabilizerRow | None:
        return self.stabilizer_rows[0] if self.stabilizer_rows else None

    def to_json(self) -> dict:
        return {"s": self.s, "per_level": list(self.per_level), "arc_counts": list(self.arc_counts),
                "stabilizer_order": self.stabilizer_order.to_json(),
                "table_consulted": self.table_consulted,
                "stabilizer_rows": [r.name for r in self.stabilizer_rows], "flags": list(self.flags)}


def transitivity_degree(g: Graph, G: PermutationGroup, max_s: int = 4) -> TransitivityReport:
    """Largest s <= max_s with G transitive on s-arcs (0 if not arc-transitive).

    Levels are probed upwards until the first failure.  For 7-valent graphs the
    stabilizer order is looked up in the stabilizer table; s = 4 or a missing
    row is flagged as an internal inconsistency.
    """
    _check_generators(g, G)
    per_level, counts = [], []
    s = 0
    for level in range(1, max_s + 1):
        counts.append(count_s_arcs(g, level))
        ok = is_s_arc_transitive(g, G, level, _checked=True)
        per_level.append(ok)
        if not ok:
            break
        s = level
    stab = G.stabilizer(0).factored_order() if g.n else FactoredInteger()
    flags = []
    consulted = g.valency() == 7 and 1 <= s
    rows: list[StabilizerRow] = []
    if consulted:
        if s > 3:
            flags.append(f"s = {s} exceeds 3: internal inconsistency for a 7-valent graph")
        else:
            rows = stabilizer_profile_check(stab, s)
            if not rows:
                flags.append(f"stabilizer order {stab} matches no table row at s = {s}")
    if s >= 1 and not G.is_transitive():
        flags.append("group is arc-transitive but not vertex-transitive (graph has isolated parts)")
    return TransitivityReport(s, tuple(per_level), tuple(counts), stab, tuple(rows), consulted, tuple(flags))

"""Permutation groups with a stabilizer chain.

Points are 0-based.  A permutation is stored as an immutable numpy image array,
and the product is composition of maps: (p * q)(i) = p(q(i)).

The chain is built by a deterministic incremental Schreier-Sims procedure.
Transversals are Schreier vectors (a parent point and a generator index per
orbit point), so that no transversal element is ever stored in full.  Sifting
evaluates the relevant words point by point; a full image array is formed only
when a nontrivial residue has to be recorded as a new strong generator.

When a base of an overgroup is known (subgroups, normal closures, point
stabilizers), the chain is built on that base and a residue fixing every base
point is known to be the identity, so the expensive full check disappears.
"""

from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .numtheory import FactoredInteger

IMAGE_DTYPE = np.int32


class Permutation:
    """A bijection of {0, ..., degree-1} given by its image list."""

    __slots__ = ("_a", "_hash")

    def __init__(self, images, *, check: bool = True):
        a = np.array(images, dtype=IMAGE_DTYPE).reshape(-1)
        if check:
            n = a.shape[0]
            if n and (a.min() < 0 or a.max() >= n or np.unique(a).shape[0] != n):
                raise ValueError("images do not form a permutation")
        a.setflags(write=False)
        self._a = a
        self._hash = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "Permutation":
        p = cls.__new__(cls)
        a = np.ascontiguousarray(a, dtype=IMAGE_DTYPE)
        a.setflags(write=False)
        p._a = a
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(np.arange(degree, dtype=IMAGE_DTYPE))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        a = list(range(degree))
        for cyc in cycles:
            cyc = list(cyc)
            for i, x in enumerate(cyc):
                a[x] = cyc[(i + 1) % len(cyc)]
        return cls(a)

    @classmethod
    def from_text(cls, line: str) -> "Permutation":
        return cls([int(x) for x in line.split()])

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def degree(self) -> int:
        return int(self._a.shape[0])

    def tolist(self) -> list[int]:
        return self._a.tolist()

    def to_text(self) -> str:
        return " ".join(map(str, self.tolist()))

    def __call__(self, i: int) -> int:
        return int(self._a[i])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._a)
        inv[self._a] = np.arange(self._a.shape[0], dtype=IMAGE_DTYPE)
        return Permutation._wrap(inv)

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = np.arange(self.degree, dtype=IMAGE_DTYPE)
        base = self._a
        while k:
            if k & 1:
                result = base[result]
            base = base[base]
            k >>= 1
        return Permutation._wrap(result)

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._a, np.arange(self.degree)))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        a = self.tolist()
        seen = [False] * len(a)
        out = []
        for i in range(len(a)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = a[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = a[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True))) if self.degree else 1

    def support(self) -> list[int]:
        return np.flatnonzero(self._a != np.arange(self.degree)).tolist()

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self._a, other._a)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._a.tobytes())
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self.tolist() < other.tolist()

    def __repr__(self) -> str:
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation<{self.degree}>{body}"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(i) = p(q(i))."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation._wrap(p.array[q.array])


# ----------------------------------------------------------------------------
# stabilizer chain internals


class _Gen:
    """A strong generator with list copies for fast pointwise evaluation."""

    __slots__ = ("arr", "invarr", "img", "inv")

    def __init__(self, arr: np.ndarray):
        self.arr = np.ascontiguousarray(arr, dtype=IMAGE_DTYPE)
        self.img = self.arr.tolist()
        inv = np.empty_like(self.arr)
        inv[self.arr] = np.arange(self.arr.shape[0], dtype=IMAGE_DTYPE)
        self.invarr = inv
        self.inv = inv.tolist()


class _Level:
    """One basic orbit: base point, generator indices, Schreier vector."""

    __slots__ = ("point", "gens", "parent", "via", "orbit", "_paths", "checked")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[int] = []
        self.parent: dict[int, int] = {point: -1}
        self.via: dict[int, int] = {point: -1}
        self.orbit: list[int] = [point]
        self._paths: dict[int, tuple[int, ...]] = {point: ()}
        self.checked: set[tuple[int, int]] = set()

    def extend(self, gens: list[_Gen]):
        """Grow the Schreier tree under all level generators (old entries keep their paths)."""
        queue = deque(self.orbit)
        while queue:
            x = queue.popleft()
            for j in self.gens:
                g = gens[j]
                # Inverse edges too: this roughly halves the tree depth.
                for code, y in ((2 * j, g.img[x]), (2 * j + 1, g.inv[x])):
                    if y not in self.parent:
                        self.parent[y] = x
                        self.via[y] = code
                        self.orbit.append(y)
                        queue.append(y)

    def path(self, x: int) -> tuple[int, ...]:
        """Letter codes c1, c2, ... with u_x = L(c1) * L(c2) * ... (root end last).

        A code 2j stands for generator j and 2j+1 for its inverse.
        """
        p = self._paths.get(x)
        if p is None:
            chain = []
            y = x
            while y not in self._paths:
                chain.append(y)
                y = self.parent[y]
            p = self._paths[y]
            for z in reversed(chain):
                p = (self.via[z],) + p
                self._paths[z] = p
        return p


def _apply_word(word: list[tuple[int, bool]], gens: list[_Gen], x: int) -> int:
    """Evaluate a word (rightmost letter acts first) at a point."""
    for j, inverse in reversed(word):
        g = gens[j]
        x = g.inv[x] if inverse else g.img[x]
    return x


def _word_array(word: list[tuple[int, bool]], gens: list[_Gen], n: int) -> np.ndarray:
    r = np.arange(n, dtype=IMAGE_DTYPE)
    for j, inverse in reversed(word):
        g = gens[j]
        r = (g.invarr if inverse else g.arr)[r]
    return r


class _Chain:
    """Mutable stabilizer chain used during construction."""

    def __init__(self, degree: int, base: Sequence[int] = (), complete_base: bool = False):
        self.n = degree
        self.gens: list[_Gen] = []
        self.levels: list[_Level] = [_Level(b) for b in dict.fromkeys(base)]
        self.complete_base = complete_base

    # -- words -------------------------------------------------------------
    def _u_word(self, lvl: _Level, x: int) -> list[tuple[int, bool]]:
        return [(c >> 1, bool(c & 1)) for c in lvl.path(x)]

    def _u_inv_word(self, lvl: _Level, x: int) -> list[tuple[int, bool]]:
        return [(c >> 1, not (c & 1)) for c in reversed(lvl.path(x))]

    def _sift_word(self, word, start: int):
        """Strip a word through levels >= start.

        Returns (word, level) where level is the first level whose base image
        leaves the basic orbit, or len(levels) when all base points were fixed.
        """
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            y = _apply_word(word, self.gens, lvl.point)
            if y not in lvl.parent:
                return word, i
            if y != lvl.point:
                word = self._u_inv_word(lvl, y) + word
        return word, len(self.levels)

    # -- construction ------------------------------------------------------
    def _add_strong_generator(self, arr: np.ndarray, upto: int):
        """Record arr as a generator of levels 0..upto (it fixes the earlier base points)."""
        self.gens.append(_Gen(arr))
        j = len(self.gens) - 1
        for i in range(upto + 1):
            self.levels[i].gens.append(j)
            self.levels[i].extend(self.gens)

    def _new_base_point(self, arr: np.ndarray) -> None:
        moved = np.flatnonzero(arr != np.arange(self.n))
        self.levels.append(_Level(int(moved[0])))

    def add_generator(self, arr: np.ndarray) -> bool:
        """Insert a group element; returns False if it was already a member."""
        arr = np.asarray(arr, dtype=IMAGE_DTYPE)
        self.gens.append(_Gen(arr))
        word, i = self._sift_word([(len(self.gens) - 1, False)], 0)
        residue_gen = self.gens.pop()
        if i == len(self.levels):
            res = _word_array(word, self.gens + [residue_gen], self.n)
            if np.array_equal(res, np.arange(self.n)):
                return False
            if self.complete_base:
                raise ValueError("element is not in the group with the given base")
            self._new_base_point(res)
        else:
            res = _word_array(word, self.gens + [residue_gen], self.n)
        self._add_strong_generator(res, i)
        self._complete()
        return True

    def _complete(self):
        """Schreier-Sims: sift every unchecked Schreier generator, bottom level first."""
        i = len(self.levels) - 1
        while i >= 0:
            lvl = self.levels[i]
            restart = None
            for x in list(lvl.orbit):
                for j in list(lvl.gens):
                    if (x, j) in lvl.checked:
                        continue
                    y = self.gens[j].img[x]
                    if lvl.parent.get(y) == x and lvl.via[y] == 2 * j:
                        lvl.checked.add((x, j))  # tree edge: trivially the identity
                        continue
                    # Schreier generator u_y^-1 g_j u_x, which fixes the base point.
                    word = self._u_inv_word(lvl, y) + [(j, False)] + self._u_word(lvl, x)
                    word, k = self._sift_word(word, i + 1)
                    if k == len(self.levels):
                        if self.complete_base:
                            lvl.checked.add((x, j))
                            continue
                        res = _word_array(word, self.gens, self.n)
                        if np.array_equal(res, np.arange(self.n)):
                            lvl.checked.add((x, j))
                            continue
                        self._new_base_point(res)
                    else:
                        res = _word_array(word, self.gens, self.n)
                    self._add_strong_generator_from(res, i + 1, k)
                    restart = k
                    break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart

    def _add_strong_generator_from(self, arr: np.ndarray, lo: int, hi: int):
        self.gens.append(_Gen(arr))
        j = len(self.gens) - 1
        for t in range(lo, hi + 1):
            self.levels[t].gens.append(j)
            self.levels[t].extend(self.gens)

    def prune(self):
        """Drop trivial levels at the end (base points nobody moves)."""
        while self.levels and len(self.levels[-1].orbit) == 1 and not self.complete_base:
            self.levels.pop()


# ----------------------------------------------------------------------------
# the group


class PermutationGroup:
    """A permutation group together with a base and strong generating set.

    Build instances with ``build_group``; the object is read-only afterwards.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], chain: _Chain):
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self._chain = chain
        self._order = math.prod(len(l.orbit) for l in chain.levels)

    # -- basic data --------------------------------------------------------
    @property
    def base(self) -> tuple[int, ...]:
        return tuple(l.point for l in self._chain.levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        return tuple(Permutation._wrap(g.arr) for g in self._chain.gens)

    @property
    def basic_orbits(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(l.orbit) for l in self._chain.levels)

    @property
    def order(self) -> int:
        return self._order

    def factored_order(self) -> FactoredInteger:
        out = FactoredInteger()
        for l in self._chain.levels:
            if len(l.orbit) > 1:
                out = out * FactoredInteger.from_int(len(l.orbit))
        return out

    def __len__(self) -> int:
        return self._order

    def is_trivial(self) -> bool:
        return self._order == 1

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, order={self._order})"

    # -- transversals ------------------------------------------------------
    def transversal_element(self, level: int, point: int) -> Permutation:
        """u with u(base[level]) = point, from the level's Schreier vector."""
        lvl = self._chain.levels[level]
        word = self._chain._u_word(lvl, point)
        return Permutation._wrap(_word_array(word, self._chain.gens, self.degree))

    # -- membership --------------------------------------------------------
    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        ch = self._chain
        ch.gens.append(_Gen(p.array))
        try:
            word, i = ch._sift_word([(len(ch.gens) - 1, False)], 0)
            res = _word_array(word, ch.gens, self.degree)
        finally:
            ch.gens.pop()
        return Permutation._wrap(res), i

    def contains(self, p: Permutation) -> bool:
        res, i = self.sift(p)
        return i == len(self._chain.levels) and res.is_identity()

    __contains__ = contains

    # -- orbits ------------------------------------------------------------
    def orbit(self, point: int) -> set[int]:
        return set(self.orbit_list(point))

    def orbit_list(self, point: int) -> list[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        imgs = [g.tolist() for g in self.generators]
        seen = {point}
        out = [point]
        k = 0
        while k < len(out):
            x = out[k]
            k += 1
            for g in imgs:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def orbits(self) -> list[list[int]]:
        """All orbits, each sorted, in order of smallest element."""
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x, y in enumerate(g.tolist()):
                a, b = find(x), find(y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for x in range(self.degree):
            groups.setdefault(find(x), []).append(x)
        return [groups[k] for k in sorted(groups)]

    def is_transitive(self) -> bool:
        return self.degree <= 1 or len(self.orbit_list(0)) == self.degree

    def is_semiregular(self) -> bool:
        return all(len(o) == self._order for o in self.orbits())

    # -- subgroups ---------------------------------------------------------
    def subgroup(self, gens: Sequence[Permutation]) -> "PermutationGroup":
        """Subgroup generated by members of self, built on this group's base."""
        return build_group(gens, self.degree, base=self.base, base_is_complete=True)

    def stabilizer(self, point: int) -> "PermutationGroup":
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        g = build_group(self.strong_generators, self.degree, base=(point,) + self.base,
                        base_is_complete=True)
        lvl = g._chain.levels
        fixed = [Permutation._wrap(g._chain.gens[j].arr) for j in lvl[1].gens] if len(lvl) > 1 else []
        return build_group(fixed, self.degree, base=g.base[1:], base_is_complete=True)

    def with_base_prefix(self, prefix: Sequence[int]) -> "PermutationGroup":
        """The same group with a chain whose base starts with ``prefix``."""
        return build_group(self.strong_generators, self.degree,
                           base=tuple(prefix) + self.base, base_is_complete=True)

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return other.order % self.order == 0 and all(other.contains(g) for g in self.generators)

    def is_normal_in(self, G: "PermutationGroup") -> bool:
        return all(self.contains(h.conjugate(g)) for h in self.generators for g in G.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order == other.order
                and all(other.contains(g) for g in self.generators))

    __hash__ = object.__hash__

    # -- elements ----------------------------------------------------------
    def random_element(self, rng: random.Random) -> Permutation:
        """Uniformly random element: a product of random transversal elements."""
        ch = self._chain
        word = []
        for lvl in ch.levels:
            x = lvl.orbit[rng.randrange(len(lvl.orbit))]
            word += ch._u_word(lvl, x)
        return Permutation._wrap(_word_array(word, ch.gens, self.degree))

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once (product of one transversal element per level)."""
        ch = self._chain
        levels = ch.levels
        trans = [[_word_array(ch._u_word(l, x), ch.gens, self.degree) for x in l.orbit] for l in levels]

        def rec(i, acc):
            if i < 0:
                yield Permutation._wrap(acc)
                return
            for u in trans[i]:
                yield from rec(i - 1, u[acc])

        yield from rec(len(levels) - 1, np.arange(self.degree, dtype=IMAGE_DTYPE))

    def element_order_counts(self) -> Counter:
        return Counter(g.order() for g in self.elements())

    # -- file format -------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"{self.degree} {len(self.generators)}"]
        lines += [g.to_text() for g in self.generators]
        return "\n".join(lines) + "\n"


def build_group(gens: Iterable[Permutation], degree: int | None = None, *,
                base: Sequence[int] = (), base_is_complete: bool = False) -> PermutationGroup:
    """Construct a group with a stabilizer chain from generators.

    ``base`` gives an initial base prefix.  ``base_is_complete`` asserts that
    it is a base for a group containing all generators, which lets sifting
    stop at base images.
    """
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree required for the trivial group")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
    chain = _Chain(degree, base, complete_base=base_is_complete)
    for g in gens:
        if not g.is_identity():
            chain.add_generator(g.array)
    chain.prune()
    return PermutationGroup(degree, gens, chain)


def order(G: PermutationGroup) -> FactoredInteger:
    return G.factored_order()


def orbit(G: PermutationGroup, point: int) -> set[int]:
    return G.orbit(point)


def stabilizer(G: PermutationGroup, point: int) -> PermutationGroup:
    return G.stabilizer(point)


def contains(G: PermutationGroup, p: Permutation) -> bool:
    return G.contains(p)


def is_semiregular(G: PermutationGroup) -> bool:
    return G.is_semiregular()


# ----------------------------------------------------------------------------
# normal structure


def normal_closure(G: PermutationGroup, H_gens: Sequence[Permutation]) -> PermutationGroup:
    """Smallest normal subgroup of G containing H_gens."""
    for h in H_gens:
        if not G.contains(h):
            raise ValueError("normal_closure: element not in G")
    chain = _Chain(G.degree, G.base, complete_base=True)
    gens: list[Permutation] = []
    for h in H_gens:
        if chain.add_generator(h.array):
            gens.append(h)
    ginv = [(g.array, g.inverse().array) for g in G.generators]
    i = 0
    while i < len(gens):
        h = gens[i].array
        i += 1
        for g, gi in ginv:
            c = gi[h[g]]
            if chain.add_generator(c):
                gens.append(Permutation._wrap(c))
    return PermutationGroup(G.degree, gens or [G.identity()], chain)


@dataclass
class MinimalNormalResult:
    subgroups: list[PermutationGroup]
    completeness: str  # "exhaustive" or "sampled"
    prime_classes: int
    closures_computed: int
    samples: int = 0


EXHAUSTIVE_LIMIT = 10 ** 6


def _transversal_arrays(G: PermutationGroup, level: int) -> list[np.ndarray]:
    ch = G._chain
    lvl = ch.levels[level]
    return [_word_array(ch._u_word(lvl, x), ch.gens, G.degree) for x in lvl.orbit]


def _prime_order_class_reps_exhaustive(G: PermutationGroup) -> list[Permutation]:
    """One representative of each conjugacy class of elements of prime order.

    Elements are enumerated as products u_0 u_1 ... u_{k-1} of transversal
    elements, but only their images on a small point set P are kept: the base
    points plus their images under the generators.  That suffices to compute
    the base images of every conjugate, and base images identify elements.
    """
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    n = G.degree
    levels = G._chain.levels
    k = len(levels)
    base = [l.point for l in levels]
    gens = [g.array for g in G.generators if not g.is_identity()]
    P = list(dict.fromkeys(base + [int(g[b]) for g in gens for b in base]))
    # Q_i = points reachable from P under the stabilizer G^(i); u_i is only needed there.
    sub_gens = [[ch_g.img for ch_g in (G._chain.gens[j] for j in l.gens)] for l in levels]
    reach: list[list[int]] = []
    for i in range(k + 1):
        pts = set(P)
        if i < k:
            frontier = list(pts)
            while frontier:
                x = frontier.pop()
                for img in sub_gens[i]:
                    y = img[x]
                    if y not in pts:
                        pts.add(y)
                        frontier.append(y)
        reach.append(sorted(pts))
    # deepest first: images of P under elements of G^(i)
    A = np.array([P], dtype=np.int64)
    for i in range(k - 1, -1, -1):
        Q = reach[i + 1]
        pos = np.full(n, -1, dtype=np.int64)
        pos[Q] = np.arange(len(Q))
        U = np.array([u[Q] for u in _transversal_arrays(G, i)], dtype=np.int64)  # (|orbit|, |Q|)
        A = U[:, pos[A]].reshape(-1, len(P))
    order = A.shape[0]
    assert order == G.order
    radix = np.int64(n)
    if k * math.log2(max(n, 2)) < 62:
        keys = np.zeros(order, dtype=np.int64)
        for j in range(k):
            keys = keys * radix + A[:, j]
        key_of = lambda cols: _keys_from(cols, radix)
    else:  # fall back to row identity via a structured view
        raise ValueError("base too long for integer keys")
    sorter = np.argsort(keys)
    sorted_keys = keys[sorter]
    col = {p: t for t, p in enumerate(P)}
    rows, cols = [], []
    for g in gens:
        gi = np.empty(n, dtype=np.int64)
        gi[g] = np.arange(n)
        # (g^-1 x g)(b) = g^-1(x(g(b)))
        conj = np.stack([gi[A[:, col[int(g[b])]]] for b in base], axis=1)
        idx = sorter[np.searchsorted(sorted_keys, key_of(conj))]
        rows.append(np.arange(order))
        cols.append(idx)
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        graph = coo_matrix((np.ones(r.shape[0], dtype=np.int8), (r, c)), shape=(order, order))
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = np.arange(order)
    _, first = np.unique(labels, return_index=True)
    reps = []
    radices = [len(l.orbit) for l in levels]
    trans_cache: dict[int, list[np.ndarray]] = {}
    for idx in sorted(first.tolist()):
        digits = []
        rem = idx
        for i in range(k - 1, -1, -1):
            digits.append(rem % radices[i])
            rem //= radices[i]
        digits.reverse()
        # row index = d_0 * |G^(1)| + ..., element u_0[d_0] u_1[d_1] ...
        acc = np.arange(n, dtype=IMAGE_DTYPE)
        for i in range(k - 1, -1, -1):
            if i not in trans_cache:
                trans_cache[i] = _transversal_arrays(G, i)
            acc = trans_cache[i][digits[i]][acc]
        x = Permutation._wrap(acc)
        o = x.order()
        if o > 1 and _is_prime_small(o):
            reps.append(x)
    return reps


def _keys_from(cols: np.ndarray, radix) -> np.ndarray:
    keys = np.zeros(cols.shape[0], dtype=np.int64)
    for j in range(cols.shape[1]):
        keys = keys * radix + cols[:, j]
    return keys


def _is_prime_small(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, math.isqrt(n) + 1))


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_proper_subgroup(M: PermutationGroup, N: PermutationGroup) -> bool:
    return M.order < N.order and N.order % M.order == 0 and all(N.contains(g) for g in M.generators)


def find_minimal_normal_subgroups(G: PermutationGroup, *, seed: int = 0,
                                  exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                                  stable_rounds: int = 64,
                                  max_samples: int = 20000) -> MinimalNormalResult:
    """Minimal normal subgroups as the minimal normal closures of prime-order elements.

    Every minimal normal subgroup N is the normal closure of any of its
    prime-order elements, so it suffices to close one element per class.  For
    |G| up to ``exhaustive_limit`` the classes are found exactly; above it they
    are sampled (seeded) until no new closure has appeared for
    ``stable_rounds`` consecutive samples.
    """
    if G.order == 1:
        raise ValueError("the trivial group has no minimal normal subgroups")
    closures: list[PermutationGroup] = []

    def add_closure(x: Permutation) -> bool:
        M = normal_closure(G, [x])
        if any(M.order == C.order and M.is_subgroup_of(C) for C in closures):
            return False
        closures.append(M)
        return True

    samples = 0
    if G.order <= exhaustive_limit:
        reps = _prime_order_class_reps_exhaustive(G)
        for x in reps:
            add_closure(x)
        completeness, nclasses = "exhaustive", len(reps)
    else:
        rng = random.Random(seed)
        seen_keys: set = set()
        stable = 0
        while stable < stable_rounds and samples < max_samples:
            samples += 1
            x = G.random_element(rng)
            o = x.order()
            new = False
            for p in _prime_divisors(o):
                y = x ** (o // p)
                key = (p, y.cycle_type())
                if key in seen_keys:
                    continue
                seen_keys.add(key)
                new |= add_closure(y)
            stable = 0 if new else stable + 1
        completeness, nclasses = "sampled", len(seen_keys)
    for N in closures:
        if not N.is_normal_in(G):  # pragma: no cover - closure is normal by construction
            raise AssertionError("normal closure failed verification")
    minimal = [N for N in closures if not any(_is_proper_subgroup(M, N) for M in closures)]
    unique: list[PermutationGroup] = []
    for N in minimal:
        if not any(N.order == M.order and N.is_subgroup_of(M) for M in unique):
            unique.append(N)
    unique.sort(key=lambda N: (N.order, [g.tolist() for g in N.generators]))
    return MinimalNormalResult(unique, completeness, nclasses, len(closures), samples)


def minimal_normal_subgroups(G: PermutationGroup, *, seed: int = 0) -> list[PermutationGroup]:
    return find_minimal_normal_subgroups(G, seed=seed).subgroups


# ----------------------------------------------------------------------------
# coset actions


class _CosetCanonizer:
    """Canonical representative of a left coset xH: the lexicographically least x*h."""

    def __init__(self, H: PermutationGroup):
        n = H.degree
        full = build_group(H.strong_generators, n, base=tuple(range(n)), base_is_complete=True)
        self.levels = []
        for i, lvl in enumerate(full._chain.levels):
            if len(lvl.orbit) > 1:
                orb = np.array(lvl.orbit, dtype=np.int64)
                trans = _transversal_arrays(full, i)
                self.levels.append((orb, trans))

    def canon(self, x: np.ndarray) -> np.ndarray:
        u = x
        for orb, trans in self.levels:
            t = int(np.argmin(u[orb]))
            if t:
                u = u[trans[t]]
        return u


@dataclass
class CosetAction:
    group: PermutationGroup
    representatives: list[Permutation]
    faithful: bool
    subgroup_order: int
    _canon: _CosetCanonizer = field(repr=False, default=None)
    _index: dict = field(repr=False, default_factory=dict)

    def coset_index(self, x: Permutation) -> int:
        """Index of the coset xH."""
        return self._index[self._canon.canon(x.array).tobytes()]

    def action_of(self, x: Permutation) -> Permutation:
        """The permutation induced on cosets by an element x of the parent group."""
        return Permutation._wrap(np.array(
            [self.coset_index(x * r) for r in self.representatives], dtype=IMAGE_DTYPE))


def coset_action_details(G: PermutationGroup, H_gens: Sequence[Permutation]) -> CosetAction:
    """Action of G by left multiplication on the left cosets xH.

    Points are cosets numbered in breadth-first order from H itself, whose
    number is 0.  (Right cosets Hx with right multiplication give an
    equivalent action via x -> x^-1.)
    """
    for h in H_gens:
        if not G.contains(h):
            raise ValueError("coset_action: H is not a subgroup of G")
    H = G.subgroup(H_gens) if H_gens else build_group([], G.degree)
    canon = _CosetCanonizer(H)
    ident = np.arange(G.degree, dtype=IMAGE_DTYPE)
    first = canon.canon(ident)
    reps = [Permutation._wrap(first)]
    index = {first.tobytes(): 0}
    gens = [g.array for g in G.generators]
    images = [[] for _ in gens]
    k = 0
    while k < len(reps):
        x = reps[k].array
        k += 1
        for t, g in enumerate(gens):
            y = canon.canon(g[x])
            key = y.tobytes()
            j = index.get(key)
            if j is None:
                j = len(reps)
                index[key] = j
                reps.append(Permutation._wrap(y))
            images[t].append(j)
    m = len(reps)
    if m * H.order != G.order:
        raise AssertionError("coset enumeration inconsistent with |G:H|")
    perms = [Permutation._wrap(np.array(img, dtype=IMAGE_DTYPE)) for img in images]
    A = build_group(perms, m)
    return CosetAction(A, reps, A.order == G.order, H.order, canon, index)


def coset_action(G: PermutationGroup, H_gens: Sequence[Permutation]) -> PermutationGroup:
    return coset_action_details(G, H_gens).group


# ----------------------------------------------------------------------------
# text formats


def read_group_text(text: str) -> list[Permutation]:
    """Parse 'degree k' followed by k permutation lines."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty group file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("group file header must be 'degree k'")
    degree, k = int(head[0]), int(head[1])
    perms = [Permutation.from_text(ln) for ln in lines[1:1 + k]]
    if len(perms) != k or any(p.degree != degree for p in perms):
        raise ValueError("group file does not match its header")
    return perms


def write_group_text(degree: int, gens: Sequence[Permutation]) -> str:
    return "\n".join([f"{degree} {len(gens)}"] + [g.to_text() for g in gens]) + "\n"

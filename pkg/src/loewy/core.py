"""
Finite bounded lattices stored as dense tables.

A lattice is built once from its cover relation (the Hasse diagram). The
order relation, meet table and join table are computed at construction, so
every later query is a table lookup. Elements are kept in a canonical
linear extension of the order: topological, with ties broken by comparing
identifiers as strings.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
    E_CYCLE,
    E_DUP_ELEM,
    E_INDEX,
    E_NO_BOUND,
    E_NOT_COMPARABLE,
    E_NOT_COVER,
    E_NOT_LATTICE,
    E_TOO_LARGE,
    E_UNKNOWN_ELEM,
    LatticeError,
)


@dataclass
class Limits:
    """Size caps. ``max_size`` can be set with the LATTICE_MAX_N environment variable."""

    max_size: int = 4096
    scan_max: int = 512
    iso_max: int = 64
    max_divisors: int = 4096


def _limits_from_env() -> Limits:
    limits = Limits()
    raw = os.environ.get("LATTICE_MAX_N")
    if raw:
        try:
            limits.max_size = int(raw)
        except ValueError:
            pass
    return limits


LIMITS = _limits_from_env()


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class FiniteLattice:
    """
    Immutable finite bounded lattice on indices ``0..N-1``.

    Index order is a linear extension of the order, so ``bottom == 0`` and
    ``top == N-1``. Two lattices compare equal when they have the same
    element identifiers in the same order and the same covers; the name is
    a label only.
    """

    def __init__(self, name, elements, leq, covers, meet_table, join_table):
        self.name = name
        self.elements: tuple[str, ...] = tuple(elements)
        self.leq: np.ndarray = _readonly(leq)
        self.covers: tuple[tuple[int, int], ...] = tuple(covers)
        self.meet_table: np.ndarray = _readonly(meet_table)
        self.join_table: np.ndarray = _readonly(join_table)
        self.bottom = 0
        self.top = len(self.elements) - 1
        self._index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        ups: list[list[int]] = [[] for _ in range(n)]
        downs: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.covers:
            ups[a].append(b)
            downs[b].append(a)
        self.upper_covers: tuple[tuple[int, ...], ...] = tuple(tuple(u) for u in ups)
        self.lower_covers: tuple[tuple[int, ...], ...] = tuple(tuple(d) for d in downs)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(range(len(self.elements)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.elements, self.covers))

    def __repr__(self) -> str:
        return f"FiniteLattice({self.name!r}, n={len(self)})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise LatticeError(E_UNKNOWN_ELEM, f"no element {label!r} in {self.name}") from None

    def label(self, i: int) -> str:
        return self.elements[i]

    def labels(self, indices: Iterable[int]) -> list[str]:
        return [self.elements[i] for i in indices]

    def check_index(self, i) -> int:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < len(self.elements):
            raise LatticeError(E_INDEX, f"index {i!r} out of range for {self.name} (n={len(self)})")
        return int(i)

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def meet_all(self, items: Iterable[int]) -> int:
        acc = self.top
        for x in items:
            acc = int(self.meet_table[acc, x])
        return acc

    def join_all(self, items: Iterable[int]) -> int:
        acc = self.bottom
        for x in items:
            acc = int(self.join_table[acc, x])
        return acc

    def cover_labels(self) -> list[tuple[str, str]]:
        return [(self.elements[a], self.elements[b]) for a, b in self.covers]


@dataclass(frozen=True)
class ElementSet:
    """A subset of a lattice's elements, kept in canonical element order."""

    lattice: FiniteLattice
    members: tuple[int, ...]

    def __post_init__(self):
        n = len(self.lattice)
        for m in self.members:
            if not 0 <= m < n:
                raise LatticeError(E_INDEX, f"member {m} out of range")
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, i):
        return i in self.members

    def labels(self) -> list[str]:
        return self.lattice.labels(self.members)

    def label_set(self) -> set[str]:
        return set(self.labels())


class Sublattice(NamedTuple):
    lattice: FiniteLattice
    embedding: tuple[int, ...]  # sub index -> parent index


def _canonical_order(elements: Sequence[str], ups: list[list[int]], indeg: list[int]) -> list[int]:
    heap = [(elements[i], i) for i in range(len(elements)) if indeg[i] == 0]
    heapq.heapify(heap)
    indeg = list(indeg)
    order = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in ups[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (elements[j], j))
    return order


def _compute_join(leq: np.ndarray, ups: Sequence[Sequence[int]], dtype, top: int) -> np.ndarray:
    # Reverse topological sweep: join(a, b) is the least of join(c, b) over
    # upper covers c of a; each candidate must sit above the chosen one.
    n = leq.shape[0]
    join = np.empty((n, n), dtype=dtype)
    join[top, :] = top
    for a in range(n - 1, -1, -1):
        if a == top:
            continue
        cover_rows = join[list(ups[a])]
        best = cover_rows.min(axis=0)
        ok = leq[best[None, :], cover_rows].all(axis=0)
        below = leq[:, a]
        ok |= below
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            raise LatticeError(E_NOT_LATTICE, f"pair ({a}, {b}) has no least upper bound")
        best = np.where(below, a, best)
        join[a, :] = best
    return join


def _compute_meet(leq: np.ndarray, downs: Sequence[Sequence[int]], dtype, bottom: int) -> np.ndarray:
    n = leq.shape[0]
    meet = np.empty((n, n), dtype=dtype)
    meet[bottom, :] = bottom
    for a in range(n):
        if a == bottom:
            continue
        cover_rows = meet[list(downs[a])]
        best = cover_rows.max(axis=0)
        ok = leq[cover_rows, best[None, :]].all(axis=0)
        above = leq[a, :]
        ok |= above
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            raise LatticeError(E_NOT_LATTICE, f"pair ({a}, {b}) has no greatest lower bound")
        meet[a, :] = np.where(above, a, best)
    return meet


def build_from_covers(elements: Sequence[str], covers: Iterable[tuple[str, str]], name: str = "lattice",
                      max_size: int | None = None) -> FiniteLattice:
    """
    Build and validate a lattice from identifiers and cover pairs ``(lower, upper)``.

    Raises LatticeError with code E_DUP_ELEM, E_UNKNOWN_ELEM, E_CYCLE,
    E_NOT_COVER, E_NO_BOUND, E_NOT_LATTICE or E_TOO_LARGE.
    """
    elements = [str(e) for e in elements]
    cap = LIMITS.max_size if max_size is None else max_size
    if not elements:
        raise LatticeError(E_NO_BOUND, "empty element list")
    if len(elements) > cap:
        raise LatticeError(E_TOO_LARGE, f"{len(elements)} elements exceeds cap {cap}")
    pos = {}
    for i, e in enumerate(elements):
        if not e or any(ch.isspace() for ch in e):
            raise LatticeError(E_UNKNOWN_ELEM, f"bad identifier {e!r}")
        if e in pos:
            raise LatticeError(E_DUP_ELEM, f"repeated identifier {e!r}")
        pos[e] = i

    n = len(elements)
    ups: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    seen = set()
    for lo, hi in covers:
        lo, hi = str(lo), str(hi)
        if lo not in pos or hi not in pos:
            missing = lo if lo not in pos else hi
            raise LatticeError(E_UNKNOWN_ELEM, f"cover references undeclared {missing!r}")
        a, b = pos[lo], pos[hi]
        if a == b:
            raise LatticeError(E_CYCLE, f"self-cover on {lo!r}")
        if (a, b) in seen:
            raise LatticeError(E_NOT_COVER, f"cover ({lo}, {hi}) declared twice")
        seen.add((a, b))
        ups[a].append(b)
        indeg[b] += 1

    order = _canonical_order(elements, ups, indeg)
    if len(order) < n:
        stuck = sorted(elements[i] for i in set(range(n)) - set(order))
        raise LatticeError(E_CYCLE, f"order relation has a cycle through {stuck[:5]}")

    # Relabel into canonical order.
    new_of = {old: new for new, old in enumerate(order)}
    labels = [elements[old] for old in order]
    new_ups: list[list[int]] = [[] for _ in range(n)]
    new_downs: list[list[int]] = [[] for _ in range(n)]
    for old_a in range(n):
        for old_b in ups[old_a]:
            a, b = new_of[old_a], new_of[old_b]
            new_ups[a].append(b)
            new_downs[b].append(a)
    for lst in new_ups:
        lst.sort()
    for lst in new_downs:
        lst.sort()

    minimal = [i for i in range(n) if not new_downs[i]]
    maximal = [i for i in range(n) if not new_ups[i]]
    if len(minimal) != 1:
        raise LatticeError(E_NO_BOUND, f"no unique bottom: minimal elements {labels_of(labels, minimal)}")
    if len(maximal) != 1:
        raise LatticeError(E_NO_BOUND, f"no unique top: maximal elements {labels_of(labels, maximal)}")

    leq = np.zeros((n, n), dtype=bool)
    for a in range(n - 1, -1, -1):
        leq[a, a] = True
        for b in new_ups[a]:
            leq[a] |= leq[b]

    strict = leq.copy()
    np.fill_diagonal(strict, False)
    for a in range(n):
        cs = new_ups[a]
        if len(cs) < 2:
            continue
        redundant = strict[np.ix_(cs, cs)].any(axis=0)
        if redundant.any():
            b = cs[int(np.flatnonzero(redundant)[0])]
            raise LatticeError(E_NOT_COVER, f"pair ({labels[a]}, {labels[b]}) is implied transitively")

    dtype = np.int16 if n < 2**15 else np.int32
    join = _compute_join(leq, new_ups, dtype, n - 1)
    meet = _compute_meet(leq, new_downs, dtype, 0)
    cover_pairs = sorted((a, b) for a in range(n) for b in new_ups[a])
    return FiniteLattice(name, labels, leq, cover_pairs, meet, join)


def labels_of(labels, idx):
    return [labels[i] for i in idx]


def meet(L: FiniteLattice, a: int, b: int) -> int:
    return L.meet(L.check_index(a), L.check_index(b))


def join(L: FiniteLattice, a: int, b: int) -> int:
    return L.join(L.check_index(a), L.check_index(b))


def interval(L: FiniteLattice, a: int, b: int) -> Sublattice:
    """The sublattice {x : a <= x <= b} and its embedding back into L."""
    a, b = L.check_index(a), L.check_index(b)
    if not L.leq[a, b]:
        raise LatticeError(E_NOT_COMPARABLE, f"{L.label(a)} is not below {L.label(b)}")
    members = np.flatnonzero(L.leq[a, :] & L.leq[:, b])
    inside = set(members.tolist())
    covers = [(L.label(x), L.label(y)) for x, y in L.covers if x in inside and y in inside]
    sub = build_from_covers(L.labels(members), covers, name=f"[{L.label(a)},{L.label(b)}]@{L.name}",
                            max_size=len(L))
    embedding = tuple(L.index(e) for e in sub.elements)
    return Sublattice(sub, embedding)


def pair_label(x: str, y: str) -> str:
    return f"({x},{y})"


def product(L1: FiniteLattice, L2: FiniteLattice, max_size: int | None = None) -> FiniteLattice:
    """Componentwise-ordered product; identifiers are ``(x,y)``."""
    cap = LIMITS.max_size if max_size is None else max_size
    n = len(L1) * len(L2)
    if n > cap:
        raise LatticeError(E_TOO_LARGE, f"product has {n} elements, cap is {cap}")
    elems = [pair_label(x, y) for x in L1.elements for y in L2.elements]
    covers = []
    for a, b in L1.covers:
        for y in L2.elements:
            covers.append((pair_label(L1.label(a), y), pair_label(L1.label(b), y)))
    for x in L1.elements:
        for a, b in L2.covers:
            covers.append((pair_label(x, L2.label(a)), pair_label(x, L2.label(b))))
    return build_from_covers(elems, covers, name=f"{L1.name}*{L2.name}", max_size=cap)


def dual(L: FiniteLattice) -> FiniteLattice:
    """Same identifiers, reversed order."""
    name = L.name[len("dual:"):] if L.name.startswith("dual:") else f"dual:{L.name}"
    covers = [(L.label(b), L.label(a)) for a, b in L.covers]
    return build_from_covers(L.elements, covers, name=name, max_size=max(len(L), 1))


def heights(L: FiniteLattice) -> np.ndarray:
    """Longest cover path from bottom to each element."""
    h = np.zeros(len(L), dtype=np.int64)
    for b in range(len(L)):
        for a in L.lower_covers[b]:
            if h[a] + 1 > h[b]:
                h[b] = h[a] + 1
    return h


def depths(L: FiniteLattice) -> np.ndarray:
    """Longest cover path from each element up to top."""
    d = np.zeros(len(L), dtype=np.int64)
    for a in range(len(L) - 1, -1, -1):
        for b in L.upper_covers[a]:
            if d[b] + 1 > d[a]:
                d[a] = d[b] + 1
    return d


def _signatures(L: FiniteLattice) -> list[tuple]:
    h, d = heights(L), depths(L)
    down = L.leq.sum(axis=0)
    up = L.leq.sum(axis=1)
    return [
        (int(h[i]), int(d[i]), len(L.lower_covers[i]), len(L.upper_covers[i]), int(down[i]), int(up[i]))
        for i in range(len(L))
    ]


def are_isomorphic(L1: FiniteLattice, L2: FiniteLattice, max_size: int | None = None):
    """
    Search for an order isomorphism L1 -> L2.

    Returns ``(True, {label1: label2})`` or ``(False, None)``. Candidates are
    pruned by per-element signatures (height, depth, cover degrees, down-set
    and up-set sizes) before backtracking.
    """
    cap = LIMITS.iso_max if max_size is None else max_size
    if len(L1) != len(L2) or len(L1.covers) != len(L2.covers):
        return False, None
    if len(L1) > cap:
        raise LatticeError(E_TOO_LARGE, f"isomorphism search above {cap} elements")
    s1, s2 = _signatures(L1), _signatures(L2)
    if sorted(s1) != sorted(s2):
        return False, None
    by_sig: dict[tuple, list[int]] = {}
    for j, s in enumerate(s2):
        by_sig.setdefault(s, []).append(j)

    n = len(L1)
    mapping = [-1] * n
    used = [False] * n
    leq1, leq2 = L1.leq, L2.leq

    def consistent(x, y):
        done = np.arange(x)
        img = np.asarray(mapping[:x], dtype=np.int64)
        if x == 0:
            return True
        return bool(
            np.array_equal(leq1[done, x], leq2[img, y]) and np.array_equal(leq1[x, done], leq2[y, img])
        )

    def search(x):
        if x == n:
            return True
        for y in by_sig[s1[x]]:
            if used[y] or not consistent(x, y):
                continue
            mapping[x] = y
            used[y] = True
            if search(x + 1):
                return True
            used[y] = False
            mapping[x] = -1
        return False

    if search(0):
        return True, {L1.label(i): L2.label(mapping[i]) for i in range(n)}
    return False, None

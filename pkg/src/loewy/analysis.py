"""Invariants of a finite bounded lattice: socle, radical, Loewy series, lengths and property flags."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import LIMITS, ElementSet, FiniteLattice, heights, interval
from .errors import E_DEGENERATE, E_STALL, E_TOO_LARGE, LatticeError


@dataclass(frozen=True)
class LoewySeries:
    lattice: FiniteLattice
    chain: tuple[int, ...]

    @property
    def loewy_length(self) -> int:
        return len(self.chain) - 1

    def labels(self) -> list[str]:
        return self.lattice.labels(self.chain)

    def layers(self) -> list[tuple[int, int]]:
        return list(zip(self.chain, self.chain[1:]))


def atoms(L: FiniteLattice) -> ElementSet:
    return ElementSet(L, L.upper_covers[L.bottom] if len(L) > 1 else ())


def coatoms(L: FiniteLattice) -> ElementSet:
    return ElementSet(L, L.lower_covers[L.top] if len(L) > 1 else ())


def socle(L: FiniteLattice) -> int:
    """Join of the atoms; bottom for the one-element lattice."""
    return L.join_all(atoms(L))


def radical(L: FiniteLattice) -> int:
    """Meet of the co-atoms; top for the one-element lattice."""
    return L.meet_all(coatoms(L))


def essential_elements(L: FiniteLattice) -> ElementSet:
    """Elements x != bottom whose meet with every non-bottom element stays above bottom."""
    if len(L) == 1:
        raise LatticeError(E_DEGENERATE, "essential elements are undefined on the one-element lattice")
    bot = L.bottom
    nonzero = L.meet_table[1:, 1:] != bot
    ess = [x + 1 for x in np.flatnonzero(nonzero.all(axis=1))]
    return ElementSet(L, ess)


def loewy_series(L: FiniteLattice) -> LoewySeries:
    """
    S_0 = bottom and S_{i+1} = socle of [S_i, top], until top is reached.

    The atoms of [S_i, top] are exactly the upper covers of S_i in L, so no
    sublattice needs to be materialised.
    """
    chain = [L.bottom]
    current = L.bottom
    while current != L.top:
        nxt = L.join_all(L.upper_covers[current])
        if nxt == current:
            raise LatticeError(E_STALL, f"socle of [{L.label(current)}, top] did not move")
        chain.append(nxt)
        current = nxt
    return LoewySeries(L, tuple(chain))


def lattice_length(L: FiniteLattice) -> int:
    return int(heights(L)[L.top])


def join_irreducibles(L: FiniteLattice) -> ElementSet:
    return ElementSet(L, [x for x in L if x != L.bottom and len(L.lower_covers[x]) == 1])


def meet_irreducibles(L: FiniteLattice) -> ElementSet:
    return ElementSet(L, [x for x in L if x != L.top and len(L.upper_covers[x]) == 1])


def _scan_guard(L: FiniteLattice, max_size):
    cap = LIMITS.scan_max if max_size is None else max_size
    if len(L) > cap:
        raise LatticeError(E_TOO_LARGE, f"cubic scan over {len(L)} elements exceeds cap {cap}")


def is_chain(L: FiniteLattice) -> bool:
    return bool((L.leq | L.leq.T).all())


def is_distributive(L: FiniteLattice, max_size: int | None = None) -> bool:
    """Exhaustive check of x ^ (y v z) == (x ^ y) v (x ^ z)."""
    _scan_guard(L, max_size)
    m, j = L.meet_table, L.join_table
    for x in L:
        mx = m[x]
        if not np.array_equal(mx[j], j[np.ix_(mx, mx)]):
            return False
    return True


def distributivity_witness(L: FiniteLattice):
    """First triple (x, y, z) violating distributivity, or None."""
    m, j = L.meet_table, L.join_table
    for x in L:
        mx = m[x]
        bad = mx[j] != j[np.ix_(mx, mx)]
        if bad.any():
            y, z = np.argwhere(bad)[0]
            return x, int(y), int(z)
    return None


def is_modular(L: FiniteLattice, max_size: int | None = None) -> bool:
    """Exhaustive check of x v (y ^ z) == (x v y) ^ z for all x <= z."""
    _scan_guard(L, max_size)
    m, j = L.meet_table, L.join_table
    for x in L:
        zs = np.flatnonzero(L.leq[x])
        lhs = j[x][m[:, zs]]
        rhs = m[j[x][:, None], zs[None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def complement_of(L: FiniteLattice, x: int) -> list[int]:
    x = L.check_index(x)
    hits = (L.meet_table[x] == L.bottom) & (L.join_table[x] == L.top)
    return [int(y) for y in np.flatnonzero(hits)]


def is_complemented(L: FiniteLattice) -> bool:
    hits = (L.meet_table == L.bottom) & (L.join_table == L.top)
    return bool(hits.any(axis=1).all())


def is_boolean(L: FiniteLattice, max_size: int | None = None) -> bool:
    return is_distributive(L, max_size) and is_complemented(L)


def is_catenarian(L: FiniteLattice) -> bool:
    # Graded iff the longest-path height rises by exactly one along every cover.
    h = heights(L)
    return all(h[b] == h[a] + 1 for a, b in L.covers)


def p_extension_outliers(L: FiniteLattice, series: LoewySeries | None = None) -> list[int]:
    """Elements lying in no layer [S_i, S_{i+1}] of the Loewy series."""
    series = series or loewy_series(L)
    if len(L) == 1:
        return []
    covered = np.zeros(len(L), dtype=bool)
    for lo, hi in series.layers():
        covered |= L.leq[lo, :] & L.leq[:, hi]
    return [int(x) for x in np.flatnonzero(~covered)]


def is_p_extension(L: FiniteLattice) -> bool:
    return not p_extension_outliers(L)


def layer_sizes(L: FiniteLattice, series: LoewySeries | None = None) -> list[int]:
    series = series or loewy_series(L)
    return [int((L.leq[lo, :] & L.leq[:, hi]).sum()) for lo, hi in series.layers()]


def layer_lattices(L: FiniteLattice, series: LoewySeries | None = None):
    series = series or loewy_series(L)
    return [interval(L, lo, hi) for lo, hi in series.layers()]


@dataclass
class AnalysisReport:
    lattice: FiniteLattice
    atoms: ElementSet
    coatoms: ElementSet
    essentials: ElementSet | None
    socle: int
    radical: int
    loewy: LoewySeries
    lattice_length: int
    cardinality: int
    join_irreducibles: ElementSet
    meet_irreducibles: ElementSet
    layer_sizes: list[int]
    # None marks a flag skipped because the lattice exceeded the scan cap.
    flags: dict[str, bool | None] = field(default_factory=dict)

    @property
    def loewy_length(self) -> int:
        return self.loewy.loewy_length

    def to_dict(self) -> dict:
        L = self.lattice
        return {
            "name": L.name,
            "cardinality": self.cardinality,
            "atoms": self.atoms.labels(),
            "coatoms": self.coatoms.labels(),
            "essentials": None if self.essentials is None else self.essentials.labels(),
            "socle": L.label(self.socle),
            "radical": L.label(self.radical),
            "loewy_series": self.loewy.labels(),
            "loewy_length": self.loewy_length,
            "lattice_length": self.lattice_length,
            "join_irreducibles": self.join_irreducibles.labels(),
            "meet_irreducibles": self.meet_irreducibles.labels(),
            "layer_sizes": list(self.layer_sizes),
            "flags": {k: ("skipped" if v is None else v) for k, v in self.flags.items()},
        }


def analyze(L: FiniteLattice, scan_max: int | None = None) -> AnalysisReport:
    series = loewy_series(L)
    flags: dict[str, bool | None] = {
        "is_chain": is_chain(L),
        "is_catenarian": is_catenarian(L),
        "is_p_extension": is_p_extension(L),
    }
    try:
        dist = is_distributive(L, scan_max)
        flags["is_distributive"] = dist
        flags["is_modular"] = is_modular(L, scan_max)
        flags["is_boolean"] = dist and is_complemented(L)
    except LatticeError as exc:
        if exc.code != E_TOO_LARGE:
            raise
        flags.update(is_distributive=None, is_modular=None, is_boolean=None)
    return AnalysisReport(
        lattice=L,
        atoms=atoms(L),
        coatoms=coatoms(L),
        essentials=essential_elements(L) if len(L) > 1 else None,
        socle=socle(L),
        radical=radical(L),
        loewy=series,
        lattice_length=lattice_length(L),
        cardinality=len(L),
        join_irreducibles=join_irreducibles(L),
        meet_irreducibles=meet_irreducibles(L),
        layer_sizes=layer_sizes(L, series),
        flags=dict(sorted(flags.items())),
    )

from functools import reduce
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loewy import analysis as an
from loewy import families
from loewy.core import build_from_covers, dual
from loewy.errors import LatticeError

import oracles
from conftest import by_label


def labels(L, idx):
    return set(L.labels(idx))


class TestAtomsSocleRadical:
    def test_divisor_12(self, d12):
        assert an.atoms(d12).label_set() == {"2", "3"}
        assert an.coatoms(d12).label_set() == {"4", "6"}
        assert d12.label(an.socle(d12)) == "6"
        assert d12.label(an.radical(d12)) == str(gcd(4, 6))

    def test_degenerate(self):
        L = families.chain(0)
        assert len(an.atoms(L)) == 0 and len(an.coatoms(L)) == 0
        assert an.socle(L) == an.radical(L) == 0

    def test_diamond(self):
        M = families.diamond(3)
        assert an.socle(M) == M.top
        assert an.radical(M) == M.bottom

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_chain_socle_is_unique_atom(self, n):
        L = families.chain(n)
        assert L.label(an.socle(L)) == "1"

    def test_example_radical(self):
        L = families.worked_example("ex8_7_3")
        assert L.label(an.radical(L)) == "T"


class TestEssentials:
    def test_divisor_12(self, d12):
        ess = an.essential_elements(d12)
        assert ess.label_set() == {"6", "12"}
        assert min(ess, key=lambda x: int(d12.label(x))) == an.socle(d12)

    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_chain(self, n):
        L = families.chain(n)
        assert set(an.essential_elements(L)) == set(range(1, n + 1))

    def test_one_element(self):
        with pytest.raises(LatticeError) as info:
            an.essential_elements(families.chain(0))
        assert info.value.code == "E_DEGENERATE"


class TestLoewy:
    def test_divisor_12(self, d12):
        s = an.loewy_series(d12)
        assert s.labels() == ["1", "6", "12"] and s.loewy_length == 2

    @pytest.mark.parametrize("n", [0, 1, 4])
    def test_chain_is_its_own_series(self, n):
        assert an.loewy_series(families.chain(n)).chain == tuple(range(n + 1))

    def test_example_grid(self):
        assert an.loewy_series(families.worked_example("ex8_81")).labels() == ["R", "R1R2", "S"]

    def test_example_five(self):
        s = an.loewy_series(families.worked_example("ex8_7_3"))
        assert s.labels() == ["R", "T", "S"]

    def test_divisor_360(self):
        assert an.loewy_series(families.divisor_lattice(360)).labels() == ["1", "30", "180", "360"]

    def test_layers(self, d12):
        s = an.loewy_series(d12)
        assert [tuple(d12.labels(p)) for p in s.layers()] == [("1", "6"), ("6", "12")]
        assert an.layer_sizes(d12) == [4, 2]


class TestLengths:
    def test_values(self, d12):
        assert an.lattice_length(d12) == 3
        assert an.lattice_length(families.worked_example("ex8_7_3")) == 3
        assert an.lattice_length(families.chain(5)) == 5
        assert an.lattice_length(families.pentagon()) == 3


class TestIrreducibles:
    def test_divisor_12(self, d12):
        assert an.join_irreducibles(d12).label_set() == {"2", "3", "4"}
        assert an.meet_irreducibles(d12).label_set() == {"3", "4", "6"}

    def test_chain(self):
        assert set(an.join_irreducibles(families.chain(4))) == {1, 2, 3, 4}


class TestFlags:
    def test_distributive(self, d12):
        assert an.is_distributive(d12)
        assert not an.is_distributive(families.diamond(3))
        P = families.pentagon()
        assert not an.is_distributive(P) and not an.is_modular(P)
        assert an.is_modular(families.diamond(3))

    def test_witness(self, d12):
        assert an.distributivity_witness(d12) is None
        x, y, z = an.distributivity_witness(families.pentagon())
        P = families.pentagon()
        assert P.meet(x, P.join(y, z)) != P.join(P.meet(x, y), P.meet(x, z))

    def test_boolean(self, d12):
        assert an.is_boolean(families.boolean_cube(3))
        P = families.pentagon()
        assert an.is_complemented(P) and not an.is_boolean(P)
        assert an.complement_of(d12, d12.index("2")) == []
        assert not an.is_boolean(d12)

    def test_catenarian(self, d12):
        assert an.is_catenarian(d12)
        assert not an.is_catenarian(families.pentagon())
        assert an.is_catenarian(families.chain(4))

    def test_p_extension(self, d12):
        assert d12.labels(an.p_extension_outliers(d12)) == ["4"]
        assert not an.is_p_extension(d12)
        assert an.is_p_extension(families.worked_example("ex8_7_3"))
        assert an.is_p_extension(families.diamond(3))

    def test_scan_cap(self):
        with pytest.raises(LatticeError) as info:
            an.is_distributive(families.chain(20), max_size=10)
        assert info.value.code == "E_TOO_LARGE"


class TestAnalyze:
    def test_divisor_12(self, d12):
        r = an.analyze(d12)
        assert r.cardinality == 6 and r.loewy_length == 2 and r.lattice_length == 3
        assert r.flags == {
            "is_chain": False, "is_catenarian": True, "is_p_extension": False,
            "is_distributive": True, "is_modular": True, "is_boolean": False,
        }

    def test_chain_2(self):
        r = an.analyze(families.chain(2))
        assert (r.loewy_length, r.cardinality) == (2, 3)

    def test_diamond(self):
        r = an.analyze(families.diamond(3))
        assert (r.loewy_length, r.lattice_length, r.flags["is_chain"]) == (1, 2, False)

    def test_skipped_flags(self):
        d = an.analyze(families.chain(30), scan_max=10).to_dict()
        assert d["flags"]["is_distributive"] == "skipped"
        assert d["flags"]["is_chain"] is True

    def test_one_element(self):
        d = an.analyze(families.chain(0)).to_dict()
        assert d["essentials"] is None and d["loewy_series"] == ["0"] and d["layer_sizes"] == []


# Brute-force agreement. Each oracle below works from labels and the
# definitions only.

def _brute(L):
    elems = list(L.elements)
    covers = L.cover_labels()
    le = oracles.leq_closure(elems, covers)
    bot, top = L.label(L.bottom), L.label(L.top)
    lub = lambda a, b: oracles.lub(elems, le, a, b)
    glb = lambda a, b: oracles.glb(elems, le, a, b)
    atoms = [b for a, b in covers if a == bot]
    coatoms = [a for a, b in covers if b == top]
    return elems, covers, le, bot, top, lub, glb, atoms, coatoms


def _brute_loewy(L):
    elems, covers, le, bot, top, lub, glb, _, _ = _brute(L)
    series = [bot]
    while series[-1] != top:
        s = series[-1]
        series.append(reduce(lub, [b for a, b in covers if a == s], s))
    return series


def _check(L):
    elems, covers, le, bot, top, lub, glb, atoms, coatoms = _brute(L)
    assert L.label(an.socle(L)) == reduce(lub, atoms, bot)
    assert L.label(an.radical(L)) == reduce(glb, coatoms, top)
    series = _brute_loewy(L)
    assert an.loewy_series(L).labels() == series
    chains = oracles.maximal_chains(elems, covers, bot, top)
    assert an.lattice_length(L) == max(len(c) - 1 for c in chains)
    if len(L) > 1:
        nonbot = [x for x in elems if x != bot]
        ess = {x for x in nonbot if all(glb(x, y) != bot for y in nonbot)}
        assert an.essential_elements(L).label_set() == ess
    lower = {e: sum(1 for a, b in covers if b == e) for e in elems}
    upper = {e: sum(1 for a, b in covers if a == e) for e in elems}
    assert an.join_irreducibles(L).label_set() == {e for e in elems if lower[e] == 1}
    assert an.meet_irreducibles(L).label_set() == {e for e in elems if upper[e] == 1}
    cat = all(
        len({len(c) for c in oracles.maximal_chains(elems, covers, a, b)}) == 1
        for a, b in le
    )
    assert an.is_catenarian(L) == cat
    if len(L) <= 40:
        meet = {(x, y): glb(x, y) for x in elems for y in elems}
        join = {(x, y): lub(x, y) for x in elems for y in elems}
        assert an.is_distributive(L) == oracles.brute_distributive(elems, meet, join)
    in_layer = {x for a, b in zip(series, series[1:]) for x in elems if (a, x) in le and (x, b) in le}
    if len(L) == 1:
        in_layer = set(elems)
    assert set(L.labels(an.p_extension_outliers(L))) == set(elems) - in_layer
    assert an.is_chain(L) == all((a, b) in le or (b, a) in le for a in elems for b in elems)


def test_bruteforce_on_fixtures(corpus):
    for L in corpus:
        if len(L) <= 64:
            _check(L)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_bruteforce_on_random(seed):
    _check(families.random_distributive(seed, 24))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(min_value=2, max_value=3000))
def test_divisor_loewy_matches_integer_recursion(n):
    L = families.divisor_lattice(n)
    assert [int(x) for x in an.loewy_series(L).labels()] == oracles.divisor_loewy(n)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_radical_is_dual_socle(seed):
    L = families.random_distributive(seed, 40)
    D = dual(L)
    assert L.label(an.radical(L)) == D.label(an.socle(D))


def test_non_distributive_handbuilt():
    # Hexagon-like lattice: two chains of lengths 2 and 3 glued at bounds.
    L = build_from_covers(
        ["0", "a", "b", "c", "d", "1"],
        [("0", "a"), ("a", "1"), ("0", "b"), ("b", "c"), ("c", "d"), ("d", "1")],
    )
    _check(L)
    assert an.loewy_series(L).labels() == ["0", "1"]
    assert labels(L, an.p_extension_outliers(L)) == set()
    assert by_label(L, ["a", "b"]) == set(an.atoms(L))

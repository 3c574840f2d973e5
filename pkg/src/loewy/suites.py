"""
Executable law suites over single lattices and seeded campaigns.

Every suite returns a VerificationReport. Biconditionals are checked by
computing both sides independently and comparing the flags, so each
instance exercises both directions.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from sympy import factorint

from . import analysis as an
from .core import LIMITS, FiniteLattice, dual, interval, pair_label, product
from .errors import E_PRECONDITION, E_RANGE, E_TOO_LARGE, LatticeError
from .families import boolean_cube, chain, divisor_lattice, fixtures, grid, random_distributive


@dataclass
class Failure:
    instance: str
    clause: str
    witness: list[str]
    detail: str = ""

    def to_dict(self) -> dict:
        return {"instance": self.instance, "clause": self.clause, "witness": self.witness, "detail": self.detail}


@dataclass
class VerificationReport:
    suite: str
    instances_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def verdict(self) -> str:
        if self.failures:
            return "fail"
        if self.instances_checked == 0:
            return "skipped"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def absorb(self, other: "VerificationReport"):
        self.instances_checked += other.instances_checked
        self.failures.extend(other.failures)
        self.skipped.extend(other.skipped)

    def finish(self, started: float) -> "VerificationReport":
        self.failures.sort(key=lambda f: (f.instance, f.clause))
        self.skipped.sort(key=lambda s: s["instance"])
        self.elapsed_ms = round((time.perf_counter() - started) * 1000.0, 3)
        return self

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "verdict": self.verdict,
            "instances_checked": self.instances_checked,
            "failures": [f.to_dict() for f in self.failures],
            "skipped": list(self.skipped),
            "elapsed_ms": self.elapsed_ms,
        }


class _Clauses:
    """Collects failed clauses for a single instance."""

    def __init__(self, report: VerificationReport, L: FiniteLattice):
        self.report = report
        self.L = L

    def check(self, ok, clause, witness=(), detail=""):
        if not ok:
            self.report.failures.append(Failure(self.L.name, clause, self.L.labels(witness), detail))
        return bool(ok)


def _single(suite: str) -> tuple[VerificationReport, float]:
    return VerificationReport(suite=suite, instances_checked=1), time.perf_counter()


def loewy_by_intervals(L: FiniteLattice) -> list[int]:
    """Loewy series by literally taking socle(interval(S_i, top)); the slow oracle route."""
    chain_ = [L.bottom]
    while chain_[-1] != L.top:
        sub, emb = interval(L, chain_[-1], L.top)
        nxt = emb[an.socle(sub)]
        if nxt == chain_[-1]:
            break
        chain_.append(nxt)
    return chain_


# -- divisor lattices of cyclic extensions -------------------------------------------


def verify_cyclic_divisor_laws(n: int) -> VerificationReport:
    """
    Check the divisor-lattice closed forms on D_n against the computed invariants.

    Predictions come from sympy's factorisation of n; the lattice side uses
    only the generic algorithms.
    """
    if n < 2:
        raise LatticeError(E_RANGE, f"n must be >= 2, got {n}")
    report, started = _single("thm8131")
    L = divisor_lattice(n)
    c = _Clauses(report, L)
    fac = factorint(n)
    primes = sorted(fac)
    alpha = max(fac.values())
    val = {x: int(L.label(x)) for x in L}

    def node(d):
        return L.index(str(d))

    atoms = an.atoms(L)
    c.check({val[a] for a in atoms} == set(primes), "atoms-are-prime-divisors", atoms)
    prod_primes = 1
    for p in primes:
        prod_primes *= p
    soc = an.socle(L)
    c.check(val[soc] == prod_primes, "socle-is-product-of-atoms", [soc], f"expected {prod_primes}")

    series = an.loewy_series(L)
    c.check(series.loewy_length == alpha, "loewy-length-is-max-exponent", series.chain,
            f"expected {alpha}, got {series.loewy_length}")
    for j, s in enumerate(series.chain):
        expected = 1
        for p in primes:
            expected *= p ** min(j, fac[p])
        c.check(val[s] == expected, "loewy-term-closed-form", [s], f"S_{j} expected {expected}")
    c.check(series.chain == tuple(loewy_by_intervals(L)), "loewy-recursion-oracle", series.chain)

    layer_atom_total = 0
    for j, (lo, hi) in enumerate(series.layers()):
        sub, emb = interval(L, lo, hi)
        layer_atoms = {val[emb[a]] for a in an.atoms(sub)}
        expected_atoms = set()
        for p in primes:
            if val[lo] % (p ** fac[p]) != 0:
                expected_atoms.add(val[lo] * p)
        c.check(layer_atoms == expected_atoms, "layer-atoms-closed-form", [lo, hi],
                f"layer {j}: got {sorted(layer_atoms)}, expected {sorted(expected_atoms)}")
        layer_atom_total += len(layer_atoms)
        c.check(an.is_boolean(sub), "layers-boolean", [lo, hi])

    ji = an.join_irreducibles(L)
    expected_ji = {p**b for p in primes for b in range(1, fac[p] + 1)}
    c.check({val[x] for x in ji} == expected_ji, "join-irreducibles-are-prime-powers", ji)

    card = 1
    for a in fac.values():
        card *= a + 1
    c.check(len(L) == card, "cardinality-is-divisor-count", [], f"{len(L)} vs {card}")
    length = an.lattice_length(L)
    exp_sum = sum(fac.values())
    c.check(length == exp_sum, "length-is-exponent-sum", [], f"{length} vs {exp_sum}")
    c.check(length == len(ji), "length-is-irreducible-count", ji)
    c.check(length == layer_atom_total, "length-is-layer-atom-sum", [], f"{length} vs {layer_atom_total}")

    p_flag = an.is_p_extension(L)
    predicted = len(primes) == 1 or alpha == 1
    outliers = an.p_extension_outliers(L, series)
    c.check(p_flag == predicted, "p-property-criterion", outliers)
    c.check(p_flag == (an.is_chain(L) or an.is_boolean(L)), "p-property-chain-or-boolean", outliers)
    c.check(an.is_distributive(L), "distributive", [])
    c.check(node(n) == L.top and node(1) == L.bottom, "bounds-are-1-and-n", [])
    return report.finish(started)


# -- laws valid on every finite lattice ----------------------------------------------


def verify_core_laws(L: FiniteLattice) -> VerificationReport:
    report, started = _single("core")
    c = _Clauses(report, L)
    atoms = an.atoms(L)
    soc = an.socle(L)
    c.check(soc == L.join_all(atoms), "socle-is-join-of-atoms", [soc])
    if len(L) > 1:
        ess = an.essential_elements(L)
        c.check(soc == L.meet_all(ess), "socle-is-meet-of-essentials", [soc, *ess])
        c.check(soc in ess, "socle-is-essential", [soc])
        c.check(all(L.le(soc, e) for e in ess), "socle-is-least-essential", list(ess))

    rad = an.radical(L)
    D = dual(L)
    dual_soc = D.label(an.socle(D))
    c.check(L.label(rad) == dual_soc, "radical-is-dual-socle", [rad], f"dual socle {dual_soc}")

    series = an.loewy_series(L)
    c.check(series.chain == tuple(loewy_by_intervals(L)), "loewy-recursion-oracle", series.chain)
    n = series.loewy_length
    ell = an.lattice_length(L)
    c.check(n <= ell <= len(L) - 1, "length-bounds", series.chain, f"loewy={n} length={ell} size={len(L)}")

    if ell == 2:
        flags = (an.is_chain(L), len(L) == 3, n == 2)
        c.check(len(set(flags)) == 1, "length-two-trichotomy", [], f"chain/size3/loewy2 = {flags}")
        c.check(flags[0] or n == 1, "length-two-non-chain-has-loewy-one", [], f"loewy={n}")

    sizes = an.layer_sizes(L, series)
    union_size = sum(sizes) + 1 - n
    outliers = an.p_extension_outliers(L, series)
    c.check(len(L) >= union_size, "layer-union-bound", [], f"{len(L)} < {union_size}")
    c.check((len(L) == union_size) == (not outliers), "layer-union-equality-iff-p", outliers)
    return report.finish(started)


# -- distributive lattices -----------------------------------------------------------


def _require(cond: bool, what: str, L: FiniteLattice):
    if not cond:
        raise LatticeError(E_PRECONDITION, f"{L.name} is not {what}")


def verify_distributive_laws(L: FiniteLattice) -> VerificationReport:
    _require(an.is_distributive(L), "distributive", L)
    report, started = _single("distributive")
    c = _Clauses(report, L)
    series = an.loewy_series(L)
    n = series.loewy_length
    ell = an.lattice_length(L)

    c.check(an.is_catenarian(L), "catenarian", [])
    layer_len_sum = 0
    for lo, hi in series.layers():
        sub, emb = interval(L, lo, hi)
        c.check(an.is_boolean(sub), "layers-boolean", [lo, hi])
        layer_len_sum += an.lattice_length(sub)
    c.check(ell == layer_len_sum, "length-is-sum-of-layer-lengths", [], f"{ell} vs {layer_len_sum}")

    chain_flag = an.is_chain(L)
    c.check((n == ell) == chain_flag, "loewy-equals-length-iff-chain", series.chain)
    if chain_flag:
        c.check(list(series.chain) == list(L), "chain-is-its-own-series", series.chain)
    if len(L) > 1:
        c.check((n == 1) == an.is_boolean(L), "loewy-one-iff-boolean", series.chain)

    soc = an.socle(L)
    boolean_below = [t for t in L if an.is_boolean(interval(L, L.bottom, t).lattice)]
    c.check(soc in boolean_below, "socle-interval-boolean", [soc])
    over = [t for t in boolean_below if not L.le(t, soc)]
    c.check(not over, "socle-is-max-boolean-bottom-interval", over)

    for t in L:
        sub, emb = interval(L, L.bottom, t)
        got = emb[an.socle(sub)]
        want = L.meet(soc, t)
        c.check(got == want, "socle-of-lower-interval-is-meet", [t, got, want])

    ji = an.join_irreducibles(L)
    c.check(ell == len(ji), "length-is-irreducible-count", ji, f"{ell} vs {len(ji)}")

    layer_atoms = set()
    for lo, hi in series.layers():
        sub, emb = interval(L, lo, hi)
        layer_atoms |= {emb[a] for a in an.atoms(sub)}
    condition = set(ji) == layer_atoms
    c.check(condition == an.is_p_extension(L), "irreducibles-are-layer-atoms-iff-p",
            sorted(set(ji) ^ layer_atoms))
    return report.finish(started)


# -- P-extensions --------------------------------------------------------------------


def verify_p_extension_laws(L: FiniteLattice) -> VerificationReport:
    series = an.loewy_series(L)
    _require(not an.p_extension_outliers(L, series), "a P-extension", L)
    report, started = _single("p-extension")
    c = _Clauses(report, L)
    n = series.loewy_length
    layers = [interval(L, lo, hi) for lo, hi in series.layers()]
    layers_boolean = all(an.is_boolean(sub) for sub, _ in layers)
    distributive = an.is_distributive(L)
    c.check(distributive == layers_boolean, "distributive-iff-layers-boolean", series.chain,
            f"distributive={distributive} layers_boolean={layers_boolean}")
    if not distributive:
        return report.finish(started)

    ji = set(an.join_irreducibles(L))
    layer_atoms = set()
    for sub, emb in layers:
        layer_atoms |= {emb[a] for a in an.atoms(sub)}
    c.check(ji == layer_atoms, "irreducibles-are-layer-atoms", sorted(ji ^ layer_atoms))

    if n >= 1:
        rad = an.radical(L)
        c.check(rad == series.chain[-2], "radical-is-penultimate-term", [rad, series.chain[-2]])
    for i, (sub, emb) in enumerate(layers):
        got = emb[an.radical(sub)]
        c.check(got == series.chain[i], "layer-radical-is-lower-end", [got, series.chain[i]])

    chain_ = series.chain
    for t in L:
        if t in (L.bottom, L.top):
            continue
        k = max(i for i in range(n) if L.le(chain_[i], t))
        c.check(L.le(t, chain_[k + 1]) and t != chain_[k + 1], "element-in-half-open-layer", [t])
        below, below_emb = interval(L, L.bottom, t)
        above, above_emb = interval(L, t, L.top)
        got_below = [below_emb[i] for i in an.loewy_series(below).chain]
        got_above = [above_emb[i] for i in an.loewy_series(above).chain]
        want_below = list(chain_[: k + 1])
        if t != chain_[k]:
            want_below.append(t)
        want_above = [t] + list(chain_[k + 1:])
        c.check(got_below == want_below, "lower-interval-series-splice", [t, *got_below])
        c.check(got_above == want_above, "upper-interval-series-splice", [t, *got_above])
        c.check(an.is_p_extension(below) and an.is_p_extension(above), "splices-are-p-extensions", [t])
    return report.finish(started)


# -- products ------------------------------------------------------------------------


def verify_product_laws(L1: FiniteLattice, L2: FiniteLattice, max_size: int | None = None) -> VerificationReport:
    P = product(L1, L2, max_size=max_size)
    report, started = _single("product")
    c = _Clauses(report, P)
    s1, s2 = an.loewy_series(L1).chain, an.loewy_series(L2).chain
    m, r = len(s1) - 1, len(s2) - 1
    sp = an.loewy_series(P)

    def at(x, y):
        return P.index(pair_label(L1.label(x), L2.label(y)))

    want = [at(s1[min(i, m)], s2[min(i, r)]) for i in range(max(m, r) + 1)]
    c.check(list(sp.chain) == want, "series-is-componentwise-saturated", sp.chain)
    c.check(sp.loewy_length == max(m, r), "loewy-length-is-max", sp.chain, f"{sp.loewy_length} vs max({m},{r})")

    atoms = set(an.atoms(P))
    expected = {at(a, L2.bottom) for a in an.atoms(L1)} | {at(L1.bottom, b) for b in an.atoms(L2)}
    c.check(atoms == expected, "atoms-live-in-one-factor", sorted(atoms ^ expected))

    # Projections of the product series reproduce each factor's series.
    coords = {at(x, y): (x, y) for x in L1 for y in L2}
    for i in range(m + 1):
        c.check(coords[sp.chain[i]][0] == s1[i], "projection-matches-first-factor", [sp.chain[i]])
    for i in range(r + 1):
        c.check(coords[sp.chain[i]][1] == s2[i], "projection-matches-second-factor", [sp.chain[i]])
    return report.finish(started)


# -- campaigns -----------------------------------------------------------------------

SUITES = ("core", "distributive", "p-extension", "product", "thm8131")


@dataclass
class CampaignSpec:
    """
    Campaign descriptor.

    ``thm8131`` runs n in [2, max_n] (or just ``n``). The single-lattice
    suites run over the fixture corpus plus ``count`` random distributive
    lattices seeded from ``seed`` and, when ``max_n`` is given, the divisor
    lattices up to it. ``product`` runs three anchor pairs plus ``count``
    seeded random pairs.
    """

    suite: str
    n: int | None = None
    max_n: int | None = None
    seed: int | None = None
    count: int = 0
    max_size: int = 64
    product_cap: int = 4096
    include_fixtures: bool = True


def _lattice_instances(spec: CampaignSpec) -> list[FiniteLattice]:
    out: list[FiniteLattice] = []
    if spec.include_fixtures:
        out += fixtures()
    if spec.n is not None:
        out.append(divisor_lattice(spec.n))
    if spec.max_n is not None:
        out += [divisor_lattice(k) for k in range(1, spec.max_n + 1)]
    base = spec.seed or 0
    out += [random_distributive(base + i, spec.max_size) for i in range(spec.count)]
    return out


def _random_factor(rng: random.Random, budget: int) -> FiniteLattice:
    for _ in range(100):
        kind = rng.choice(["chain", "cube", "divisor", "grid"])
        if kind == "chain":
            L = chain(rng.randint(1, 8))
        elif kind == "cube":
            L = boolean_cube(rng.randint(1, 5))
        elif kind == "divisor":
            L = divisor_lattice(rng.randint(2, 2000))
        else:
            L = grid([rng.randint(1, 3) for _ in range(rng.randint(2, 3))])
        if len(L) <= budget:
            return L
    return chain(1)


def product_pairs(seed: int, count: int, cap: int = 4096) -> list[tuple[FiniteLattice, FiniteLattice]]:
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        a = _random_factor(rng, cap // 2)
        b = _random_factor(rng, cap // len(a))
        pairs.append((a, b))
    return pairs


def anchor_pairs() -> list[tuple[FiniteLattice, FiniteLattice]]:
    return [
        (chain(1), chain(2)),
        (boolean_cube(2), boolean_cube(2)),
        (divisor_lattice(4), divisor_lattice(9)),
    ]


def run_campaign(spec: CampaignSpec) -> VerificationReport:
    if spec.suite not in SUITES:
        raise LatticeError(E_RANGE, f"unknown suite {spec.suite!r}; choose from {SUITES}")
    started = time.perf_counter()
    total = VerificationReport(suite=spec.suite)

    if spec.suite == "thm8131":
        if spec.n is not None:
            ns = [spec.n]
        else:
            ns = range(2, (spec.max_n if spec.max_n is not None else 1000) + 1)
        for k in ns:
            total.absorb(verify_cyclic_divisor_laws(k))
        return total.finish(started)

    if spec.suite == "product":
        pairs = anchor_pairs() + product_pairs(spec.seed or 0, spec.count, spec.product_cap)
        for a, b in pairs:
            try:
                total.absorb(verify_product_laws(a, b, max_size=spec.product_cap))
            except LatticeError as exc:
                if exc.code != E_TOO_LARGE:
                    raise
                total.skipped.append({"instance": f"{a.name}*{b.name}", "reason": exc.code})
        return total.finish(started)

    check = {
        "core": verify_core_laws,
        "distributive": verify_distributive_laws,
        "p-extension": verify_p_extension_laws,
    }[spec.suite]
    for L in _lattice_instances(spec):
        if len(L) > LIMITS.scan_max:
            total.skipped.append({"instance": L.name, "reason": E_TOO_LARGE})
            continue
        try:
            total.absorb(check(L))
        except LatticeError as exc:
            if exc.code not in (E_PRECONDITION, E_TOO_LARGE):
                raise
            total.skipped.append({"instance": L.name, "reason": exc.code})
    return total.finish(started)


"""
Deterministic lattice generators.

Each constructor returns a validated FiniteLattice. The named examples
(``ex8_41``, ``ex8_7_1``, ``ex8_7_3``, ``ex8_81``) are small fixed diagrams
kept with their original element names.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import LIMITS, FiniteLattice, build_from_covers, interval
from .errors import E_RANGE, E_UNKNOWN_NAME, LatticeError


def chain(n: int) -> FiniteLattice:
    if n < 0:
        raise LatticeError(E_RANGE, f"chain length must be >= 0, got {n}")
    _size_check(n + 1)
    elems = [str(i) for i in range(n + 1)]
    return build_from_covers(elems, [(str(i), str(i + 1)) for i in range(n)], name=f"chain({n})")


def _size_check(n: int):
    if n > LIMITS.max_size:
        raise LatticeError(E_RANGE, f"family would have {n} elements, cap is {LIMITS.max_size}")


def boolean_cube(k: int) -> FiniteLattice:
    """Subsets of {0..k-1}; identifiers are bit strings, most significant bit first."""
    if not 0 <= k <= 16:
        raise LatticeError(E_RANGE, f"cube dimension must be in 0..16, got {k}")
    _size_check(2**k)

    def name(mask):
        return format(mask, f"0{k}b") if k else "0"

    elems = [name(m) for m in range(2**k)]
    covers = [(name(m), name(m | (1 << i))) for m in range(2**k) for i in range(k) if not m & (1 << i)]
    return build_from_covers(elems, covers, name=f"boolean_cube({k})")


def prime_factors(n: int) -> dict[int, int]:
    """Trial-division factorisation, ``{p: exponent}``."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


DIVISOR_MAX_N = 10**9


def divisor_lattice(n: int) -> FiniteLattice:
    """Divisors of n under divisibility; meet is gcd, join is lcm."""
    if not 1 <= n <= DIVISOR_MAX_N:
        raise LatticeError(E_RANGE, f"n must be in 1..10^9, got {n}")
    fac = prime_factors(n)
    count = 1
    for a in fac.values():
        count *= a + 1
    if count > LIMITS.max_divisors or count > LIMITS.max_size:
        raise LatticeError(E_RANGE, f"{n} has {count} divisors, above the cap")
    divisors = [1]
    for p, a in fac.items():
        divisors = [d * p**e for d in divisors for e in range(a + 1)]
    divisors.sort()
    covers = [(str(d), str(d * p)) for d in divisors for p in fac if n % (d * p) == 0]
    return build_from_covers([str(d) for d in divisors], covers, name=f"divisor({n})")


def grid(dims: list[int]) -> FiniteLattice:
    """Product of chains of the given lengths; a single dimension gives the plain chain."""
    dims = list(dims)
    if not dims or any(d < 1 for d in dims):
        raise LatticeError(E_RANGE, f"grid dimensions must be >= 1, got {dims}")
    if len(dims) == 1:
        return chain(dims[0])
    size = 1
    for d in dims:
        size *= d + 1
    if size > LIMITS.max_size:
        raise LatticeError(E_RANGE, f"grid{dims} has {size} elements, cap is {LIMITS.max_size}")

    def name(t):
        return "(" + ",".join(map(str, t)) + ")"

    points = list(itertools.product(*(range(d + 1) for d in dims)))
    covers = []
    for t in points:
        for i, d in enumerate(dims):
            if t[i] < d:
                u = t[:i] + (t[i] + 1,) + t[i + 1:]
                covers.append((name(t), name(u)))
    return build_from_covers([name(t) for t in points], covers, name=f"grid({','.join(map(str, dims))})")


def diamond(k: int = 3) -> FiniteLattice:
    """M_k: bottom, k pairwise incomparable atoms, top."""
    if k < 3:
        raise LatticeError(E_RANGE, f"diamond needs k >= 3, got {k}")
    _size_check(k + 2)
    mids = [f"a{i}" for i in range(1, k + 1)]
    covers = [("0", m) for m in mids] + [(m, "1") for m in mids]
    return build_from_covers(["0", *mids, "1"], covers, name=f"diamond({k})")


def pentagon() -> FiniteLattice:
    """N_5: 0 < a < b < 1 and 0 < c < 1 with c incomparable to a and b."""
    covers = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]
    return build_from_covers(["0", "a", "b", "c", "1"], covers, name="pentagon")


SUBGROUP_MAX_N = 1024


def subgroup_lattice_cyclic(n: int) -> FiniteLattice:
    """
    Subgroups of Z/nZ ordered by inclusion, found by generating <g> for every g.

    Each subgroup is labelled by its index in Z/nZ. The construction never
    looks at divisors of n, so comparing it with ``divisor_lattice`` is a
    real check.
    """
    if not 1 <= n <= SUBGROUP_MAX_N:
        raise LatticeError(E_RANGE, f"subgroup enumeration supports 1..{SUBGROUP_MAX_N}, got {n}")
    subgroups: set[frozenset[int]] = set()
    for g in range(n):
        members = [0]
        x = g % n
        while x != 0:
            members.append(x)
            x = (x + g) % n
        subgroups.add(frozenset(members))
    ordered = sorted(subgroups, key=len)
    label = {h: str(n // len(h)) for h in ordered}
    covers = []
    for i, h in enumerate(ordered):
        uppers = [k for k in ordered[i + 1:] if h < k]
        for k in uppers:
            if not any(h < m < k for m in uppers):
                covers.append((label[h], label[k]))
    return build_from_covers([label[h] for h in ordered], covers, name=f"subgroup_cyclic({n})")


def _field(q: int):
    """Addition and multiplication tables for the q-element field, q in {2,3,4,5}."""
    if q in (2, 3, 5):
        add = [[(a + b) % q for b in range(q)] for a in range(q)]
        mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        return add, mul
    # GF(4) as F_2[x]/(x^2+x+1); element bits (c1 c0) mean c1*x + c0.
    add = [[a ^ b for b in range(4)] for a in range(4)]

    def mul4(a, b):
        r = 0
        for i in range(2):
            if b >> i & 1:
                r ^= a << i
        if r & 4:
            r ^= 0b111
        return r

    mul = [[mul4(a, b) for b in range(4)] for a in range(4)]
    return add, mul


def subspace_lattice(q: int, d: int) -> FiniteLattice:
    """Subspaces of the d-dimensional space over the q-element field."""
    if q not in (2, 3, 4, 5) or d not in (1, 2):
        raise LatticeError(E_RANGE, f"subspace lattice supports q in 2..5 and d in 1..2, got q={q}, d={d}")
    add, mul = _field(q)
    vectors = list(itertools.product(range(q), repeat=d))
    zero = tuple([0] * d)

    def span(gens):
        space = {zero}
        frontier = True
        while frontier:
            frontier = False
            for v in list(space):
                for g in gens:
                    for c in range(q):
                        w = tuple(add[v[i]][mul[c][g[i]]] for i in range(d))
                        if w not in space:
                            space.add(w)
                            frontier = True
        return frozenset(space)

    spaces = {span([])}
    for v in vectors:
        spaces.add(span([v]))
    for v, w in itertools.combinations(vectors, 2):
        spaces.add(span([v, w]))

    def name(s):
        if len(s) == 1:
            return "0"
        if len(s) == q**d:
            return "V"
        nz = min(v for v in s if v != zero)
        return "<" + ",".join(map(str, nz)) + ">"

    ordered = sorted(spaces, key=lambda s: (len(s), name(s)))
    covers = []
    for i, s in enumerate(ordered):
        uppers = [t for t in ordered[i + 1:] if s < t]
        for t in uppers:
            if not any(s < m < t for m in uppers):
                covers.append((name(s), name(t)))
    return build_from_covers([name(s) for s in ordered], covers, name=f"subspace({q},{d})")


EXAMPLES = {
    # Diamond with atoms k1, k2, k3.
    "ex8_41": (
        ["k", "k1", "k2", "k3", "L"],
        [("k", "k1"), ("k", "k2"), ("k", "k3"), ("k1", "L"), ("k2", "L"), ("k3", "L")],
    ),
    # Subfields of a cyclic degree-12 extension; Li has degree i.
    "ex8_7_1": (
        ["k", "L2", "L3", "L4", "L6", "L"],
        [("k", "L2"), ("k", "L3"), ("L2", "L4"), ("L2", "L6"), ("L3", "L6"), ("L4", "L"), ("L6", "L")],
    ),
    # One atom T, then a square [T, S].
    "ex8_7_3": (
        ["R", "T", "T1", "T2", "S"],
        [("R", "T"), ("T", "T1"), ("T", "T2"), ("T1", "S"), ("T2", "S")],
    ),
    # 2 x 3 grid with R3 between R2 and S.
    "ex8_81": (
        ["R", "R1", "R2", "R1R2", "R3", "S"],
        [("R", "R1"), ("R", "R2"), ("R1", "R1R2"), ("R2", "R1R2"), ("R2", "R3"), ("R1R2", "S"), ("R3", "S")],
    ),
}


def worked_example(name: str) -> FiniteLattice:
    try:
        elems, covers = EXAMPLES[name]
    except KeyError:
        raise LatticeError(E_UNKNOWN_NAME, f"unknown example {name!r}; known: {sorted(EXAMPLES)}") from None
    return build_from_covers(elems, covers, name=name)


_SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def random_distributive(seed: int, max_size: int = 64) -> FiniteLattice:
    """
    Pseudo-random distributive lattice with at most ``max_size`` elements.

    Draws with ``random.Random(seed)``: first a family (grid or divisor
    lattice), then its shape, then with probability 1/3 replaces the result
    by a random interval [a, b] with a <= b. All three are distributive by
    construction.
    """
    if max_size < 2:
        raise LatticeError(E_RANGE, f"max_size must be >= 2, got {max_size}")
    rng = random.Random(seed)
    kind = rng.choice(["grid", "divisor"])
    budget = min(max_size, LIMITS.max_size)
    if kind == "grid":
        dims: list[int] = []
        size = 1
        for _ in range(rng.randint(1, 4)):
            d = rng.randint(1, 4)
            while d >= 1 and size * (d + 1) > budget:
                d -= 1
            if d < 1:
                break
            dims.append(d)
            size *= d + 1
        L = grid(dims or [1])
    else:
        n, size = 1, 1
        for p in rng.sample(_SMALL_PRIMES, rng.randint(1, 4)):
            a = rng.randint(1, 4)
            while a >= 1 and (size * (a + 1) > budget or n * p**a > DIVISOR_MAX_N):
                a -= 1
            if a < 1:
                continue
            n *= p**a
            size *= a + 1
        L = divisor_lattice(n if n > 1 else 2)
    if rng.random() < 1 / 3 and len(L) > 2:
        a = rng.randrange(len(L))
        above = [b for b in L if L.le(a, b)]
        b = rng.choice(above)
        L = interval(L, a, b).lattice
    L.name = f"random_distributive({seed},{max_size}):{L.name}"
    return L


@dataclass
class FamilySpec:
    """Selects a generated family; ``seed`` is used only by random_distributive."""

    kind: str
    parameters: list = field(default_factory=list)
    seed: int | None = None

    def build(self) -> FiniteLattice:
        return make_family(self)


KINDS = (
    "chain",
    "boolean_cube",
    "divisor",
    "grid",
    "diamond",
    "pentagon",
    "subgroup_cyclic",
    "subspace",
    "example",
    "random_distributive",
)


def make_family(spec: FamilySpec) -> FiniteLattice:
    kind, params = spec.kind, list(spec.parameters)
    if kind not in KINDS:
        raise LatticeError(E_UNKNOWN_NAME, f"unknown family {kind!r}")
    if (spec.seed is not None) != (kind == "random_distributive"):
        raise LatticeError(E_RANGE, "seed is required for random_distributive and only there")

    def ints(count):
        if len(params) != count:
            raise LatticeError(E_RANGE, f"{kind} takes {count} integer parameter(s), got {params}")
        return [int(p) for p in params]

    if kind == "chain":
        return chain(*ints(1))
    if kind == "boolean_cube":
        return boolean_cube(*ints(1))
    if kind == "divisor":
        return divisor_lattice(*ints(1))
    if kind == "grid":
        return grid([int(p) for p in params])
    if kind == "diamond":
        return diamond(*ints(1)) if params else diamond()
    if kind == "pentagon":
        ints(0)
        return pentagon()
    if kind == "subgroup_cyclic":
        return subgroup_lattice_cyclic(*ints(1))
    if kind == "subspace":
        return subspace_lattice(*ints(2))
    if kind == "example":
        if len(params) != 1:
            raise LatticeError(E_RANGE, "example takes one name")
        return worked_example(str(params[0]))
    max_size = ints(1)[0] if params else 64
    return random_distributive(spec.seed, max_size)


def fixtures() -> list[FiniteLattice]:
    """The standing fixture corpus used by campaigns and tests."""
    out = [chain(n) for n in range(5)]
    out += [boolean_cube(k) for k in range(1, 5)]
    out += [divisor_lattice(n) for n in (12, 30, 36, 360)]
    out += [grid([1, 2]), grid([2, 3]), grid([1, 1, 2])]
    out += [diamond(3), diamond(4), pentagon()]
    out += [subgroup_lattice_cyclic(12), subgroup_lattice_cyclic(8)]
    out += [subspace_lattice(2, 2), subspace_lattice(3, 2), subspace_lattice(4, 2), subspace_lattice(5, 1)]
    out += [worked_example(name) for name in sorted(EXAMPLES)]
    return out

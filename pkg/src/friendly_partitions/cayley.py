"""Internal partitions of Cayley graphs.

Covers 5-regular Cayley graphs of Abelian groups (cyclic groups, elementary
Abelian 2-groups, Z2 x Z2p and the general case), near-complete circulants
and Paley graphs. Every constructive answer is re-verified before it is
returned; every "no partition" answer is backed by exhaustive search.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from functools import partial
from typing import Iterator, Sequence

from .certificate import Certificate
from .engine import (
    _deficit_descent,
    exhaustive_internal,
    extend_to_partition,
    local_switch,
    random_bisection,
    search_internal,
    verify_cohesive,
    verify_internal,
)
from .finite_field import factor_prime_power
from .generators import (
    CayleySpec,
    InvalidSpecError,
    element_index,
    gen_abelian_cayley,
    gen_circulant,
    gen_paley,
    group_elements,
    paley_orders,
)
from .graph import Bipartition, ContractError, Graph, complement, cycles

EXCEPTIONAL = ("K6", "K55", "C125_10")


@dataclass
class ClassificationOutcome:
    verdict: str  # "partition" or "exceptional"
    method: str
    verified: bool
    partition: Bipartition | None = None
    name: str | None = None
    certificate: Certificate | None = None

    @property
    def has_partition(self) -> bool:
        return self.verdict == "partition"


def _partition_outcome(g: Graph, p: Bipartition, method: str) -> ClassificationOutcome:
    ok = not p.trivial and verify_internal(g, p).valid
    return ClassificationOutcome("partition", method, ok, partition=p,
                                 certificate=Certificate.internal(g, p) if ok else None)


def _exceptional_outcome(g: Graph, name: str, method: str) -> ClassificationOutcome:
    cert = exhaustive_internal(g)
    if cert.kind != "nonexistence":
        return _partition_outcome(g, cert.partition, method + "+exhaustive")
    return ClassificationOutcome("exceptional", method, True, name=name, certificate=cert)


def _search_outcome(g: Graph, method: str, seed: int = 0) -> ClassificationOutcome:
    cert = search_internal(g, method="exhaustive" if g.n <= 40 else "hybrid", seed=seed)
    if cert.kind == "nonexistence":
        return ClassificationOutcome("exceptional", method, True, name=None, certificate=cert)
    return _partition_outcome(g, cert.partition, method)


def _checked(g: Graph, p: Bipartition | None, method: str) -> ClassificationOutcome:
    """Accept ``p`` when it verifies, otherwise fall back to search."""
    if p is not None and not p.trivial and verify_internal(g, p).valid:
        return _partition_outcome(g, p, method)
    return _search_outcome(g, method + ":fallback")


# -- cyclic 5-regular graphs --------------------------------------------------------

@dataclass(frozen=True)
class CyclicSpec5:
    """``<r, t, k>_{2k}``: circulant on ``n = 2k`` vertices with offsets r, t and k."""

    n: int
    r: int
    t: int

    def __post_init__(self):
        if self.n < 6 or self.n % 2:
            raise InvalidSpecError(f"order must be even and >= 6, got {self.n}")
        k = self.n // 2
        for x in (self.r, self.t):
            if not 0 < x < k:
                raise InvalidSpecError(f"offset {x} not in 1..{k - 1}")
        if self.r == self.t:
            raise InvalidSpecError("offsets r and t must differ")

    @property
    def k(self) -> int:
        return self.n // 2

    @property
    def offsets(self) -> tuple[int, int, int]:
        return (self.r, self.t, self.k)

    def graph(self) -> Graph:
        return gen_circulant(self.n, self.offsets)

    def __str__(self) -> str:
        return f"<{self.r},{self.t},{self.k}>_{self.n}"


def _fold(x: int, n: int) -> int:
    x %= n
    return min(x, n - x)


def reduce_rel_prime(spec: CyclicSpec5) -> tuple[int, list[int]]:
    """``t*`` with ``<r,t,k> = <1,t*,k>`` under ``g -> r*g``; returns ``(t*, map)``.

    ``map[g]`` is the vertex of ``<r,t,k>`` that vertex ``g`` of ``<1,t*,k>``
    is sent to. The relabelled edge set is compared against the target.
    """
    n, r, t = spec.n, spec.r, spec.t
    if math.gcd(r, n) != 1:
        raise ContractError(f"gcd({r}, {n}) != 1")
    t_star = _fold(pow(r, -1, n) * t, n)
    mapping = [(r * g) % n for g in range(n)]
    src = gen_circulant(n, (1, t_star, spec.k))
    dst = spec.graph()
    relabelled = {tuple(sorted((mapping[u], mapping[v]))) for u, v in src.edges()}
    if relabelled != set(dst.edges()):
        raise AssertionError(f"multiplier map failed for {spec}")  # pragma: no cover
    return t_star, mapping


def gcd_partition(n: int, offsets: Sequence[int]) -> list[frozenset[int]]:
    """Residue classes modulo ``gcd(t, k)``; each is 3-cohesive in ``<r,t,k>_n``.

    ``offsets`` is ``(r, t, k)``; the classes use the last two.
    """
    _, t, k = offsets
    h = math.gcd(t, k)
    if h == 1:
        raise ContractError(f"gcd({t}, {k}) = 1")
    return [frozenset(range(c, n, h)) for c in range(h)]


# Small graphs <1, t, k>_{2k} with two disjoint 3-cohesive sets, 1-indexed.
TABLE1 = (
    ((8, 2), ({1, 3, 5, 7}, {2, 4, 6, 8})),
    ((8, 3), ({1, 2, 5, 6}, {3, 4, 7, 8})),
    ((10, 4), ({1, 2, 6, 7}, {3, 4, 8, 9})),
    ((12, 2), ({1, 2, 3, 7, 8, 9}, {4, 5, 6, 10, 11, 12})),
    ((12, 3), ({1, 4, 7, 10}, {2, 5, 8, 11})),
    ((12, 4), ({1, 3, 5, 7, 9, 11}, {2, 4, 6, 8, 10, 12})),
    ((12, 5), ({1, 2, 7, 8}, {3, 4, 9, 10})),
    ((14, 2), ({1, 2, 3, 8, 9, 10}, {4, 5, 6, 11, 12, 13})),
    ((14, 3), ({1, 4, 5, 8, 11, 12}, {3, 6, 7, 10, 13, 14})),
    ((14, 4), ({1, 4, 5, 8, 11, 12}, {3, 6, 7, 10, 13, 14})),
    ((14, 5), ({1, 2, 3, 8, 9, 10}, {4, 5, 6, 11, 12, 13})),
    ((14, 6), ({1, 2, 3, 8, 9, 10}, {4, 5, 6, 11, 12, 13})),
)


def table1_sets(n: int, t: int) -> tuple[frozenset[int], frozenset[int]] | None:
    """Registry sets for ``<1, t, n/2>_n`` as 0-indexed vertices."""
    for key, (a, b) in TABLE1:
        if key == (n, t):
            return frozenset(x - 1 for x in a), frozenset(x - 1 for x in b)
    return None


SMALL_EXCEPTIONS = {(6, 2): "K6", (10, 2): "C125_10", (10, 3): "K55"}


def explicit_sets(k: int, t_star: int) -> list[tuple[str, frozenset[int], frozenset[int]]]:
    """Candidate pairs of 3-cohesive sets of ``<1, t*, k>_{2k}`` for ``k >= 8`` (0-indexed).

    For ``t*`` near 1 or near ``k`` the printed window ``{1..4, k..k+3}`` is
    tried first; it fails verification in general, so the window shifted to
    ``{1..4, k+1..k+4}`` follows. There each block of four consecutive
    vertices keeps a +-1 neighbour, its +k partner and a +-t* neighbour
    (inside the block when t* is 2 or 3, across blocks when t* = k - j).
    """
    n = 2 * k
    out = []
    if 4 <= t_star <= k - 4:
        a = [1, 2, t_star + 1, t_star + 2, k + 1, k + 2, t_star + k + 1, t_star + k + 2]
        out.append(("explicit-family", a, [x + 2 for x in a]))
    else:
        out.append(("explicit-window", [1, 2, 3, 4, k, k + 1, k + 2, k + 3],
                    [5, 6, 7, 8, k + 4, k + 5, k + 6, k + 7]))
        out.append(("shifted-window", [1, 2, 3, 4, k + 1, k + 2, k + 3, k + 4],
                    [5, 6, 7, 8, k + 5, k + 6, k + 7, k + 8]))
    return [(m, frozenset((x - 1) % n for x in a), frozenset((x - 1) % n for x in b)) for m, a, b in out]


def _pair_is_cohesive(g: Graph, a, b) -> bool:
    return (bool(a) and bool(b) and not (set(a) & set(b))
            and verify_cohesive(g, a, 3).valid and verify_cohesive(g, b, 3).valid)


def cyclic5_internal(spec: CyclicSpec5) -> ClassificationOutcome:
    g = spec.graph()
    n, r, t, k = spec.n, spec.r, spec.t, spec.k
    for x, y in ((t, r), (r, t)):
        if math.gcd(x, k) > 1:
            classes = gcd_partition(n, (y, x, k))
            rest = frozenset(range(n)) - classes[0]
            return _checked(g, Bipartition(classes[0], rest), "gcd-classes")
    if r % 2 == 0 and t % 2 == 0:
        evens = frozenset(range(0, n, 2))
        return _checked(g, Bipartition(evens, frozenset(range(n)) - evens), "even-index")
    if math.gcd(r, n) != 1:
        r, t = t, r
    t_star, mapping = reduce_rel_prime(CyclicSpec5(n, r, t))
    if (n, t_star) in SMALL_EXCEPTIONS:
        return _exceptional_outcome(g, SMALL_EXCEPTIONS[(n, t_star)], "small-exception")
    if k >= 8:
        cands = explicit_sets(k, t_star)
    else:
        sets = table1_sets(n, t_star)
        cands = [] if sets is None else [("table", *sets)]
    for method, a0, b0 in cands:
        a, b = (frozenset(mapping[x] for x in s) for s in (a0, b0))
        if _pair_is_cohesive(g, a, b):
            return _checked(g, extend_to_partition(g, a, b), method)
    return _search_outcome(g, "search")


# -- group plumbing -------------------------------------------------------------------

class _Group:
    """Abelian group ``Z_{d1} x ... x Z_{dr}`` with elements as mixed-radix indices."""

    def __init__(self, factors: Sequence[int]):
        self.factors = tuple(factors)
        self.elements = group_elements(self.factors)
        self.n = len(self.elements)

    def index(self, x) -> int:
        return element_index(x, self.factors)

    def add(self, i: int, j: int) -> int:
        x, y = self.elements[i], self.elements[j]
        return self.index(tuple((a + b) % d for a, b, d in zip(x, y, self.factors)))

    def neg(self, i: int) -> int:
        return self.index(tuple((-a) % d for a, d in zip(self.elements[i], self.factors)))

    def order(self, i: int) -> int:
        return math.lcm(*(d // math.gcd(a, d) for a, d in zip(self.elements[i], self.factors)))

    def span(self, gens: Sequence[int]) -> frozenset[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.add(x, s)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def cosets(self, sub: frozenset[int]) -> list[frozenset[int]]:
        out, covered = [], set()
        for x in range(self.n):
            if x not in covered:
                c = frozenset(self.add(x, h) for h in sub)
                covered |= c
                out.append(c)
        return out


def _tile_partition(grp: _Group, sub: frozenset[int]) -> Bipartition | None:
    tiles = grp.cosets(sub)
    if len(tiles) < 2:
        return None
    rest = frozenset(range(grp.n)) - tiles[0]
    return Bipartition(tiles[0], rest)


def z2t_partition(t: int, gens: Sequence[Sequence[int]]) -> Bipartition:
    """Internal partition of ``Cay(Z_2^t, {g1..g5})``."""
    gens = [tuple(int(c) % 2 for c in x) for x in gens]
    if t < 3 or len(gens) != 5 or len(set(gens)) != 5 or any(len(x) != t or not any(x) for x in gens):
        raise ContractError("need 5 distinct nonzero elements of Z_2^t with t >= 3")
    grp = _Group((2,) * t)
    idx = [grp.index(x) for x in gens]
    if t == 3:
        # the complement is the union of two perfect matchings, hence bipartite
        rest = [x for x in range(1, 8) if x not in idx]
        comp = Graph(8, {tuple(sorted((v, grp.add(v, s)))) for v in range(8) for s in rest})
        side = {}
        for cyc in cycles(comp):
            if len(cyc) % 2:
                raise AssertionError("odd cycle in a union of two matchings")  # pragma: no cover
            for i, v in enumerate(cyc):
                side[v] = i % 2
        a = frozenset(v for v in range(8) if side[v] == 0)
        return Bipartition(a, frozenset(range(8)) - a)
    g1, g2, g3, g4 = idx[:4]
    if g3 == grp.add(g1, g2):
        g3, g4 = g4, g3
    return _tile_partition(grp, grp.span([g1, g2, g3]))


def _lift(grp: _Group, a_prime: frozenset[int]) -> Bipartition:
    a = frozenset(i for i, x in enumerate(grp.elements) if x[1] in a_prime)
    return Bipartition(a, frozenset(range(grp.n)) - a)


def _translate_tiles(grp: _Group, spec: CayleySpec, q: int, p: int) -> Bipartition | None:
    # S = {(0,+-q), (1,+-q), (x,p)}: the lift of {0, q, p, p+q} is 3-cohesive
    m = 2 * p
    base = {0, q % m, p, (p + q) % m}
    for c in range(1, m):
        other = {(b + c) % m for b in base}
        if not base & other:
            g = gen_abelian_cayley(spec)
            a = [i for i, x in enumerate(grp.elements) if x[1] in base]
            b = [i for i, x in enumerate(grp.elements) if x[1] in other]
            if _pair_is_cohesive(g, a, b):
                return extend_to_partition(g, a, b)
    return None


def z2_x_z2p_partition(p: int, S: Sequence[Sequence[int]]) -> tuple[Bipartition | None, str]:
    """Constructive partition of ``Cay(Z_2 x Z_2p, S)``; returns ``(partition, method)``.

    The partition may be ``None`` (or fail verification) in degenerate
    subcases, in which case callers fall back to search.
    """
    if p < 2:
        raise ContractError("p must be > 1")
    factors = (2, 2 * p)
    spec = CayleySpec(factors, tuple(tuple(x) for x in S))
    spec.validate()
    grp = _Group(factors)
    T = {(1, 0), (0, p), (1, p)}
    inv = [x for x in spec.connection_set if x in T]
    others = [x for x in spec.connection_set if x not in T]
    if len(inv) == 3:
        tile = frozenset(grp.index((c, b)) for c in (0, 1) for b in (0, p))
        return _tile_partition(grp, tile), "k4-tiles"
    if len(inv) != 1:
        raise InvalidSpecError(f"|S n T| = {len(inv)} is impossible for valency 5")
    coords = sorted({_fold(x[1], 2 * p) for x in others})
    if inv[0] == (1, 0):
        offsets = coords
    else:
        if len(coords) == 1:
            return _translate_tiles(grp, spec, coords[0], p), "translate-tiles"
        offsets = coords + [p]
    gp = gen_circulant(2 * p, offsets)
    if gp.valency() == 5:
        sub = cyclic5_internal(CyclicSpec5(2 * p, offsets[0], offsets[1]))
        if not sub.has_partition:
            return None, "lift"
        ap = sub.partition.a
    else:
        cert = search_internal(gp, method="exhaustive" if gp.n <= 40 else "hybrid")
        if cert.kind != "internal-partition":
            return None, "lift"
        ap = cert.partition.a
    return _lift(grp, ap), "lift"


def abelian_internal_partition(spec: CayleySpec) -> ClassificationOutcome:
    spec.validate()
    f = spec.invariant_factors
    grp = _Group(f)
    S = [grp.index(x) for x in spec.connection_set]
    if len(S) != 5:
        raise ContractError(f"connection set has {len(S)} elements, need 5")
    sub = grp.span(S)
    if len(sub) != grp.n:
        raise ContractError(f"S generates a subgroup of order {len(sub)} < {grp.n}: graph is disconnected")
    g = gen_abelian_cayley(spec)
    invols = [s for s in S if grp.order(s) == 2]
    if all(d == 2 for d in f):
        return _checked(g, z2t_partition(len(f), spec.connection_set), "z2t")
    if len(invols) >= 3:
        if grp.n > 8:
            return _checked(g, _tile_partition(grp, grp.span(invols[:3])), "involution-cosets")
        return _search_outcome(g, "exhaustive-small")
    if len(f) == 1:
        ks = [s for s in S if s not in invols]
        r, t = sorted({_fold(grp.elements[s][0], grp.n) for s in ks})
        out = cyclic5_internal(CyclicSpec5(grp.n, r, t))
        out.method = "cyclic:" + out.method
        return out
    if len(f) == 2 and f[0] == 2:
        p, method = z2_x_z2p_partition(f[1] // 2, spec.connection_set)
        return _checked(g, p, "z2p:" + method)
    non = [s for s in S if s not in invols]
    g1 = min(non, key=grp.order)
    if not 2 * grp.order(g1) < grp.n:
        raise AssertionError(f"element of order {grp.order(g1)} in non-cyclic group of order {grp.n}")
    return _checked(g, _tile_partition(grp, grp.span([g1, invols[0]])), "cycle-cosets")


# -- enumeration ----------------------------------------------------------------------

def _partitions(e: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    max_part = e if max_part is None else max_part
    if e == 0:
        yield ()
        return
    for first in range(min(e, max_part), 0, -1):
        for rest in _partitions(e - first, first):
            yield (first,) + rest


def abelian_groups(n: int) -> list[tuple[int, ...]]:
    """Invariant-factor chains of every Abelian group of order ``n``."""
    primes = []
    m, p = n, 2
    while m > 1:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            primes.append((p, e))
        p += 1
    per_prime = [[tuple(p**x for x in part) for part in _partitions(e)] for p, e in primes]
    out = []
    for combo in itertools.product(*per_prime):
        width = max((len(c) for c in combo), default=0)
        factors = [1] * width
        for c in combo:
            # largest powers go to the last factors
            for i, q in enumerate(c):
                factors[width - 1 - i] *= q
        out.append(tuple(factors))
    return sorted(out, key=lambda fs: (len(fs), fs))


def enumerate_abelian_cayley(max_order: int, valency: int = 5) -> Iterator[CayleySpec]:
    """Connected valency-5 Cayley specs on every Abelian group of even order."""
    if valency != 5:
        raise ValueError("only valency 5 is supported")
    for n in range(6, max_order + 1, 2):
        for f in abelian_groups(n):
            grp = _Group(f)
            invols = [x for x in range(1, grp.n) if grp.order(x) == 2]
            pairs = sorted({min(x, grp.neg(x)) for x in range(1, grp.n) if grp.order(x) > 2})
            for ni in (5, 3, 1):
                for inv in itertools.combinations(invols, ni):
                    for pr in itertools.combinations(pairs, (5 - ni) // 2):
                        S = sorted(set(inv) | set(pr) | {grp.neg(x) for x in pr})
                        if len(grp.span(S)) != grp.n:
                            continue
                        yield CayleySpec(f, tuple(grp.elements[s] for s in S))


def exceptional_reference(name: str) -> Graph:
    return {"K6": gen_circulant(6, (1, 2, 3)), "K55": gen_circulant(10, (1, 3, 5)),
            "C125_10": gen_circulant(10, (1, 2, 5))}[name]


# -- near-complete circulants ---------------------------------------------------------

@dataclass
class NearCompleteResult:
    has_partition: bool
    odd_cycle_count: int
    partition: Bipartition | None = None


def classify_near_complete(g: Graph) -> NearCompleteResult:
    """Decide internal partitions of an ``(n-3)``-regular graph from its complement's cycles."""
    n = g.n
    if n < 4 or not g.is_regular(n - 3):
        raise ContractError("graph is not (n-3)-regular with n >= 4")
    cyc = cycles(complement(g))
    odd = sum(1 for c in cyc if len(c) % 2)
    if odd > 1:
        return NearCompleteResult(False, odd)
    a = set()
    for c in cyc:
        a.update(c[0::2])
    p = Bipartition(frozenset(a), frozenset(range(n)) - frozenset(a))
    if not verify_internal(g, p).valid:
        raise AssertionError("near-bisection failed to verify")  # pragma: no cover
    return NearCompleteResult(True, odd, p)


def near_complete_circulant(n: int, s: int) -> Graph:
    """Complement of the 2-regular circulant ``<s>_n``."""
    return complement(gen_circulant(n, (s,)))


@dataclass
class PowerOfTwoResult:
    n: int
    exists_counterexample: bool
    witness_offset: int | None = None
    checked: list[int] = field(default_factory=list)


def power_of_two_scan(n: int) -> PowerOfTwoResult:
    """Look for an ``(n-3)``-regular circulant on ``n`` vertices without internal partition."""
    if n <= 2 or n % 2:
        raise ContractError("n must be even and > 2")
    odd = n
    while odd % 2 == 0:
        odd //= 2
    if odd > 1:
        l = next(p for p in range(3, odd + 1, 2) if odd % p == 0)
        m = n // l
        res = classify_near_complete(near_complete_circulant(n, m))
        if res.has_partition:
            raise AssertionError(f"<{m}>_{n} complement unexpectedly has a partition")  # pragma: no cover
        return PowerOfTwoResult(n, True, m, [m])
    checked = []
    for s in range(1, n // 2):
        if n == 4:
            break
        res = classify_near_complete(near_complete_circulant(n, s))
        if not res.has_partition:
            raise AssertionError(f"<{s}>_{n} complement has no partition")  # pragma: no cover
        checked.append(s)
    return PowerOfTwoResult(n, False, None, checked)


# -- Paley graphs ---------------------------------------------------------------------

@dataclass
class PaleyRow:
    q: int
    prime: bool
    certificate: Certificate | None
    method: str
    verified: bool
    seconds: float = 0.0

    @property
    def complete(self) -> bool:
        return self.certificate is not None and self.verified


DESCENT_SCHEDULE = ((2000, 4), (8000, 4), (32000, 4))


def paley_internal(q: int, seed: int = 0, switch_restarts: int = 16,
                   schedule=DESCENT_SCHEDULE) -> PaleyRow:
    t0 = time.perf_counter()
    g = gen_paley(q)
    prime = factor_prime_power(q)[1] == 1
    rng = random.Random(seed * 1_000_003 + q)

    def row(p, method):
        ok = verify_internal(g, p).valid
        return PaleyRow(q, prime, Certificate.internal(g, p) if ok else None, method, ok,
                        time.perf_counter() - t0)

    if q <= 17:
        cert = exhaustive_internal(g)
        if cert.kind == "internal-partition":
            return row(cert.partition, "exhaustive")
        return PaleyRow(q, prime, None, "exhaustive:none", False, time.perf_counter() - t0)
    for _ in range(switch_restarts):
        cert, _trace = local_switch(g, random_bisection(q, rng))
        if cert is not None:
            return row(cert.partition, "switch")
    for steps, restarts in schedule:
        for _ in range(restarts):
            p = _deficit_descent(g, rng, steps)
            if p is not None and verify_internal(g, p).valid:
                return row(p, f"descent:{steps}")
    return PaleyRow(q, prime, None, "budget-exhausted", False, time.perf_counter() - t0)


def paley_scan(max_q: int, seed: int = 0, jobs: int = 1, schedule=DESCENT_SCHEDULE) -> list[PaleyRow]:
    """One row per prime power ``q = 1 mod 4`` up to ``max_q``; unfinished rows are kept, flagged."""
    if max_q > 500:
        raise ContractError("paley_scan supports max_q <= 500")
    qs = paley_orders(max_q)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(partial(paley_internal, seed=seed, schedule=schedule), qs))
    return [paley_internal(q, seed, schedule=schedule) for q in qs]

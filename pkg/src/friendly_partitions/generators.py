"""Graph families: circulants, Abelian Cayley graphs, Paley graphs, complete
graphs, switching-hard sharpness families and random regular graphs."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .finite_field import GF, factor_prime_power
from .graph import Bipartition, Graph


class InvalidSpecError(ValueError):
    """Generator parameters do not describe a valid graph."""


class RealizationError(ValueError):
    """A bipartite degree sequence cannot be realised."""


class RetryExhaustedError(RuntimeError):
    """The random regular sampler hit its retry cap."""


# -- circulants and Abelian Cayley graphs ---------------------------------------

def gen_circulant(n: int, offsets: Iterable[int]) -> Graph:
    """Circulant ``<o_1, ..., o_t>_n``: vertex ``i`` is adjacent to ``i +- o`` mod ``n``."""
    offsets = list(offsets)
    if n < 3:
        raise InvalidSpecError("circulant needs n >= 3")
    if len(set(offsets)) != len(offsets):
        raise InvalidSpecError(f"repeated offset in {offsets}")
    for o in offsets:
        if not 1 <= o <= n // 2:
            raise InvalidSpecError(f"offset {o} outside 1..{n // 2}")
    edges = set()
    for i in range(n):
        for o in offsets:
            j = (i + o) % n
            edges.add((min(i, j), max(i, j)))
    return Graph(n, edges)


@dataclass(frozen=True)
class CayleySpec:
    """Finite Abelian group ``Z_{d1} x ... x Z_{dr}`` plus a connection set.

    ``invariant_factors`` must form a divisibility chain; each element of
    ``connection_set`` is an ``r``-tuple of residues.
    """

    invariant_factors: tuple[int, ...]
    connection_set: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        conn = tuple(
            tuple(int(c) % d for c, d in zip((s,) if isinstance(s, int) else s, factors))
            for s in self.connection_set
        )
        object.__setattr__(self, "invariant_factors", factors)
        object.__setattr__(self, "connection_set", conn)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def validate(self) -> None:
        f = self.invariant_factors
        if not f or any(d < 2 for d in f):
            raise InvalidSpecError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(f, f[1:])):
            raise InvalidSpecError(f"invariant factors {list(f)} are not a divisibility chain")
        s = self.connection_set
        for x in s:
            if len(x) != len(f):
                raise InvalidSpecError(f"element {x} has wrong arity")
        if len(set(s)) != len(s):
            raise InvalidSpecError("connection set has duplicates")
        zero = tuple(0 for _ in f)
        if zero in s:
            raise InvalidSpecError("connection set contains the identity")
        sset = set(s)
        for x in s:
            if neg(x, f) not in sset:
                raise InvalidSpecError(f"connection set not symmetric: {format_element(x)}")

    def __str__(self) -> str:
        group = "x".join(f"Z{d}" for d in self.invariant_factors)
        return f"Cay({group}; {{{', '.join(format_element(x) for x in self.connection_set)}}})"


def neg(x: Sequence[int], factors: Sequence[int]) -> tuple[int, ...]:
    return tuple((-c) % d for c, d in zip(x, factors))


def add(x: Sequence[int], y: Sequence[int], factors: Sequence[int]) -> tuple[int, ...]:
    return tuple((a + b) % d for a, b, d in zip(x, y, factors))


def element_index(x: Sequence[int], factors: Sequence[int]) -> int:
    """Mixed-radix index, first coordinate most significant."""
    i = 0
    for c, d in zip(x, factors):
        i = i * d + c
    return i


def group_elements(factors: Sequence[int]) -> list[tuple[int, ...]]:
    """All elements in mixed-radix order (``element_index`` is the position)."""
    return list(product(*(range(d) for d in factors)))


def format_element(x: Sequence[int]) -> str:
    return ":".join(str(c) for c in x)


def parse_element(text: str, factors: Sequence[int]) -> tuple[int, ...]:
    parts = text.split(":")
    if len(parts) != len(factors):
        raise InvalidSpecError(f"element {text!r} needs {len(factors)} coordinates")
    return tuple(int(c) % d for c, d in zip(parts, factors))


def gen_abelian_cayley(spec: CayleySpec) -> Graph:
    spec.validate()
    f = spec.invariant_factors
    edges = set()
    for x in group_elements(f):
        i = element_index(x, f)
        for s in spec.connection_set:
            j = element_index(add(x, s, f), f)
            edges.add((min(i, j), max(i, j)))
    return Graph(spec.order, edges)


# -- Paley graphs ---------------------------------------------------------------

def gen_paley(q: int) -> Graph:
    """Paley graph on GF(q): ``x ~ y`` iff ``x - y`` is a nonzero square."""
    if factor_prime_power(q) is None:
        raise InvalidSpecError(f"{q} is not a prime power")
    if q % 4 != 1:
        raise InvalidSpecError(f"q = {q} is not 1 mod 4")
    field = GF(q)
    squares = sorted(field.nonzero_squares())
    edges = set()
    for x in range(q):
        for s in squares:
            y = field.add(x, s)
            edges.add((min(x, y), max(x, y)))
    return Graph(q, edges)


def paley_orders(max_q: int) -> list[int]:
    """Prime powers ``q <= max_q`` with ``q = 1 mod 4``."""
    return [q for q in range(5, max_q + 1) if q % 4 == 1 and factor_prime_power(q)]


# -- standard graphs ------------------------------------------------------------

def gen_standard(kind: str, size: int) -> Graph:
    if size < 1:
        raise InvalidSpecError("size must be >= 1")
    if kind == "complete":
        return Graph(size, [(u, v) for u in range(size) for v in range(u + 1, size)])
    if kind == "complete_bipartite":
        return Graph(2 * size, [(u, size + v) for u in range(size) for v in range(size)])
    raise InvalidSpecError(f"unknown kind {kind!r}")


def complete(n: int) -> Graph:
    return gen_standard("complete", n)


def complete_bipartite(n: int) -> Graph:
    return gen_standard("complete_bipartite", n)


# -- Gale-Ryser realisation -----------------------------------------------------

@dataclass(frozen=True)
class DeficiencySequence:
    """Required extra degrees on the left and right side of a bipartite completion."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))


def gale_ryser_feasible(left: Sequence[int], right: Sequence[int]) -> bool:
    if any(x < 0 for x in left) or any(x < 0 for x in right):
        return False
    if sum(left) != sum(right):
        return False
    a = sorted(left, reverse=True)
    total = 0
    for k, ak in enumerate(a, start=1):
        total += ak
        if total > sum(min(b, k) for b in right):
            return False
    return True


def gale_ryser_complete(
    seq: DeficiencySequence, forbidden: Iterable[tuple[int, int]] = ()
) -> list[tuple[int, int]]:
    """Simple bipartite graph with the given degree sequences.

    Greedy realisation: repeatedly take the left vertex of largest remaining
    deficiency and join it to the right vertices of largest remaining
    deficiency. Ties go to the lower index. Pairs in ``forbidden`` (left,
    right) are never used. Returns ``(left, right)`` index pairs.
    """
    left, right = list(seq.left), list(seq.right)
    if not gale_ryser_feasible(left, right):
        raise RealizationError(f"Gale-Ryser condition fails for left={left} right={right}")
    banned = set(forbidden)
    rem_l, rem_r = left[:], right[:]
    done = [False] * len(left)
    edges = []
    for _ in range(len(left)):
        i = min((j for j in range(len(left)) if not done[j]), key=lambda j: (-rem_l[j], j))
        done[i] = True
        cands = sorted(
            (j for j in range(len(right)) if rem_r[j] > 0 and (i, j) not in banned),
            key=lambda j: (-rem_r[j], j),
        )
        if len(cands) < rem_l[i]:
            raise RealizationError(
                f"greedy realisation stuck at left vertex {i} for left={left} right={right}"
            )
        for j in cands[: rem_l[i]]:
            rem_r[j] -= 1
            edges.append((i, j))
        rem_l[i] = 0
    if any(rem_r):
        raise RealizationError(f"unmatched right deficiency for left={left} right={right}")
    return edges


# -- switching-hard families ----------------------------------------------------

def gen_switching_hard(valency: int, half: int) -> tuple[Graph, Bipartition]:
    """Regular graph on ``2*half`` vertices with a small bisection ``(U, W)``
    from which lowest-index bad-vertex switching empties ``U``.

    ``u_i`` is vertex ``i - 1`` and ``w_i`` is vertex ``half + i - 1``.
    Valency 5 uses the explicit construction (``half >= 8`` even). Other
    valencies place a path power inside each class (distance ``<= k`` for
    valency ``2k+1``, ``<= k-1`` for ``2k``), add ``u_1 w_h`` and ``u_h w_1``,
    then complete the cross edges with :func:`gale_ryser_complete`.
    """
    if valency < 3:
        raise InvalidSpecError("valency must be >= 3")
    h = half
    U = list(range(h))
    W = [h + i for i in range(h)]
    p = Bipartition(frozenset(U), frozenset(W))
    if valency == 5:
        if h < 8 or h % 2:
            raise InvalidSpecError("valency 5 family needs an even half >= 8")
        u = lambda i: i - 1  # noqa: E731
        w = lambda i: h + i - 1  # noqa: E731
        edges = []
        for side in (u, w):
            edges += [(side(i), side(i + 1)) for i in range(1, h)]
            edges += [(side(i), side(i + 2)) for i in range(1, h - 1)]
        edges += [(u(i), w(i)) for i in range(1, h + 1)]
        edges += [
            (u(1), w(2)), (u(1), w(h)), (u(2), w(1)),
            (u(h - 1), w(h)), (u(h), w(1)), (u(h), w(h - 1)),
        ]
        return Graph(2 * h, edges), p
    k = valency // 2
    reach = k if valency % 2 else k - 1
    if h < 2 * k:
        raise InvalidSpecError(f"half must be >= {2 * k} for valency {valency}")
    edges = []
    for base in (0, h):
        edges += [(base + i, base + j) for i in range(h) for j in range(i + 1, min(h, i + reach + 1))]
    fixed = [(0, h + h - 1), (h - 1, h)]
    edges += fixed
    g0 = Graph(2 * h, edges)
    deficit = [valency - g0.degree(v) for v in range(2 * h)]
    seq = DeficiencySequence(deficit[:h], deficit[h:])
    try:
        cross = gale_ryser_complete(seq, forbidden=[(u_, w_ - h) for u_, w_ in fixed])
    except RealizationError as exc:
        raise InvalidSpecError(f"completion infeasible, deficiencies {seq}: {exc}") from exc
    edges += [(i, h + j) for i, j in cross]
    return Graph(2 * h, edges), p


# -- random regular graphs ------------------------------------------------------

def gen_random_regular(n: int, d: int, seed: int, max_attempts: int = 1000) -> Graph:
    """Random ``d``-regular simple graph from the pairing model.

    Stubs are paired at random; clashing pairs (loops, repeated edges) are
    returned to the pool and re-paired. A pool that cannot be completed
    discards the whole attempt. Deterministic per ``seed``.
    """
    if d < 0 or d >= n:
        raise InvalidSpecError("need 0 <= d < n")
    if (n * d) % 2:
        raise InvalidSpecError(f"n*d = {n * d} is odd")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            return Graph(n, edges)
    raise RetryExhaustedError(f"no simple {d}-regular pairing on {n} vertices in {max_attempts} attempts")


def _try_pairing(n: int, d: int, rng: random.Random) -> set | None:
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(d)]
    stalls = 0
    while stubs:
        rng.shuffle(stubs)
        leftover = []
        it = iter(stubs)
        for a, b in zip(it, it):
            e = (min(a, b), max(a, b))
            if a != b and e not in edges:
                edges.add(e)
            else:
                leftover += [a, b]
        if len(leftover) == len(stubs):
            stalls += 1
            if stalls > 20:
                return None
        stubs = leftover
    return edges

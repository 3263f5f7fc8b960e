"""Internal-partition verification and search, cohesive-set search and the
cluster-based bisection heuristics."""
from __future__ import annotations

import heapq
import itertools
import math
import random
import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .certificate import Certificate
from .graph import (
    Bipartition,
    ContractError,
    Graph,
    check_bipartition,
    check_vertex_set,
    connected_components,
    cut_size,
    k_core,
)


class BudgetExhausted(RuntimeError):
    """A search hit its node or restart budget before reaching a verdict."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class CohesiveSetNotFound(RuntimeError):
    """The cohesive-set search failed on every restart."""


def half_up(d: int) -> int:
    return (d + 1) // 2


# -- verification -----------------------------------------------------------------

@dataclass
class Verdict:
    valid: bool
    violations: list[tuple[int, int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def verify_internal(g: Graph, p: Bipartition) -> Verdict:
    """Every vertex needs at least as many neighbours in its own class as in the other.

    Violations are reported as ``(vertex, own, other)``.
    """
    check_bipartition(g, p)
    if p.trivial:
        raise ContractError("trivial partition: a class is empty")
    bad = []
    for v in range(g.n):
        cls = p.a if v in p.a else p.b
        own = sum(1 for u in g.adj[v] if u in cls)
        other = g.degree(v) - own
        if own < other:
            bad.append((v, own, other))
    return Verdict(not bad, bad)


def verify_cohesive(g: Graph, s: Iterable[int], k: int) -> Verdict:
    """Every member of ``s`` has at least ``k`` neighbours in ``s``.

    Violations are ``(vertex, inside, outside)``.
    """
    s = check_vertex_set(g, s)
    if not s:
        raise ContractError("cohesive set must be nonempty")
    bad = []
    for v in sorted(s):
        inside = sum(1 for u in g.adj[v] if u in s)
        if inside < k:
            bad.append((v, inside, g.degree(v) - inside))
    return Verdict(not bad, bad)


# -- local switching --------------------------------------------------------------

def switching_guarantee_threshold(valency: int, n: int) -> int:
    """Largest bisection size from which bad-vertex switching must end internal."""
    if valency < 3:
        raise ValueError("valency must be >= 3")
    k = valency // 2
    if valency % 2:
        return n // 2 + k * (k + 1) - 1
    return n + k * (k - 1) - 1


@dataclass
class SwitchTrace:
    initial_cut: int
    moves: list[tuple[int, int]] = field(default_factory=list)  # (vertex, class it left: 0=a, 1=b)
    cut_sizes: list[int] = field(default_factory=list)
    outcome: str = "internal"

    @property
    def move_vertices(self) -> list[int]:
        return [v for v, _ in self.moves]


def local_switch(
    g: Graph, p: Bipartition, policy: str | Sequence[int] = "lowest-index"
) -> tuple[Certificate | None, SwitchTrace]:
    """Move bad vertices to the other class until none is left.

    A vertex is bad when it has strictly fewer neighbours in its own class
    than in the other. ``policy`` is ``"lowest-index"`` or a priority order
    of vertices (unlisted vertices rank after it, by index). Returns an
    internal-partition certificate, or ``None`` when a class ran empty.
    """
    check_bipartition(g, p)
    n = g.n
    if policy == "lowest-index":
        rank = list(range(n))
    else:
        order = list(policy)
        rank = [n + v for v in range(n)]
        for i, v in enumerate(order):
            rank[v] = min(rank[v], i)
    side = p.labels(n)
    own = [0] * n
    for v in range(n):
        own[v] = sum(1 for u in g.adj[v] if side[u] == side[v])
    deg = g.degrees()
    cut = cut_size(g, p)
    trace = SwitchTrace(initial_cut=cut)
    heap = [(rank[v], v) for v in range(n) if 2 * own[v] < deg[v]]
    heapq.heapify(heap)
    sizes = [len(p.a), len(p.b)]
    while heap:
        _, v = heapq.heappop(heap)
        if 2 * own[v] >= deg[v]:
            continue
        s = side[v]
        other = deg[v] - own[v]
        cut -= other - own[v]
        side[v] = 1 - s
        own[v] = other
        sizes[s] -= 1
        sizes[1 - s] += 1
        for u in g.adj[v]:
            if side[u] == s:
                own[u] -= 1
                if 2 * own[u] < deg[u]:
                    heapq.heappush(heap, (rank[u], u))
            else:
                own[u] += 1
        trace.moves.append((v, s))
        trace.cut_sizes.append(cut)
    if sizes[0] and sizes[1]:
        a = frozenset(v for v in range(n) if side[v] == 0)
        q = Bipartition(a, frozenset(range(n)) - a)
        return Certificate.internal(g, q, moves=len(trace.moves)), trace
    trace.outcome = "trivial-end"
    return None, trace


def random_bisection(n: int, rng: random.Random) -> Bipartition:
    perm = list(range(n))
    rng.shuffle(perm)
    return Bipartition.from_class(n, perm[: (n + 1) // 2])


# -- exhaustive search ------------------------------------------------------------

def _bfs_order(g: Graph) -> list[int]:
    order, seen = [], [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        q = deque([s])
        while q:
            v = q.popleft()
            order.append(v)
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    q.append(u)
    return order


def exhaustive_internal(g: Graph, node_cap: int = 10_000_000) -> Certificate:
    """Complete search for an internal partition.

    Vertex 0 is fixed in class ``a``; a branch is cut as soon as some vertex
    can no longer reach ``ceil(d/2)`` neighbours in its class. Returns an
    internal-partition or nonexistence certificate; raises
    :class:`BudgetExhausted` when ``node_cap`` assignments were tried.
    """
    n = g.n
    if n < 2:
        return Certificate.nonexistence(g, nodes=0)
    order = _bfs_order(g)
    adj = g.adj
    need = [half_up(g.degree(v)) for v in range(n)]
    side = [-1] * n
    cnt = [[0] * n, [0] * n]
    una = g.degrees()
    nodes = 0
    in_b = 0

    def assign(x, s):
        side[x] = s
        c = cnt[s]
        for u in adj[x]:
            c[u] += 1
            una[u] -= 1

    def unassign(x, s):
        side[x] = -1
        c = cnt[s]
        for u in adj[x]:
            c[u] -= 1
            una[u] += 1

    def feasible(x, s):
        if cnt[s][x] + una[x] < need[x]:
            return False
        o = 1 - s
        co = cnt[o]
        for u in adj[x]:
            if side[u] == o and co[u] + una[u] < need[u]:
                return False
        return True

    def search(i):
        nonlocal nodes, in_b
        if i == n:
            return in_b > 0
        x = order[i]
        for s in ((0,) if i == 0 else (0, 1)):
            nodes += 1
            if nodes > node_cap:
                raise BudgetExhausted(f"node cap {node_cap} exceeded", nodes)
            assign(x, s)
            in_b += s
            if feasible(x, s) and search(i + 1):
                return True
            in_b -= s
            unassign(x, s)
        return False

    import sys

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 100)
    found = search(0)
    if found:
        a = frozenset(v for v in range(n) if side[v] == 0)
        p = Bipartition(a, frozenset(range(n)) - a)
        return Certificate.internal(g, p, nodes=nodes)
    return Certificate.nonexistence(g, nodes=nodes, fixed=order[0])


# -- heuristic search -------------------------------------------------------------

def _deficit_descent(g: Graph, rng: random.Random, max_steps: int) -> Bipartition | None:
    """Tabu descent on the total shortfall sum(max(0, ceil(d/2) - own)).

    Classes are kept above ``ceil(maxdeg/2)`` vertices so the empty class is
    never approached.
    """
    n = g.n
    A = np.zeros((n, n), dtype=np.int32)
    for v in range(n):
        A[v, list(g.adj[v])] = 1
    deg = A.sum(axis=1)
    need = (deg + 1) // 2
    floor = int(need.max()) + 1
    if 2 * floor > n:
        return None
    side = np.zeros(n, dtype=np.int32)
    perm = list(range(n))
    rng.shuffle(perm)
    side[perm[: n // 2]] = 1
    same = (side[:, None] == side[None, :]).astype(np.int32)
    own = (A * same).sum(axis=1)
    tabu = np.zeros(n, dtype=np.int64)
    nprng = np.random.default_rng(rng.getrandbits(32))
    best = None
    for step in range(max_steps):
        short = np.maximum(0, need - own)
        total = int(short.sum())
        if total == 0:
            a = frozenset(np.flatnonzero(side == 0).tolist())
            return Bipartition(a, frozenset(range(n)) - a)
        if best is None or total < best:
            best = total
        # marginal change of each vertex's shortfall if its own-count moves by -1 / +1
        lose = (own <= need).astype(np.int32)
        gain = -(own < need).astype(np.int32)
        s0 = side == 0
        # flipping v: neighbours on v's side lose one own-neighbour, the others gain one
        lose0, lose1 = A @ (lose * s0), A @ (lose * ~s0)
        gain0, gain1 = A @ (gain * s0), A @ (gain * ~s0)
        nbr = np.where(s0, lose0 + gain1, lose1 + gain0)
        self_new = np.maximum(0, need - (deg - own))
        delta = nbr + self_new - short
        sizes = np.array([int(s0.sum()), n - int(s0.sum())])
        allowed = sizes[side] - 1 >= floor
        allowed &= tabu <= step
        if not allowed.any():
            allowed = sizes[side] - 1 >= floor
        cand = np.where(allowed, delta, np.iinfo(np.int32).max)
        lowest = cand.min()
        choices = np.flatnonzero(cand == lowest)
        v = int(choices[nprng.integers(len(choices))])
        s = side[v]
        row = A[v]
        own += np.where(side == s, -row, row)
        own[v] = deg[v] - own[v]
        side[v] = 1 - s
        tabu[v] = step + 1 + int(nprng.integers(3, 3 + max(4, n // 10)))
    return None


def search_internal(
    g: Graph,
    method: str = "hybrid",
    seed: int = 0,
    restarts: int = 64,
    node_cap: int = 10_000_000,
    exhaustive_limit: int = 40,
    descent_steps: int = 2000,
) -> Certificate:
    """Find an internal partition.

    ``switch`` runs :func:`local_switch` from seeded random bisections,
    ``exhaustive`` runs :func:`exhaustive_internal`, ``hybrid`` tries
    switching, then tabu descent, then exhaustive search on graphs of at most
    ``exhaustive_limit`` vertices. Heuristic failure raises
    :class:`BudgetExhausted`; only the exhaustive path can certify
    nonexistence.
    """
    if method == "exhaustive":
        return exhaustive_internal(g, node_cap)
    if method not in ("switch", "hybrid"):
        raise ValueError(f"unknown method {method!r}")
    rng = random.Random(seed)
    if g.n >= 2:
        for r in range(restarts):
            cert, _ = local_switch(g, random_bisection(g.n, rng))
            if cert is not None:
                cert.stats.update(method="switch", restart=r)
                return cert
    if method == "switch":
        raise BudgetExhausted(f"switching failed on {restarts} restarts")
    if g.n <= exhaustive_limit:
        return exhaustive_internal(g, node_cap)
    for r in range(max(1, restarts // 8)):
        p = _deficit_descent(g, rng, descent_steps)
        if p is not None and verify_internal(g, p).valid:
            return Certificate.internal(g, p, method="descent", restart=r)
    raise BudgetExhausted("heuristic search exhausted its budget")


# -- extension of a cohesive pair -------------------------------------------------

def extend_to_partition(g: Graph, a: Iterable[int], b: Iterable[int]) -> Bipartition:
    """Grow two disjoint cohesive sets into an internal partition.

    Each member ``v`` of ``a`` (and of ``b``) must have ``ceil(d(v)/2)``
    neighbours in its own set. Outside vertices join ``a`` while they have
    ``ceil(d/2)`` neighbours there; the remainder joins ``b``.
    """
    a = check_vertex_set(g, a)
    b = check_vertex_set(g, b)
    if not a or not b:
        raise ContractError("both sets must be nonempty")
    if a & b:
        raise ContractError(f"sets overlap in vertex {min(a & b)}")
    for s in (a, b):
        for v in sorted(s):
            inside = sum(1 for u in g.adj[v] if u in s)
            if inside < half_up(g.degree(v)):
                raise ContractError(
                    f"vertex {v} has {inside} neighbours in its set, needs {half_up(g.degree(v))}"
                )
    in_a = set(a)
    rest = set(range(g.n)) - a - b
    count = {v: sum(1 for u in g.adj[v] if u in in_a) for v in rest}
    queue = deque(sorted(v for v in rest if count[v] >= half_up(g.degree(v))))
    while queue:
        v = queue.popleft()
        if v in in_a:
            continue
        in_a.add(v)
        for u in g.adj[v]:
            if u in count and u not in in_a:
                count[u] += 1
                if count[u] == half_up(g.degree(u)):
                    queue.append(u)
    A = frozenset(in_a)
    return Bipartition(A, frozenset(range(g.n)) - A)


# -- Ban-Linial cohesive sets -----------------------------------------------------

def cohesive_size_bound(n: int, d: int) -> int:
    return (n + 1) // 2 if d % 2 == 0 else n // 2 + 1


def _dense_adjacency(g: Graph) -> np.ndarray:
    A = np.zeros((g.n, g.n), dtype=np.int32)
    for v in range(g.n):
        if g.adj[v]:
            A[v, list(g.adj[v])] = 1
    return A


def _densest_window(A: np.ndarray, x: np.ndarray, rng: np.random.Generator, kicks: int) -> np.ndarray:
    """Swap local search maximising edges inside the window ``x`` (fixed size)."""
    x = x.copy()
    n = len(x)
    dW = A @ x.astype(np.int32)
    best_x, best_val = x.copy(), int(dW[x].sum())
    for kick in range(kicks + 1):
        while True:
            inside = np.flatnonzero(x)
            outside = np.flatnonzero(~x)
            if len(inside) == 0 or len(outside) == 0:
                break
            di, do = dW[inside], dW[outside]
            u_cands = inside[di == di.min()]
            v_cands = outside[do == do.max()]
            gain = int(do.max() - di.min())
            moved = False
            if gain > 1 or (gain == 1 and _has_nonadjacent(A, u_cands, v_cands)):
                if gain > 1:
                    u = int(u_cands[rng.integers(len(u_cands))])
                    v = int(v_cands[rng.integers(len(v_cands))])
                else:
                    u, v = _nonadjacent_pair(A, u_cands, v_cands, rng)
                x[u], x[v] = False, True
                dW += A[v] - A[u]
                moved = True
            if not moved:
                break
        val = int(dW[x].sum())
        if val > best_val:
            best_val, best_x = val, x.copy()
        if kick < kicks:
            # perturb: swap a few random pairs
            x = best_x.copy()
            inside = np.flatnonzero(x)
            outside = np.flatnonzero(~x)
            t = min(len(inside), len(outside), max(1, n // 20))
            out_u = rng.choice(inside, t, replace=False)
            in_v = rng.choice(outside, t, replace=False)
            x[out_u], x[in_v] = False, True
            dW = A @ x.astype(np.int32)
    return best_x


def _has_nonadjacent(A, us, vs) -> bool:
    return bool((A[np.ix_(us, vs)] == 0).any())


def _nonadjacent_pair(A, us, vs, rng):
    sub = A[np.ix_(us, vs)]
    i, j = np.nonzero(sub == 0)
    t = rng.integers(len(i))
    return int(us[i[t]]), int(vs[j[t]])


def _bfs_ball(g: Graph, start: int, size: int) -> list[int]:
    seen = {start}
    order = [start]
    q = deque([start])
    while q and len(order) < size:
        v = q.popleft()
        for u in g.adj[v]:
            if u not in seen:
                seen.add(u)
                order.append(u)
                q.append(u)
                if len(order) == size:
                    break
    return order


def _witness_key(s: frozenset[int]):
    return (len(s), sorted(s))


def ban_linial_cohesive(g: Graph, seed: int = 0, restarts: int = 32, kicks: int = 2) -> frozenset[int]:
    """Small ``ceil(d/2)``-cohesive set of a ``d``-regular graph.

    The target size starts at ``ceil(n/2)`` (``d`` even) or ``n/2 + 1``
    (``d`` odd). Each restart grows a window of the target size, maximises
    the edges inside it by swaps and peels both the window and its
    complement to their ``ceil(d/2)``-cores. After a success the target
    shrinks below the witness found. Graphs with at most 20 vertices fall
    back to an exhaustive subset search when every restart fails.
    """
    d = g.valency()
    c = half_up(d)
    n = g.n
    if d == 0:
        raise ContractError("graph has no edges")
    bound = cohesive_size_bound(n, d)
    rng = np.random.default_rng(seed)
    A = _dense_adjacency(g)
    best: frozenset[int] | None = None
    target = bound
    for _ in range(restarts):
        if target <= c:
            break
        start = int(rng.integers(n))
        x = np.zeros(n, dtype=bool)
        x[_bfs_ball(g, start, target)] = True
        if x.sum() < target:
            extra = rng.choice(np.flatnonzero(~x), target - int(x.sum()), replace=False)
            x[extra] = True
        while True:
            x = _densest_window(A, x, rng, kicks)
            found = None
            for cand in (np.flatnonzero(x), np.flatnonzero(~x)):
                core = k_core(g, c, within=cand.tolist())
                if core and len(core) <= target and (found is None or _witness_key(core) < _witness_key(found)):
                    found = core
            if found is None:
                break
            if best is None or _witness_key(found) < _witness_key(best):
                best = found
            target = len(found) - 1
            if target <= c:
                break
            # warm start: keep the witness, drop its least attached vertices
            x = np.zeros(n, dtype=bool)
            keep = sorted(found, key=lambda v: (int(A[v, list(found)].sum()), v), reverse=True)
            x[keep[:target]] = True
    if best is None and n <= 20:
        best = _smallest_cohesive_exhaustive(g, c, bound)
    if best is None:
        raise CohesiveSetNotFound(f"no {c}-cohesive set of size <= {bound} found in {restarts} restarts")
    return best


def _smallest_cohesive_exhaustive(g: Graph, c: int, bound: int) -> frozenset[int] | None:
    for size in range(c + 1, bound + 1):
        for combo in itertools.combinations(range(g.n), size):
            core = k_core(g, c, within=combo)
            if len(core) == size:
                return core
    return None


# -- cluster-based bisection ------------------------------------------------------

def _clusters(g: Graph, size: int, rng: random.Random) -> tuple[list[list[int]], list[int]]:
    """Grow connected clusters of ``size`` vertices by BFS over unclustered vertices.

    Vertices that cannot be gathered into a full cluster form the remainder.
    """
    free = [True] * g.n
    starts = list(range(g.n))
    rng.shuffle(starts)
    clusters, remainder = [], []
    for s in starts:
        if not free[s]:
            continue
        grown = [s]
        free[s] = False
        q = deque([s])
        while q and len(grown) < size:
            v = q.popleft()
            nbrs = [u for u in g.adj[v] if free[u]]
            rng.shuffle(nbrs)
            for u in nbrs:
                free[u] = False
                grown.append(u)
                q.append(u)
                if len(grown) == size:
                    break
        if len(grown) == size:
            clusters.append(grown)
        else:
            remainder.extend(grown)
    return clusters, remainder


def _check_km_input(g: Graph) -> None:
    if g.n == 0 or 2 * g.m < 2 * g.n:
        raise ContractError("average degree must be at least 2")
    if len(connected_components(g)) > 1:
        warnings.warn("graph is disconnected; clustering runs per component", stacklevel=3)


def km_bisection(g: Graph, seed: int = 0, rounds: int = 64) -> tuple[Bipartition, int]:
    """Cluster-then-randomise bisection.

    Vertices are grouped into connected clusters of ``ceil(sqrt(n))``; each
    round reclusters, sends half of the clusters to each side at random and
    splits the leftover vertices evenly. The best cut over ``rounds`` rounds
    is returned; odd ``n`` gives class sizes differing by one.
    """
    _check_km_input(g)
    n = g.n
    size = max(1, math.isqrt(n - 1) + 1)
    rng = random.Random(seed)
    best = None
    for _ in range(rounds):
        clusters, remainder = _clusters(g, size, rng)
        if len(clusters) % 2:
            remainder.extend(clusters.pop())
        rng.shuffle(clusters)
        rng.shuffle(remainder)
        a = [v for c in clusters[: len(clusters) // 2] for v in c]
        a += remainder[: (len(remainder) + 1) // 2]
        p = Bipartition.from_class(n, a)
        cut = cut_size(g, p)
        key = (cut, sorted(p.a))
        if best is None or key < best[0]:
            best = (key, p)
    (cut, _), p = best
    return p, cut


def induced_edge_count(g: Graph, s: Iterable[int]) -> int:
    s = frozenset(s)
    return sum(1 for v in s for u in g.adj[v] if u in s and u > v)


def km_dense_subgraph(g: Graph, target: int, seed: int = 0, rounds: int = 64) -> frozenset[int]:
    """``target`` vertices with many induced edges, assembled from whole clusters.

    Random clusters are taken while they fit; the rest is filled greedily
    with the vertices having most neighbours in the current set.
    """
    if not 1 <= target <= g.n:
        raise ValueError(f"target must be in 1..{g.n}")
    _check_km_input(g)
    n = g.n
    size = max(1, math.isqrt(n - 1) + 1)
    rng = random.Random(seed)
    best = None
    for _ in range(rounds):
        clusters, _ = _clusters(g, size, rng)
        rng.shuffle(clusters)
        chosen: set[int] = set()
        for c in clusters:
            if len(chosen) + len(c) <= target:
                chosen.update(c)
        attach = [0] * n
        for v in chosen:
            for u in g.adj[v]:
                attach[u] += 1
        while len(chosen) < target:
            pool = [v for v in range(n) if v not in chosen]
            top = max(attach[v] for v in pool)
            picks = [v for v in pool if attach[v] == top]
            v = picks[rng.randrange(len(picks))]
            chosen.add(v)
            for u in g.adj[v]:
                attach[u] += 1
        s = frozenset(chosen)
        key = (-induced_edge_count(g, s), sorted(s))
        if best is None or key < best[0]:
            best = (key, s)
    return best[1]

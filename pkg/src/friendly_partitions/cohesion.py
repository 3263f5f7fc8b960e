"""Pairs of 3-cohesive sets with small intersection in 5-regular graphs.

The pipeline takes a small 3-cohesive set ``H``, carves out of it a
``k``-vertex edge set of maximum degree 3, tops that up to minimum degree 3
(the edge set ``E*``) and peels ``G - E*`` to its 3-core. The vertices
covered by ``E*`` cannot survive the peeling, so the two cohesive sets
overlap in at most ``|H| - k`` vertices.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .engine import CohesiveSetNotFound, ban_linial_cohesive, verify_cohesive
from .graph import ContractError, Graph, k_core

MU_POLY = (36, -45, 0, 0, 0, 8)  # 36x^5 - 45x^4 + 8, highest degree first


class StageError(RuntimeError):
    """A pipeline stage could not deliver its guarantee."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage {stage}: {message}")
        self.stage = stage


def _horner(coeffs, x):
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def mu_root(tol: float = 1e-12) -> float:
    """Root of ``36x^5 - 45x^4 + 8`` in (0, 1) by bisection.

    The polynomial is +8 at 0, -1 at 1 and strictly decreasing in between.
    """
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _horner(MU_POLY, mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


MU = mu_root()


def f_lower_bound(k: float, n: float) -> float:
    """Guaranteed edge count of a ``k``-vertex max-degree-3 subgraph of a
    3-cohesive, max-degree-5 graph on ``n`` vertices."""
    if n <= 0:
        raise ValueError("n must be positive")
    if k <= MU * n:
        return k + 0.1355 * k * k / n
    return 1.875 * k**2 / n - 1.875 * k**5 / n**4 + 1.125 * k**6 / n**5


def optimized_k(n: int) -> float:
    """Smaller root of ``2k - 0.1355 k^2 / n = n/2 + 3``, i.e. ``3k - f(k) = n/2 + 3`` below ``mu n``."""
    return (2 * n - math.sqrt(3.729 * n * n - 1.626 * n)) / (2 * 0.1355)


# -- bounded-degree subgraphs -----------------------------------------------------

@dataclass(frozen=True)
class BoundedSubgraph:
    """Vertex set plus an edge subset of the host (not necessarily induced)."""

    vertices: frozenset[int]
    edges: tuple[tuple[int, int], ...]

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees().values(), default=0)


def check_bounded_subgraph(sub: BoundedSubgraph, h: Graph, max_degree: int = 3) -> list[str]:
    """Problems with ``sub`` as an edge-subgraph of ``h``; empty when valid."""
    problems = []
    if len(set(sub.edges)) != len(sub.edges):
        problems.append("repeated edge")
    for u, v in sub.edges:
        if u not in sub.vertices or v not in sub.vertices:
            problems.append(f"edge ({u}, {v}) leaves the vertex set")
        elif not h.has_edge(u, v):
            problems.append(f"edge ({u}, {v}) is not a host edge")
    for v, d in sub.degrees().items():
        if d > max_degree:
            problems.append(f"vertex {v} has degree {d}")
    return problems


def _check_host(h: Graph) -> None:
    degs = h.degrees()
    if not degs:
        raise ContractError("empty host graph")
    if min(degs) < 3:
        raise ContractError(f"host is not 3-cohesive: vertex {degs.index(min(degs))} has degree {min(degs)}")
    if max(degs) > 5:
        raise ContractError(f"host has maximum degree {max(degs)} > 5")


def _norm(u, v):
    return (u, v) if u < v else (v, u)


def _max_cap_edges_exact(h: Graph, s: tuple[int, ...], cap: int, stop_at: int | None = None) -> list:
    """Maximum edge subset of ``h[s]`` with all degrees <= ``cap`` (branch and bound)."""
    sset = set(s)
    edges = [(u, v) for u in s for v in h.adj[u] if u < v and v in sset]
    deg_in = {v: 0 for v in s}
    for u, v in edges:
        deg_in[u] += 1
        deg_in[v] += 1
    ceiling = min(len(edges), sum(min(cap, d) for d in deg_in.values()) // 2)
    if stop_at is not None:
        ceiling = min(ceiling, stop_at)
    load = {v: 0 for v in s}
    best: list = []
    chosen: list = []

    def rec(i):
        nonlocal best
        if len(chosen) > len(best):
            best = chosen[:]
            if len(best) >= ceiling:
                return True
        if i == len(edges):
            return False
        rem_cap = sum(cap - load[v] for v in s) // 2
        if len(chosen) + min(len(edges) - i, rem_cap) <= len(best):
            return False
        u, v = edges[i]
        if load[u] < cap and load[v] < cap:
            load[u] += 1
            load[v] += 1
            chosen.append((u, v))
            done = rec(i + 1)
            chosen.pop()
            load[u] -= 1
            load[v] -= 1
            if done:
                return True
        return rec(i + 1)

    rec(0)
    return best


def exact_bounded_subgraph(h: Graph, k: int, cap: int = 3) -> BoundedSubgraph:
    """Best ``k``-vertex subgraph with maximum degree ``cap`` by enumerating vertex sets."""
    if not 0 <= k <= h.n:
        raise ValueError(f"k must be in 0..{h.n}")
    best_s: tuple[int, ...] = tuple(range(k))
    best_e: list = []
    hard_max = (cap * k) // 2
    for s in itertools.combinations(range(h.n), k):
        sset = set(s)
        e_in = sum(1 for u in s for v in h.adj[u] if u < v and v in sset)
        if min(e_in, hard_max) <= len(best_e):
            continue
        got = _max_cap_edges_exact(h, s, cap)
        if len(got) > len(best_e):
            best_s, best_e = s, got
            if len(best_e) == hard_max:
                break
    return BoundedSubgraph(frozenset(best_s), tuple(sorted(best_e)))


def _greedy_cap_edges(h: Graph, s: set[int], start: list, rng: random.Random, cap: int = 3) -> list:
    """Extend ``start`` greedily inside ``h[s]`` then improve by augmenting paths."""
    load = {v: 0 for v in s}
    chosen = set()
    for u, v in start:
        if load[u] < cap and load[v] < cap:
            chosen.add(_norm(u, v))
            load[u] += 1
            load[v] += 1
    cand = [(u, v) for u in s for v in h.adj[u] if u < v and v in s and (u, v) not in chosen]
    rng.shuffle(cand)
    # prefer edges between lightly loaded, poorly connected endpoints
    inner = {v: sum(1 for u in h.adj[v] if u in s) for v in s}
    cand.sort(key=lambda e: inner[e[0]] + inner[e[1]])
    for u, v in cand:
        if load[u] < cap and load[v] < cap:
            chosen.add((u, v))
            load[u] += 1
            load[v] += 1
    _augment_paths(h, s, chosen, load, cap)
    return sorted(chosen)


def _augment_paths(h: Graph, s: set[int], chosen: set, load: dict, cap: int, max_len: int = 9) -> None:
    """Flip alternating paths between two unsaturated vertices (one more edge each time)."""
    improved = True
    while improved:
        improved = False
        free = [v for v in s if load[v] < cap]
        for root in free:
            if load[root] >= cap:
                continue
            path = _find_alternating(h, s, chosen, load, cap, root, max_len)
            if path is None:
                continue
            for i, (u, v) in enumerate(zip(path, path[1:])):
                e = _norm(u, v)
                if i % 2 == 0:
                    chosen.add(e)
                else:
                    chosen.discard(e)
            load[path[0]] += 1
            load[path[-1]] += 1
            improved = True


def _find_alternating(h, s, chosen, load, cap, root, max_len):
    stack = [(root, [root], False)]
    while stack:
        v, path, need_chosen = stack.pop()
        if len(path) > max_len:
            continue
        used = set(path)
        for u in h.adj[v]:
            if u not in s or u in used:
                continue
            e = _norm(v, u)
            if (e in chosen) != need_chosen:
                continue
            if not need_chosen and load[u] < cap:
                return path + [u]
            stack.append((u, path + [u], not need_chosen))
    return None


def _trim_to(h: Graph, s: set[int], edges: list, k: int, rng: random.Random) -> tuple[set, list]:
    """Drop vertices losing the fewest selected edges until ``k`` remain."""
    s = set(s)
    chosen = set(edges)
    load = {v: 0 for v in s}
    for u, v in chosen:
        load[u] += 1
        load[v] += 1
    while len(s) > k:
        low = min(load[v] for v in s)
        picks = sorted(v for v in s if load[v] == low)
        v = picks[rng.randrange(len(picks))]
        s.discard(v)
        for e in [e for e in chosen if v in e]:
            chosen.discard(e)
            other = e[0] if e[1] == v else e[1]
            load[other] -= 1
        del load[v]
    return s, sorted(chosen)


def _sample_candidate(h: Graph, k: int, c1: float, rng: random.Random) -> tuple[set, list]:
    """Random vertex sample with per-vertex edge deletions down to degree 3, trimmed to ``k``."""
    n = h.n
    z = min(n, max(k, round(c1 * n)))
    Z = set(rng.sample(range(n), z))
    edges = {(u, v) for u in Z for v in h.adj[u] if u < v and v in Z}
    load = {v: 0 for v in Z}
    for u, v in edges:
        load[u] += 1
        load[v] += 1
    for v in sorted(Z, key=lambda x: -load[x]):
        while load[v] > 3:
            incident = [e for e in edges if v in e]
            # drop the edge whose far endpoint has the largest surplus
            e = max(incident, key=lambda e: (load[e[0] if e[1] == v else e[1]], e))
            edges.discard(e)
            load[e[0]] -= 1
            load[e[1]] -= 1
    s, kept = _trim_to(h, Z, sorted(edges), k, rng)
    return s, kept


def _grow_candidate(h: Graph, k: int, rng: random.Random) -> tuple[set, list]:
    """Grow a vertex set keeping degrees <= 3, adding the vertex that gains most edges."""
    start = rng.randrange(h.n)
    s = {start}
    load = {start: 0}
    edges = []
    while len(s) < k:
        best, best_gain = None, -1
        frontier = {u for v in s for u in h.adj[v] if u not in s}
        if not frontier:
            frontier = set(range(h.n)) - s
        for w in sorted(frontier):
            gain = min(3, sum(1 for u in h.adj[w] if u in s and load[u] < 3))
            if gain > best_gain or (gain == best_gain and rng.random() < 0.5):
                best, best_gain = w, gain
        s.add(best)
        load[best] = 0
        hooks = sorted((u for u in h.adj[best] if u in s and load[u] < 3), key=lambda u: load[u])
        for u in hooks[:3]:
            edges.append(_norm(u, best))
            load[u] += 1
            load[best] += 1
    return s, edges


SAMPLING_SCHEDULE = (0.80, 0.85, None, 0.92, 0.95, 1.0)  # None stands for mu


def bounded_degree_dense_subgraph(
    h: Graph, k: int, seed: int = 0, rounds: int = 8, exact_limit: int = 14
) -> BoundedSubgraph:
    """``k`` vertices of ``h`` and an edge subset of maximum degree 3 with many edges.

    ``h`` must be 3-cohesive with maximum degree 5. Hosts with at most
    ``exact_limit`` vertices are solved exactly; larger ones take the best of
    ``rounds`` rounds of sampled and greedily grown candidates, each improved
    by augmenting paths.
    """
    _check_host(h)
    if not 1 <= k <= h.n:
        raise ValueError(f"k must be in 1..{h.n}")
    if h.n <= exact_limit:
        return exact_bounded_subgraph(h, k)
    rng = random.Random(seed)
    best_key, best = None, None
    for _ in range(rounds):
        cands = [_grow_candidate(h, k, rng)]
        for c in SAMPLING_SCHEDULE:
            c1 = MU if c is None else c
            if c1 * h.n >= k:
                cands.append(_sample_candidate(h, k, c1, rng))
        for s, start in cands:
            edges = _greedy_cap_edges(h, s, start, rng)
            key = (-len(edges), sorted(s))
            if best_key is None or key < best_key:
                best_key, best = key, BoundedSubgraph(frozenset(s), tuple(edges))
        if len(best.edges) >= (3 * k) // 2:
            break
    return best


def augment_to_min_degree(sub: BoundedSubgraph, h: Graph) -> list[tuple[int, int]]:
    """Edge set ``E*`` containing ``sub.edges`` in which every vertex of ``sub`` has degree >= 3.

    Added edges are host edges: first between two deficient vertices of
    ``sub``, then from each remaining deficient vertex to further host
    neighbours. Returned sorted.
    """
    for v in sub.vertices:
        if h.degree(v) < 3:
            raise ContractError(f"vertex {v} has host degree {h.degree(v)} < 3")
    estar = {_norm(u, v) for u, v in sub.edges}
    load: dict[int, int] = {}
    for u, v in estar:
        load[u] = load.get(u, 0) + 1
        load[v] = load.get(v, 0) + 1
    short = lambda v: max(0, 3 - load.get(v, 0))  # noqa: E731
    deficient = sorted(v for v in sub.vertices if short(v))
    for v in sorted(deficient, key=lambda x: (-short(x), x)):
        for u in h.adj[v]:
            if not short(v):
                break
            if u in sub.vertices and short(u) and _norm(u, v) not in estar:
                estar.add(_norm(u, v))
                load[u] = load.get(u, 0) + 1
                load[v] = load.get(v, 0) + 1
    for v in deficient:
        for u in h.adj[v]:
            if not short(v):
                break
            if _norm(u, v) not in estar:
                estar.add(_norm(u, v))
                load[u] = load.get(u, 0) + 1
                load[v] = load.get(v, 0) + 1
    return sorted(estar)


# -- the pipeline -----------------------------------------------------------------

@dataclass
class IntersectionReport:
    n: int
    seed: int
    set1: frozenset[int]
    set2: frozenset[int]
    k: int
    e_star_size: int
    intersection_size: int
    bound: int
    attempts: list[dict] = field(default_factory=list)
    log: list[str] = field(default_factory=list)

    CSV_HEADER = "n,seed,h_size,k,e_star,g_prime_size,intersection,bound"

    def csv_row(self) -> str:
        return ",".join(
            str(x)
            for x in (self.n, self.seed, len(self.set1), self.k, self.e_star_size,
                      len(self.set2), self.intersection_size, self.bound)
        )

    @property
    def fraction(self) -> float:
        return self.intersection_size / self.n


def intersection_bound(n: int) -> int:
    return n // 4 + 1


def _attempt(g: Graph, H: frozenset[int], hG: Graph, labels: list[int], k: int, seed: int, rounds: int) -> dict:
    n = g.n
    if k <= 0:
        sub = BoundedSubgraph(frozenset(), ())
        estar_local: list = []
    else:
        sub = bounded_degree_dense_subgraph(hG, k, seed=seed, rounds=rounds)
        estar_local = augment_to_min_degree(sub, hG)
    estar = sorted(_norm(labels[u], labels[v]) for u, v in estar_local)
    rec = {"k": k, "sub_edges": len(sub.edges), "e_star": len(estar)}
    if g.m - len(estar) < 2 * n - 2:
        rec["status"] = "edge-count precondition fails"
        return rec
    core = k_core(g.remove_edges(estar), 3)
    rec["core"] = core
    rec["intersection"] = len(core & H)
    rec["status"] = "ok" if core else "empty core"
    return rec


def min_intersection_pair(g: Graph, seed: int = 0, restarts: int = 32, rounds: int = 8,
                          cohesive_restarts: int = 16) -> IntersectionReport:
    """Two 3-cohesive sets of a 5-regular graph meeting in at most ``n/4 + 1`` vertices."""
    if not g.is_regular(5):
        raise ContractError("graph must be 5-regular")
    n = g.n
    if n < 12:
        raise ContractError(f"need n >= 12, got {n}")
    bound = intersection_bound(n)
    log = []
    H = None
    for attempt in range(restarts):
        try:
            H = ban_linial_cohesive(g, seed=seed * 7919 + attempt, restarts=cohesive_restarts)
            break
        except CohesiveSetNotFound:
            log.append(f"stage 1: attempt {attempt} failed")
    if H is None:
        raise StageError("1", f"no 3-cohesive set of size <= {n // 2 + 1} after {restarts} attempts")
    log.append(f"stage 1: |H| = {len(H)}")
    hG, labels = g.induced(H)
    k_base = max(0, len(H) - bound)
    k_opt = min(len(H), max(k_base, round(optimized_k(n))))
    attempts = []
    for k in sorted({k_base, k_opt}):
        rec = _attempt(g, H, hG, labels, k, seed, rounds)
        attempts.append(rec)
        log.append(f"stage 2-4: k={k} sub_edges={rec['sub_edges']} |E*|={rec['e_star']} {rec['status']}")
    base = attempts[0]
    if base["k"] > 0 and base["sub_edges"] < base["k"] - 1:
        raise StageError("2", f"bounded subgraph on k={base['k']} has {base['sub_edges']} < k-1 edges")
    if base["status"] == "edge-count precondition fails":
        raise StageError("4", f"|E(G)| - |E*| < 2n - 2 with |E*| = {base['e_star']}")
    if base["status"] == "empty core":
        raise StageError("4", "3-core of G - E* is empty")
    ok = [r for r in attempts if r["status"] == "ok"]
    chosen = min(ok, key=lambda r: (r["intersection"], r["k"]))
    core = chosen["core"]
    if not verify_cohesive(g, H, 3).valid or not verify_cohesive(g, core, 3).valid:
        raise StageError("5", "returned sets are not 3-cohesive")
    if chosen["intersection"] > bound:
        raise StageError("5", f"intersection {chosen['intersection']} exceeds {bound}")
    for r in attempts:
        r.pop("core", None)
    return IntersectionReport(
        n=n, seed=seed, set1=H, set2=core, k=chosen["k"], e_star_size=chosen["e_star"],
        intersection_size=chosen["intersection"], bound=bound, attempts=attempts, log=log,
    )

"""Independent reference implementations used only by the tests.

None of these share code paths with the package beyond the Graph container:
they enumerate without pruning, use numpy or networkx, and are meant to be
obviously correct rather than fast.
"""
from __future__ import annotations

import itertools
import random

import networkx as nx
import numpy as np

from friendly_partitions.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    relabel = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph(len(relabel), {tuple(sorted((relabel[u], relabel[v]))) for u, v in h.edges()})


def adjacency(g: Graph) -> np.ndarray:
    A = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        A[u, v] = A[v, u] = 1
    return A


def all_internal_partitions(g: Graph) -> np.ndarray:
    """Every labelling (vertex 0 on side 0) that is a nontrivial internal partition.

    Unpruned: all 2**(n-1) labellings are scored at once with numpy.
    """
    n = g.n
    A = adjacency(g)
    codes = np.arange(2 ** (n - 1), dtype=np.int64)
    labels = ((codes[:, None] >> np.arange(n - 1)) & 1).astype(np.int64)
    labels = np.hstack([np.zeros((len(codes), 1), dtype=np.int64), labels])
    same = labels @ A  # neighbours on side 1
    deg = A.sum(axis=1)
    on1 = labels == 1
    own = np.where(on1, same, deg - same)
    ok = (2 * own >= deg).all(axis=1) & on1.any(axis=1)
    return labels[ok]


def has_internal_partition(g: Graph) -> bool:
    if g.n < 2:
        return False
    return len(all_internal_partitions(g)) > 0


def max_bounded_edges_brute(h: Graph, k: int, cap: int = 3) -> int:
    """Largest edge subset of ``h`` touching at most ``k`` vertices with degrees <= cap.

    Enumerates edge subsets by decreasing size; only for tiny hosts.
    """
    edges = h.edges()
    for size in range(min(len(edges), cap * k // 2), -1, -1):
        for sub in itertools.combinations(edges, size):
            deg: dict[int, int] = {}
            for u, v in sub:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            if len(deg) <= k and max(deg.values(), default=0) <= cap:
                return size
    return 0


def mu_numpy() -> float:
    roots = np.roots([36, -45, 0, 0, 0, 8])
    real = [r.real for r in roots if abs(r.imag) < 1e-12 and 0 < r.real < 1]
    assert len(real) == 1
    return real[0]


def planted_regular(n: int, d: int, target_cut: int, seed: int):
    """A ``d``-regular graph and a bisection ``(U, W)`` with cut at most ``target_cut``.

    Starts from a networkx random regular graph and applies degree-preserving
    swaps ``u1w1, u2w2 -> u1u2, w1w2`` (each lowers the cut by two).
    """
    rng = random.Random(seed)
    h = nx.random_regular_graph(d, n, seed=seed)
    U = set(range(n // 2))
    cross = lambda: [(u, v) if u in U else (v, u) for u, v in h.edges() if (u in U) != (v in U)]  # noqa: E731
    edges = cross()
    stuck = 0
    while len(edges) > target_cut and stuck < 10_000:
        (u1, w1), (u2, w2) = rng.sample(edges, 2)
        if u1 == u2 or w1 == w2 or h.has_edge(u1, u2) or h.has_edge(w1, w2):
            stuck += 1
            continue
        h.remove_edges_from([(u1, w1), (u2, w2)])
        h.add_edges_from([(u1, u2), (w1, w2)])
        edges = cross()
        stuck = 0
    return from_nx(h), frozenset(U), len(edges)

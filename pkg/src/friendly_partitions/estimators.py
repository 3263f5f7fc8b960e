"""scikit-learn style wrappers around the functional core.

The "samples" are the vertices of one graph, so ``X`` is the graph itself:
a :class:`Graph`, a square symmetric 0/1 adjacency matrix (dense or scipy
sparse) or an edge list.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .cohesion import min_intersection_pair
from .engine import ban_linial_cohesive, half_up, km_bisection, search_internal
from .graph import Graph, k_core


def check_graph(X) -> Graph:
    """Coerce ``X`` into a :class:`Graph`, rejecting asymmetric or weighted input."""
    if isinstance(X, Graph):
        return X
    if sp.issparse(X):
        X = sp.coo_matrix(X)
        if X.shape[0] != X.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got {X.shape}")
        if (X != X.T).nnz:
            raise ValueError("adjacency matrix must be symmetric")
        if X.nnz and not np.all(X.data == 1):
            raise ValueError("adjacency matrix must be 0/1")
        return Graph(X.shape[0], {(int(u), int(v)) for u, v in zip(X.row, X.col) if u < v})
    arr = np.asarray(X)
    # a square array is read as an adjacency matrix, even when it is 2 x 2
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        if not np.array_equal(arr, arr.T):
            raise ValueError("adjacency matrix must be symmetric")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("adjacency matrix must be 0/1")
        if np.any(np.diag(arr)):
            raise ValueError("adjacency matrix has self-loops")
        us, vs = np.nonzero(np.triu(arr, 1))
        return Graph(arr.shape[0], zip(us.tolist(), vs.tolist()))
    if arr.ndim == 2 and arr.shape[1] == 2:
        edges = [(min(int(u), int(v)), max(int(u), int(v))) for u, v in arr]
        n = max((v for e in edges for v in e), default=-1) + 1
        return Graph(n, edges)
    raise ValueError("expected a Graph, an adjacency matrix or an (m, 2) edge list")


class InternalPartition(ClusterMixin, BaseEstimator):
    """Find an internal partition; ``labels_`` holds 0 for class A and 1 for class B.

    When exhaustive search proves that none exists, ``exists_`` is False and
    every label is 0.
    """

    def __init__(self, method="hybrid", seed=0, restarts=64, node_cap=10_000_000):
        self.method = method
        self.seed = seed
        self.restarts = restarts
        self.node_cap = node_cap

    def fit(self, X, y=None):
        g = check_graph(X)
        cert = search_internal(g, method=self.method, seed=self.seed,
                               restarts=self.restarts, node_cap=self.node_cap)
        self.certificate_ = cert
        self.exists_ = cert.kind == "internal-partition"
        self.partition_ = cert.partition
        self.labels_ = np.array(cert.partition.labels(g.n) if self.exists_ else [0] * g.n)
        return self


class KMBisection(ClusterMixin, BaseEstimator):
    """Cluster-merge bisection heuristic; ``cut_`` is the achieved cut."""

    def __init__(self, seed=0, rounds=64):
        self.seed = seed
        self.rounds = rounds

    def fit(self, X, y=None):
        g = check_graph(X)
        p, cut = km_bisection(g, seed=self.seed, rounds=self.rounds)
        self.partition_ = p
        self.cut_ = cut
        self.labels_ = np.array(p.labels(g.n))
        return self


class CohesiveSetFinder(TransformerMixin, BaseEstimator):
    """Select a ``k``-cohesive vertex set.

    ``method="ban-linial"`` looks for a small ``ceil(d/2)``-cohesive set of a
    regular graph; ``method="core"`` returns the ``k``-core. ``transform``
    returns the induced subgraph.
    """

    def __init__(self, k=None, method="ban-linial", seed=0, restarts=32):
        self.k = k
        self.method = method
        self.seed = seed
        self.restarts = restarts

    def fit(self, X, y=None):
        g = check_graph(X)
        if self.method == "ban-linial":
            s = ban_linial_cohesive(g, seed=self.seed, restarts=self.restarts)
            self.k_ = half_up(g.valency())
        elif self.method == "core":
            if self.k is None:
                raise ValueError("method='core' needs k")
            s = k_core(g, self.k)
            self.k_ = self.k
        else:
            raise ValueError(f"unknown method {self.method!r}")
        self.set_ = frozenset(s)
        self.n_vertices_ = g.n
        return self

    def get_support(self, indices=False):
        check_is_fitted(self, "set_")
        if indices:
            return np.array(sorted(self.set_), dtype=int)
        mask = np.zeros(self.n_vertices_, dtype=bool)
        mask[list(self.set_)] = True
        return mask

    def transform(self, X):
        check_is_fitted(self, "set_")
        g = check_graph(X)
        if g.n != self.n_vertices_:
            raise ValueError(f"graph has {g.n} vertices, fitted on {self.n_vertices_}")
        sub, _ = g.induced(self.set_)
        return sub


class MinIntersectionPair(BaseEstimator):
    """Two 3-cohesive sets of a 5-regular graph with small intersection."""

    def __init__(self, seed=0, restarts=32, rounds=8):
        self.seed = seed
        self.restarts = restarts
        self.rounds = rounds

    def fit(self, X, y=None):
        g = check_graph(X)
        r = min_intersection_pair(g, seed=self.seed, restarts=self.restarts, rounds=self.rounds)
        self.report_ = r
        self.set1_, self.set2_ = r.set1, r.set2
        self.intersection_size_ = r.intersection_size
        return self

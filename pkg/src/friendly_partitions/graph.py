"""Undirected simple graphs, vertex sets and bipartitions.

Vertices are the integers ``0..n-1``. A :class:`Graph` is immutable; every
operation in this module is a pure function of its arguments.
"""
from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Raised when an edge-list or partition document is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractError(ValueError):
    """An operation was called with arguments violating its precondition."""


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (u, v)
        Edges in any order and orientation. Loops and repeated edges are
        rejected.
    """

    __slots__ = ("n", "m", "adj", "_nbr_sets", "_masks", "_edges", "_digest")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            nbrs[u].add(v)
            nbrs[v].add(u)
            m += 1
        self.n = n
        self.m = m
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._nbr_sets = None
        self._masks = None
        self._edges = None
        self._digest = None

    # -- queries -----------------------------------------------------------
    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    @property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        if self._nbr_sets is None:
            self._nbr_sets = tuple(frozenset(a) for a in self.adj)
        return self._nbr_sets

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighborhoods as integer bitmasks (bit ``u`` set iff ``u`` is a neighbor)."""
        if self._masks is None:
            out = []
            for a in self.adj:
                x = 0
                for u in a:
                    x |= 1 << u
                out.append(x)
            self._masks = tuple(out)
        return self._masks

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        if self._edges is None:
            self._edges = tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)
        return list(self._edges)

    def is_regular(self, d: int | None = None) -> bool:
        degs = set(self.degrees())
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def valency(self) -> int:
        """Common degree of a regular graph; raises :class:`ContractError` otherwise."""
        degs = set(self.degrees())
        if len(degs) > 1:
            raise ContractError("graph is not regular")
        return degs.pop() if degs else 0

    def digest(self) -> str:
        """SHA-256 hex digest of the canonical edge-list document."""
        if self._digest is None:
            self._digest = hashlib.sha256(save_graph(self).encode()).hexdigest()
        return self._digest

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns the old labels."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        edges = [
            (index[u], index[v])
            for u in labels
            for v in self.adj[u]
            if u < v and v in index
        ]
        return Graph(len(labels), edges), labels

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        drop = {(min(u, v), max(u, v)) for u, v in edges}
        return Graph(self.n, [e for e in self.edges() if e not in drop])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Bipartition:
    """Ordered pair of disjoint vertex classes ``(a, b)``.

    Coverage of a particular graph is checked by :func:`check_bipartition`;
    a partition with an empty class is *trivial*.
    """

    a: frozenset[int]
    b: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "a", frozenset(self.a))
        object.__setattr__(self, "b", frozenset(self.b))
        if self.a & self.b:
            raise ContractError(f"classes overlap in {sorted(self.a & self.b)[:5]}")

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Bipartition":
        """Class ``a`` holds the vertices labelled 0, class ``b`` the rest."""
        a = {v for v, x in enumerate(labels) if x == 0}
        return cls(frozenset(a), frozenset(range(len(labels))) - a)

    @classmethod
    def from_class(cls, n: int, a: Iterable[int]) -> "Bipartition":
        a = frozenset(a)
        return cls(a, frozenset(range(n)) - a)

    @property
    def trivial(self) -> bool:
        return not self.a or not self.b

    def labels(self, n: int) -> list[int]:
        return [0 if v in self.a else 1 for v in range(n)]

    def swapped(self) -> "Bipartition":
        return Bipartition(self.b, self.a)


def check_bipartition(g: Graph, p: Bipartition) -> None:
    if len(p.a) + len(p.b) != g.n or not all(0 <= v < g.n for v in p.a | p.b):
        raise ContractError(f"classes do not cover exactly the vertices 0..{g.n - 1}")


def check_vertex_set(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    bad = [v for v in s if not 0 <= v < g.n]
    if bad:
        raise ContractError(f"vertex {bad[0]} outside 0..{g.n - 1}")
    return s


# -- edge-list I/O -------------------------------------------------------------

def load_graph(text: str) -> Graph:
    """Parse an edge-list document.

    The first line is ``"n m"``; each of the next ``m`` lines is ``"u v"`` with
    ``0 <= u < v < n``, strictly increasing in lexicographic order. Blank lines
    at the end of the document are ignored.
    """
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise GraphFormatError("empty document", 1)
    header = lines[0].split()
    if len(header) != 2 or not all(_is_int(t) for t in header):
        raise GraphFormatError("header must be 'n m'", 1)
    n, m = int(header[0]), int(header[1])
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", 1)
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(lines) - 1}", len(lines))
    edges = []
    prev = None
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2 or not all(_is_int(t) for t in parts):
            raise GraphFormatError("edge line must be 'u v'", i)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", i)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", i)
        if u > v:
            raise GraphFormatError("endpoints not ascending", i)
        if prev is not None:
            if (u, v) == prev:
                raise GraphFormatError(f"duplicate edge {u} {v}", i)
            if (u, v) < prev:
                raise GraphFormatError("edges not in increasing order", i)
        prev = (u, v)
        edges.append((u, v))
    return Graph(n, edges)


def save_graph(g: Graph) -> str:
    """Canonical edge-list document (no trailing newline)."""
    return "\n".join([f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()])


def read_graph(path) -> Graph:
    with open(path) as fh:
        return load_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(save_graph(g) + "\n")


def _is_int(tok: str) -> bool:
    return tok.lstrip("-").isdigit()


# -- partition files -----------------------------------------------------------

def format_vertex_line(s: Iterable[int], offset: int = 0) -> str:
    return " ".join(str(v + offset) for v in sorted(s))


def parse_vertex_line(line: str, lineno: int, offset: int = 0) -> frozenset[int]:
    toks = line.split()
    if not all(_is_int(t) for t in toks):
        raise GraphFormatError("vertex list must hold integers", lineno)
    vals = [int(t) - offset for t in toks]
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise GraphFormatError("vertex list must be strictly ascending", lineno)
    return frozenset(vals)


def save_partition(p: Bipartition, offset: int = 0) -> str:
    return format_vertex_line(p.a, offset) + "\n" + format_vertex_line(p.b, offset)


def load_partition(text: str, n: int, offset: int = 0) -> Bipartition:
    """Parse a two-line partition document; line 2 may be ``*`` (complement of line 1)."""
    lines = text.rstrip("\n").split("\n")
    if len(lines) != 2:
        raise GraphFormatError(f"partition needs 2 lines, found {len(lines)}", min(len(lines), 3))
    a = parse_vertex_line(lines[0], 1, offset)
    if lines[1].strip() == "*":
        b = frozenset(range(n)) - a
    else:
        b = parse_vertex_line(lines[1], 2, offset)
    if a & b:
        raise GraphFormatError("classes overlap", 2)
    return Bipartition(a, b)


# -- basic operations ----------------------------------------------------------

def cut_size(g: Graph, p: Bipartition) -> int:
    """Number of edges with endpoints in different classes."""
    check_bipartition(g, p)
    a = p.a
    return sum(1 for u, v in g.edges() if (u in a) != (v in a))


def k_core(g: Graph, k: int, within: Iterable[int] | None = None) -> frozenset[int]:
    """Maximal vertex set in which every member has at least ``k`` neighbours.

    Bucket-queue peeling in ``O(n + m)``. With ``within`` the core of the
    induced subgraph on that set is returned.
    """
    if k < 1:
        raise ValueError("k must be positive")
    alive = [False] * g.n
    if within is None:
        for v in range(g.n):
            alive[v] = True
    else:
        for v in within:
            alive[v] = True
    deg = [sum(1 for u in g.adj[v] if alive[u]) if alive[v] else 0 for v in range(g.n)]
    # for a fixed k the bucket queue collapses to the single "below k" bucket;
    # a vertex enters it once, when its degree first drops below k
    queued = [alive[v] and deg[v] < k for v in range(g.n)]
    stack = [v for v in range(g.n) if queued[v]]
    while stack:
        v = stack.pop()
        alive[v] = False
        for u in g.adj[v]:
            if alive[u] and not queued[u]:
                deg[u] -= 1
                if deg[u] < k:
                    queued[u] = True
                    stack.append(u)
    return frozenset(v for v in range(g.n) if alive[v])


def inside_degrees(g: Graph, s: Iterable[int]) -> dict[int, int]:
    s = frozenset(s)
    return {v: sum(1 for u in g.adj[v] if u in s) for v in s}


def complement(g: Graph) -> Graph:
    sets = g.neighbor_sets
    return Graph(g.n, [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if v not in sets[u]])


def cycle_decomposition(g: Graph) -> list[int]:
    """Cycle lengths (ascending) of a 2-regular graph."""
    for v in range(g.n):
        if g.degree(v) != 2:
            raise ContractError(f"vertex {v} has degree {g.degree(v)}, expected 2")
    seen = [False] * g.n
    lengths = []
    for s in range(g.n):
        if seen[s]:
            continue
        length = 0
        prev, cur = -1, s
        while not seen[cur]:
            seen[cur] = True
            length += 1
            a, b = g.adj[cur]
            nxt = a if a != prev else b
            prev, cur = cur, nxt
        lengths.append(length)
    return sorted(lengths)


def cycles(g: Graph) -> list[list[int]]:
    """Vertex sequences of the cycles of a 2-regular graph, each in walk order."""
    cycle_decomposition(g)
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        walk = []
        prev, cur = -1, s
        while not seen[cur]:
            seen[cur] = True
            walk.append(cur)
            a, b = g.adj[cur]
            nxt = a if a != prev else b
            prev, cur = cur, nxt
        out.append(walk)
    return out


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    allowed = set(range(g.n)) if within is None else set(within)
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        q = deque([s])
        while q:
            v = q.popleft()
            for u in g.adj[v]:
                if u in allowed and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    q.append(u)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1

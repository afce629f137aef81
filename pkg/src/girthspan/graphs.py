"""Undirected simple-graph substrate: distances, girth, per-edge cycle queries.

Graphs are immutable after construction.  Vertex ids are dense 0-based
naturals; edge ids are positions in the canonical edge list sorted by
(min endpoint, max endpoint).  Distances are hop counts, with
``math.inf`` as the unreachable / acyclic sentinel.
"""

from __future__ import annotations

import hashlib
from collections import deque
from math import inf

import numpy as np

from .errors import InputError

INFINITY = inf


class Graph:
    """Immutable undirected simple graph backed by sorted numpy edge arrays.

    Rejects self-loops and duplicate edges.  The adjacency index (CSR) is
    derived once at construction and shared freely afterwards.
    """

    __slots__ = ("vertex_count", "_eu", "_ev", "_indptr", "_nbr", "_nbr_eid", "_keys")

    def __init__(self, vertex_count: int, edges) -> None:
        eu, ev = _edge_arrays(edges)
        self._init_from(vertex_count, eu, ev)

    @classmethod
    def from_arrays(cls, vertex_count: int, eu: np.ndarray, ev: np.ndarray) -> "Graph":
        """Construct from endpoint arrays without a Python-level edge loop."""
        g = cls.__new__(cls)
        g._init_from(vertex_count, np.asarray(eu, dtype=np.int64), np.asarray(ev, dtype=np.int64))
        return g

    def _init_from(self, vertex_count: int, eu: np.ndarray, ev: np.ndarray) -> None:
        if vertex_count < 0:
            raise InputError("vertex_count must be nonnegative")
        n = int(vertex_count)
        if eu.size:
            lo = np.minimum(eu, ev)
            hi = np.maximum(eu, ev)
            if lo.min() < 0 or hi.max() >= n:
                raise InputError("edge endpoint out of range")
            if (lo == hi).any():
                raise InputError("self-loops are not allowed")
            order = np.lexsort((hi, lo))
            lo, hi = lo[order], hi[order]
            keys = lo * np.int64(n) + hi
            if keys.size > 1 and (np.diff(keys) == 0).any():
                raise InputError("duplicate edges are not allowed")
        else:
            lo = np.zeros(0, dtype=np.int64)
            hi = np.zeros(0, dtype=np.int64)
            keys = np.zeros(0, dtype=np.int64)
        self.vertex_count = n
        self._eu = lo
        self._ev = hi
        self._keys = keys
        m = lo.size
        ends = np.concatenate([lo, hi])
        nbrs = np.concatenate([hi, lo])
        eids = np.concatenate([np.arange(m, dtype=np.int64)] * 2) if m else np.zeros(0, np.int64)
        order = np.argsort(ends, kind="stable")
        self._indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self._indptr, ends + 1, 1)
        np.cumsum(self._indptr, out=self._indptr)
        self._nbr = nbrs[order]
        self._nbr_eid = eids[order]

    @property
    def edge_count(self) -> int:
        return int(self._eu.size)

    def edge(self, eid: int) -> tuple[int, int]:
        if not 0 <= eid < self.edge_count:
            raise InputError(f"edge id {eid} out of range")
        return int(self._eu[eid]), int(self._ev[eid])

    def edges(self):
        """Iterate (u, v) pairs in canonical (edge id) order."""
        for u, v in zip(self._eu.tolist(), self._ev.tolist()):
            yield u, v

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self._eu, self._ev

    def edge_id(self, u: int, v: int) -> int | None:
        """Edge id of {u, v}, or None if absent."""
        if u > v:
            u, v = v, u
        key = u * self.vertex_count + v
        pos = int(np.searchsorted(self._keys, key))
        if pos < self._keys.size and self._keys[pos] == key:
            return pos
        return None

    def edge_ids_of(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """Vectorized edge id lookup; raises if any pair is not an edge."""
        lo = np.minimum(us, vs).astype(np.int64)
        hi = np.maximum(us, vs).astype(np.int64)
        key = lo * np.int64(self.vertex_count) + hi
        pos = np.searchsorted(self._keys, key)
        if pos.size and (pos >= self._keys.size).any():
            raise InputError("pair is not an edge")
        if pos.size and (self._keys[pos] != key).any():
            raise InputError("pair is not an edge")
        return pos.astype(np.int64)

    def neighbors(self, v: int) -> np.ndarray:
        return self._nbr[self._indptr[v]:self._indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertex_count == other.vertex_count
            and np.array_equal(self._eu, other._eu)
            and np.array_equal(self._ev, other._ev)
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self._keys.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


def _edge_arrays(edges) -> tuple[np.ndarray, np.ndarray]:
    pairs = list(edges)
    if not pairs:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    arr = np.asarray(pairs, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError("edges must be (u, v) pairs")
    return arr[:, 0].copy(), arr[:, 1].copy()


def bfs_distances(g: Graph, src: int, cap: int | None = None) -> list:
    """Exact hop counts from ``src``; entries beyond ``cap`` are INFINITY."""
    if not 0 <= src < g.vertex_count:
        raise InputError(f"source vertex {src} out of range")
    dist = [INFINITY] * g.vertex_count
    dist[src] = 0
    queue = deque([src])
    indptr, nbr = g._indptr, g._nbr
    while queue:
        u = queue.popleft()
        du = dist[u]
        if cap is not None and du >= cap:
            continue
        for w in nbr[indptr[u]:indptr[u + 1]].tolist():
            if dist[w] == INFINITY:
                dist[w] = du + 1
                queue.append(w)
    return dist


def _dist_skip_edge(g: Graph, src: int, dst: int, skip_eid: int, cap: int | None):
    """Distance src->dst ignoring one edge; INFINITY if above cap/unreachable."""
    if src == dst:
        return 0
    seen = bytearray(g.vertex_count)
    seen[src] = 1
    frontier = [src]
    d = 0
    indptr, nbr, nbr_eid = g._indptr, g._nbr, g._nbr_eid
    while frontier:
        d += 1
        if cap is not None and d > cap:
            return INFINITY
        nxt = []
        for u in frontier:
            lo, hi = indptr[u], indptr[u + 1]
            for w, eid in zip(nbr[lo:hi].tolist(), nbr_eid[lo:hi].tolist()):
                if eid == skip_eid or seen[w]:
                    continue
                if w == dst:
                    return d
                seen[w] = 1
                nxt.append(w)
        frontier = nxt
    return INFINITY


def edge_cycle_length(g: Graph, eid: int):
    """Length of the shortest cycle through edge ``eid``; INFINITY for bridges."""
    u, v = g.edge(eid)
    d = _dist_skip_edge(g, u, v, eid, None)
    return d + 1 if d != INFINITY else INFINITY


def girth(g: Graph):
    """Length of the shortest simple cycle; INFINITY for forests.

    Per-edge removal + BFS, pruned by the best cycle found so far.  This is
    deliberately the simple O(m(n+m)) formulation; ``oracles.girth_independent``
    provides a second formulation for cross-checking.
    """
    best = INFINITY
    for eid in range(g.edge_count):
        cap = None if best == INFINITY else best - 2
        if cap is not None and cap <= 0:
            break
        u, v = int(g._eu[eid]), int(g._ev[eid])
        d = _dist_skip_edge(g, u, v, eid, cap)
        if d != INFINITY and d + 1 < best:
            best = d + 1
    return best


def is_bipartite(g: Graph) -> tuple[bool, list | None]:
    """Two-color the graph; (True, colors) if no odd cycle else (False, None)."""
    color = [-1] * g.vertex_count
    indptr, nbr = g._indptr, g._nbr
    for start in range(g.vertex_count):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            cu = color[u]
            for w in nbr[indptr[u]:indptr[u + 1]].tolist():
                if color[w] == -1:
                    color[w] = 1 - cu
                    queue.append(w)
                elif color[w] == cu:
                    return False, None
    return True, color


# --- GRAPH v1 text format ---------------------------------------------------

def write_graph_text(g: Graph) -> str:
    lines = ["GRAPH v1", f"N {g.vertex_count} M {g.edge_count}"]
    eu = g._eu.tolist()
    ev = g._ev.tolist()
    lines.extend(f"{u} {v}" for u, v in zip(eu, ev))
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> Graph:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "GRAPH v1":
        raise InputError("missing GRAPH v1 header")
    if len(lines) < 2:
        raise InputError("missing size line")
    parts = lines[1].split()
    if len(parts) != 4 or parts[0] != "N" or parts[2] != "M":
        raise InputError(f"bad size line: {lines[1]!r}")
    try:
        n, m = int(parts[1]), int(parts[3])
    except ValueError as exc:
        raise InputError(f"bad size line: {lines[1]!r}") from exc
    body = [ln for ln in lines[2:] if ln.strip()]
    if len(body) != m:
        raise InputError(f"expected {m} edge lines, found {len(body)}")
    prev_key = -1
    eu = np.empty(m, dtype=np.int64)
    ev = np.empty(m, dtype=np.int64)
    for i, ln in enumerate(body):
        toks = ln.split()
        if len(toks) != 2:
            raise InputError(f"bad edge line: {ln!r}")
        u, v = int(toks[0]), int(toks[1])
        if u >= v:
            raise InputError(f"edge line not in u < v form: {ln!r}")
        if not (0 <= u and v < n):
            raise InputError(f"edge endpoint out of range: {ln!r}")
        key = u * n + v
        if key == prev_key:
            raise InputError(f"duplicate edge: {ln!r}")
        if key < prev_key:
            raise InputError(f"edge lines not sorted: {ln!r}")
        prev_key = key
        eu[i], ev[i] = u, v
    return Graph.from_arrays(n, eu, ev)


def graph_sha256(g: Graph) -> str:
    return hashlib.sha256(write_graph_text(g).encode("utf-8")).hexdigest()

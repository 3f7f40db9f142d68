"""Simple undirected graphs on vertices 0..n-1.

Covers sampling (Erdos-Renyi via a geometric-skip stream over edge slots),
connected components with a deterministic giant-component tie-break, induced
subgraphs, and ordered cross-edge counts.  Graphs are immutable: adjacency is
a tuple of sorted int64 arrays, safe to share read-only across trials.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .seeding import trial_rng

__all__ = [
    "Graph",
    "GraphParams",
    "ComponentDecomposition",
    "from_edges",
    "erdos_renyi",
    "components",
    "induced_subgraph",
    "cross_edges",
    "read_edge_list",
    "write_edge_list",
]


@dataclass(frozen=True)
class Graph:
    """n vertices; adj[u] is the sorted array of u's neighbors."""

    n: int
    adj: tuple

    @property
    def degrees(self) -> np.ndarray:
        return np.array([a.size for a in self.adj], dtype=np.int64)

    @property
    def edge_count(self) -> int:
        return sum(a.size for a in self.adj) // 2

    def edges(self) -> np.ndarray:
        """(m, 2) array of edges with u < v, sorted lexicographically."""
        out = []
        for u, nbrs in enumerate(self.adj):
            upper = nbrs[nbrs > u]
            if upper.size:
                out.append(np.column_stack([np.full(upper.size, u), upper]))
        if not out:
            return np.empty((0, 2), dtype=np.int64)
        return np.concatenate(out).astype(np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adj[u]
        i = np.searchsorted(nbrs, v)
        return i < nbrs.size and nbrs[i] == v

    def adjacency(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (float64)."""
        a = np.zeros((self.n, self.n))
        for u, nbrs in enumerate(self.adj):
            a[u, nbrs] = 1.0
        return a


@dataclass(frozen=True)
class GraphParams:
    n: int
    p: float
    seed: int = 0

    @property
    def d(self) -> float:
        """Expected degree (n-1)p, recomputed, never stored."""
        return (self.n - 1) * self.p


@dataclass(frozen=True)
class ComponentDecomposition:
    component_id: np.ndarray
    sizes: np.ndarray
    giant: int


def from_edges(n: int, edges) -> Graph:
    """Build a Graph from an (m, 2) edge array; dedupes, rejects loops."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if edges.size:
        if edges.min() < 0 or edges.max() >= n:
            raise ValueError("edge endpoint out of range")
        if np.any(edges[:, 0] == edges[:, 1]):
            raise ValueError("self-loop")
        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        edges = np.unique(np.column_stack([lo, hi]), axis=0)
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    cuts = np.searchsorted(src, np.arange(1, n))
    adj = tuple(np.ascontiguousarray(a) for a in np.split(dst, cuts))
    return Graph(n=n, adj=adj)


def _slots_to_edges(slots: np.ndarray) -> np.ndarray:
    # colex rank k = C(v,2) + u with 0 <= u < v
    v = ((1.0 + np.sqrt(1.0 + 8.0 * slots.astype(np.float64))) / 2.0).astype(np.int64)
    v -= v * (v - 1) // 2 > slots
    v += (v + 1) * v // 2 <= slots
    u = slots - v * (v - 1) // 2
    return np.column_stack([u, v])


def _skip_stream(n_slots: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Indices of the selected slots among 0..n_slots-1, each kept w.p. p.

    Geometric jumps between kept slots: expected O(n_slots * p) work instead
    of n_slots Bernoulli draws.
    """
    if n_slots == 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(n_slots, dtype=np.int64)
    kept = []
    pos = -1
    chunk = max(64, int(1.2 * n_slots * p) + 16)
    while pos < n_slots:
        skips = rng.geometric(p, size=chunk)
        hits = pos + np.cumsum(skips)
        kept.append(hits[hits < n_slots])
        pos = int(hits[-1])
        chunk = 256
    return np.concatenate(kept)


def erdos_renyi(params: GraphParams) -> Graph:
    """G(n, p): every one of the C(n,2) edges present independently w.p. p."""
    n, p = params.n, params.p
    if n < 1:
        raise ValueError("need n >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    rng = trial_rng(params.seed)
    slots = _skip_stream(n * (n - 1) // 2, p, rng)
    return from_edges(n, _slots_to_edges(slots))


def components(g: Graph) -> ComponentDecomposition:
    """Connected components; giant = largest, ties to smallest contained vertex."""
    if g.n == 0:
        return ComponentDecomposition(np.empty(0, np.int64), np.empty(0, np.int64), -1)
    edges = g.edges()
    data = np.ones(edges.shape[0], dtype=np.int8)
    m = csr_matrix((data, (edges[:, 0], edges[:, 1])), shape=(g.n, g.n))
    _, labels = _cc(m, directed=False)
    # renormalize labels to first-occurrence order so argmax ties resolve to
    # the component containing the smallest vertex
    _, first = np.unique(labels, return_index=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(first.size)
    labels = rank[labels]
    sizes = np.bincount(labels)
    return ComponentDecomposition(labels, sizes, int(np.argmax(sizes)))


def induced_subgraph(g: Graph, vs) -> Graph:
    """Subgraph on vertex set vs, relabeled 0..|vs|-1 in original order."""
    vs = np.unique(np.asarray(vs, dtype=np.int64))
    if vs.size and (vs.min() < 0 or vs.max() >= g.n):
        raise ValueError("vertex out of range")
    adj = []
    for u in vs:
        nbrs = g.adj[u]
        idx = np.searchsorted(vs, nbrs)
        idx[idx == vs.size] = 0
        keep = vs[idx] == nbrs
        adj.append(np.ascontiguousarray(idx[keep] if nbrs.size else nbrs))
    return Graph(n=int(vs.size), adj=tuple(adj))


def cross_edges(g: Graph, A, B) -> int:
    """Ordered adjacent pairs (u, v), u in A, v in B; A cap B edges count twice."""
    in_b = np.zeros(g.n, dtype=bool)
    in_b[np.asarray(list(B), dtype=np.int64)] = True
    total = 0
    for u in set(int(a) for a in A):
        nbrs = g.adj[u]
        if nbrs.size:
            total += int(in_b[nbrs].sum())
    return total


def write_edge_list(g: Graph, path) -> None:
    """Text format: first line "n m", then m lines "u v" with u < v."""
    edges = g.edges()
    with open(path, "w") as fh:
        fh.write(f"{g.n} {edges.shape[0]}\n")
        for u, v in edges:
            fh.write(f"{u} {v}\n")


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("bad header, expected 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = np.loadtxt(fh, dtype=np.int64, ndmin=2) if m else np.empty((0, 2), np.int64)
    if edges.shape[0] != m:
        raise ValueError(f"expected {m} edges, found {edges.shape[0]}")
    if m and np.any(edges[:, 0] >= edges[:, 1]):
        raise ValueError("edge lines must satisfy u < v")
    return from_edges(n, edges)

"""Small deterministic graph builders shared across test modules."""
import numpy as np

from spectop.graphs import Graph, from_edges


def complete(n: int) -> Graph:
    return from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def star(leaves: int) -> Graph:
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def edgeless(n: int) -> Graph:
    return from_edges(n, [])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = [(u + g.n, v + g.n) for u, v in h.edges()]
    return from_edges(g.n + h.n, [tuple(e) for e in g.edges()] + shifted)


def two_star_gadget(m: int) -> Graph:
    """Stars around u=0 and x=1 joined by the fresh path 0-2-3-1."""
    edges = [(0, 2), (2, 3), (1, 3)]
    nxt = 4
    for _ in range(m - 1):
        edges.append((0, nxt))
        nxt += 1
    for _ in range(m - 1):
        edges.append((1, nxt))
        nxt += 1
    return from_edges(nxt, edges)


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Random recursive tree: vertex i attaches to a uniform earlier vertex."""
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    return from_edges(n, edges)


def random_graph_from_rng(n: int, p: float, rng: np.random.Generator) -> Graph:
    mask = rng.random((n, n)) < p
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if mask[u, v]]
    return from_edges(n, edges)

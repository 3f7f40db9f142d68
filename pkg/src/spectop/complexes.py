"""Random d-complexes over a complete (d-1)-skeleton.

A complex here is its set of d-faces; every lower face up to dimension d-1
is implicitly present.  Faces are stored as sorted integer rows and indexed
by colexicographic rank, which gives flat-array degree tables and
deterministic replay.

The face-addition process is represented by its jump chain (a uniform
permutation of all C(n, d+1) faces, drawn lazily by sparse Fisher-Yates)
plus the analytic clock m/N <-> t = -log(1 - m/N); actual exponential
clocks are never materialized because every tested statement depends only
on the prefix set and the density p(t) = 1 - e^{-t}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graphs import Graph, from_edges
from .seeding import trial_rng

__all__ = [
    "Complex",
    "FaceProcess",
    "ComplexStats",
    "StrippedComplex",
    "binom_table",
    "rank_faces",
    "unrank_faces",
    "complex_from_faces",
    "sample_complex",
    "face_process",
    "link",
    "empty_stats",
    "isolated_faces",
    "strip_isolated",
    "is_pure",
    "expected_isolated",
    "window_density",
    "write_complex",
    "read_complex",
]


def binom_table(n: int, kmax: int) -> np.ndarray:
    """t[v, k] = C(v, k) for 0 <= v <= n, 0 <= k <= kmax (int64, exact)."""
    t = np.zeros((n + 1, kmax + 1), dtype=np.int64)
    t[:, 0] = 1
    for k in range(1, kmax + 1):
        t[1:, k] = np.cumsum(t[:-1, k - 1])
    return t


def rank_faces(faces: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Colex rank of each sorted row: sum_j C(row[j], j+1)."""
    faces = np.atleast_2d(faces)
    k = faces.shape[1]
    r = np.zeros(faces.shape[0], dtype=np.int64)
    for j in range(k):
        r += table[faces[:, j], j + 1]
    return r


def unrank_faces(ranks: np.ndarray, k: int, table: np.ndarray) -> np.ndarray:
    """Inverse of rank_faces: decode each rank to its sorted k-row."""
    ranks = np.asarray(ranks, dtype=np.int64).copy()
    out = np.empty((ranks.size, k), dtype=np.int64)
    for j in range(k, 0, -1):
        col = table[:, j]
        v = np.searchsorted(col, ranks, side="right") - 1
        out[:, j - 1] = v
        ranks -= col[v]
    return out


@dataclass(frozen=True, eq=False)
class Complex:
    """n vertices, dimension d, explicit d-faces over a full (d-1)-skeleton.

    faces: (m, d+1) array, rows strictly increasing, sorted by colex rank.
    """

    n: int
    d: int
    faces: np.ndarray

    @property
    def face_count(self) -> int:
        return self.faces.shape[0]

    def face_ranks(self, table=None) -> np.ndarray:
        if table is None:
            table = binom_table(self.n, self.d + 1)
        return rank_faces(self.faces, table) if self.face_count else np.empty(0, dtype=np.int64)

    def has_face(self, face) -> bool:
        face = np.asarray(face, dtype=np.int64)
        table = binom_table(self.n, self.d + 1)
        r = int(rank_faces(face[None, :], table)[0])
        ranks = self.face_ranks(table)
        i = np.searchsorted(ranks, r)
        return bool(i < ranks.size and ranks[i] == r)


def complex_from_faces(n: int, d: int, faces) -> Complex:
    if not 1 <= d <= n - 1:
        raise ValueError("need 1 <= d <= n-1")
    arr = np.asarray(list(faces), dtype=np.int64)
    if arr.size == 0:
        return Complex(n=n, d=d, faces=np.empty((0, d + 1), dtype=np.int64))
    if arr.ndim != 2 or arr.shape[1] != d + 1:
        raise ValueError(f"faces must have {d + 1} vertices each")
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError("face vertex out of range")
    if np.any(np.diff(arr, axis=1) <= 0):
        raise ValueError("faces must be strictly increasing tuples")
    table = binom_table(n, d + 1)
    ranks = np.unique(rank_faces(arr, table))
    return Complex(n=n, d=d, faces=unrank_faces(ranks, d + 1, table))


def sample_complex(n: int, d: int, p: float, seed: int = 0) -> Complex:
    """Y ~ each of the C(n, d+1) possible d-faces i.i.d. with probability p."""
    if not 1 <= d <= n - 1:
        raise ValueError("need 1 <= d <= n-1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    table = binom_table(n, d + 1)
    total = int(table[n, d + 1])
    if p == 0.0 or total == 0:
        return Complex(n=n, d=d, faces=np.empty((0, d + 1), dtype=np.int64))
    if p == 1.0:
        ranks = np.arange(total, dtype=np.int64)
        return Complex(n=n, d=d, faces=unrank_faces(ranks, d + 1, table))
    rng = trial_rng(seed)
    picked = []
    pos = 0
    # geometric skips between successive present slots
    chunk = max(int(1.2 * total * p) + 16, 16)
    while pos < total:
        gaps = rng.geometric(p, size=chunk)
        slots = pos + np.cumsum(gaps) - 1
        picked.append(slots[slots < total])
        pos = int(slots[-1]) + 1
        chunk = 256
    ranks = np.concatenate(picked)
    return Complex(n=n, d=d, faces=unrank_faces(ranks, d + 1, table))


class FaceProcess:
    """Uniform arrival order over all C(n, d+1) d-faces, drawn lazily.

    first(m) extends a sparse Fisher-Yates shuffle, so only O(m) state
    exists after m arrivals; identical (n, d, seed) replays identically.
    """

    def __init__(self, n: int, d: int, seed: int = 0):
        if not 1 <= d <= n - 1:
            raise ValueError("need 1 <= d <= n-1")
        self.n = n
        self.d = d
        self.seed = seed
        self._table = binom_table(n, d + 1)
        self.total = int(self._table[n, d + 1])
        self._rng = trial_rng(seed)
        self._swaps: dict = {}
        self._drawn: list = []

    def first(self, m: int) -> np.ndarray:
        """Colex ranks of the first m arrivals, in arrival order."""
        if not 0 <= m <= self.total:
            raise ValueError("prefix length out of range")
        while len(self._drawn) < m:
            i = len(self._drawn)
            j = int(self._rng.integers(i, self.total))
            vi = self._swaps.get(i, i)
            vj = self._swaps.get(j, j)
            self._swaps[i] = vj
            self._swaps[j] = vi
            self._drawn.append(vj)
        return np.asarray(self._drawn[:m], dtype=np.int64)

    def prefix(self, m: int) -> Complex:
        ranks = np.sort(self.first(m))
        return Complex(n=self.n, d=self.d, faces=unrank_faces(ranks, self.d + 1, self._table))

    def density_at(self, m: int) -> float:
        return m / self.total

    def time_at(self, m: int) -> float:
        """Arrival index -> process time, via p(t) = 1 - e^{-t}."""
        if m >= self.total:
            return math.inf
        return -math.log1p(-m / self.total)


def face_process(n: int, d: int, seed: int = 0) -> FaceProcess:
    return FaceProcess(n, d, seed)


def link(y: Complex, f) -> Graph:
    """Graph on the vertices outside f with u~v iff f ∪ {u,v} is a face.

    f is a (d-2)-dimensional face, i.e. d-1 vertices; the link vertices are
    relabeled to 0..n-d in increasing original order.
    """
    if y.d < 2:
        raise ValueError("links need dimension >= 2")
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (y.d - 1,):
        raise ValueError(f"link face must have {y.d - 1} vertices")
    if f.size and (np.any(np.diff(f) <= 0) or f.min() < 0 or f.max() >= y.n):
        raise ValueError("link face must be strictly increasing and in range")
    outside = np.setdiff1d(np.arange(y.n), f)
    if y.face_count == 0:
        return from_edges(outside.size, [])
    contains = np.isin(y.faces, f).sum(axis=1) == f.size
    rows = y.faces[contains]
    others = rows[~np.isin(rows, f)].reshape(-1, 2)
    relabeled = np.searchsorted(outside, others)
    return from_edges(outside.size, [(int(u), int(v)) for u, v in relabeled])


class ComplexStats:
    """d-degree table over all C(n, d) (d-1)-faces, with isolated count.

    add_face keeps the table and isolated_count current as d-faces arrive.
    """

    def __init__(self, n: int, d: int):
        self.n = n
        self.d = d
        self._table = binom_table(n, d + 1)
        self.degrees = np.zeros(int(self._table[n, d]), dtype=np.int64)
        self.isolated_count = int(self._table[n, d])

    def add_face(self, face) -> None:
        face = np.asarray(face, dtype=np.int64)
        for i in range(self.d + 1):
            sub = np.delete(face, i)
            r = int(rank_faces(sub[None, :], self._table)[0])
            if self.degrees[r] == 0:
                self.isolated_count -= 1
            self.degrees[r] += 1


def empty_stats(n: int, d: int) -> ComplexStats:
    return ComplexStats(n, d)


def isolated_faces(y: Complex) -> ComplexStats:
    stats = ComplexStats(y.n, y.d)
    if y.face_count:
        parts = [
            rank_faces(np.delete(y.faces, i, axis=1), stats._table)
            for i in range(y.d + 1)
        ]
        counts = np.bincount(np.concatenate(parts), minlength=stats.degrees.size)
        stats.degrees = counts.astype(np.int64)
        stats.isolated_count = int(np.count_nonzero(counts == 0))
    return stats


@dataclass(frozen=True, eq=False)
class StrippedComplex:
    """The complex with its isolated (d-1)-faces flagged removed.

    d-faces are untouched; kept_ranks lists (d-1)-faces of positive
    d-degree by colex rank, removed_faces the isolated ones as rows.
    """

    base: Complex
    kept_ranks: np.ndarray
    removed_faces: np.ndarray


def strip_isolated(y: Complex) -> StrippedComplex:
    stats = isolated_faces(y)
    kept = np.flatnonzero(stats.degrees > 0)
    removed_ranks = np.flatnonzero(stats.degrees == 0)
    table = binom_table(y.n, y.d + 1)
    removed = unrank_faces(removed_ranks, y.d, table)
    return StrippedComplex(base=y, kept_ranks=kept, removed_faces=removed)


def is_pure(y: Complex) -> bool:
    """True iff every (d-2)-face lies in some d-face."""
    if y.d < 2:
        raise ValueError("purity check needs dimension >= 2")
    table = binom_table(y.n, y.d + 1)
    total = int(table[y.n, y.d - 1])
    covered = np.zeros(total, dtype=bool)
    for keep in combinations(range(y.d + 1), y.d - 1):
        if y.face_count:
            covered[rank_faces(y.faces[:, list(keep)], table)] = True
    return bool(covered.all())


def expected_isolated(n: int, d: int, p: float) -> float:
    """E[#isolated (d-1)-faces] = C(n, d) (1-p)^(n-d)."""
    return math.comb(n, d) * (1.0 - p) ** (n - d)


def window_density(n: int, d: int, c: float, matched: bool = True) -> float:
    """Density inside the Poisson window, parametrized by the constant c.

    matched=True solves C(n,d)(1-p)^(n-d) = e^{-c}/d! exactly, so the
    finite-n expected isolated count equals the limiting Poisson mean;
    matched=False returns the literal (d log n + c)/n, which differs from
    the solved value by o(1) but has a visibly biased mean at small n.
    """
    if not matched:
        return (d * math.log(n) + c) / n
    target = math.exp(-c) / math.factorial(d)
    return 1.0 - (target / math.comb(n, d)) ** (1.0 / (n - d))


def write_complex(y: Complex, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{y.n} {y.d} {y.face_count}\n")
        for row in y.faces:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


def read_complex(path) -> Complex:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError("header must be 'n d m'")
        n, d, m = (int(x) for x in header)
        rows = []
        for line in fh:
            line = line.strip()
            if line:
                rows.append([int(x) for x in line.split()])
    if len(rows) != m:
        raise ValueError(f"expected {m} faces, found {len(rows)}")
    return complex_from_faces(n, d, rows)

"""Link certificates and hitting-time scans over face processes.

The two certificates read spectral gaps off the links of a complex:
enough expansion in every codimension-2 link kills the top rational
cohomology, and enough expansion in every vertex link (dimension 2)
certifies property (T) of the fundamental group.  Certificates are
sufficient conditions, so verdicts are certified/inconclusive, never
refuted.  The hitting scans walk a face process once and record the
first index at which each property holds.
"""

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple

import numpy as np

from .complexes import (
    Complex,
    FaceProcess,
    binom_table,
    empty_stats,
    is_pure,
    isolated_faces,
    link,
    rank_faces,
    unrank_faces,
)
from .graphs import from_edges, induced_subgraph
from .homology import RankTracker
from .spectral import ZERO_TOL, GapResult, full_spectrum, gap, normalized_laplacian

CERTIFIED = "certified_T_free_product"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class GarlandReport:
    """Minimum link lambda_2 over codimension-2 faces, with the verdict."""

    min_link_lambda2: Optional[float]
    pure: bool
    certified: bool
    worst_face: Optional[tuple]


@dataclass(frozen=True)
class ZukReport:
    all_links_connected: bool
    min_link_lambda2: Optional[float]
    certified: bool


@dataclass(frozen=True)
class StructureVerdict:
    """Verdict on the free-product shape of the fundamental group.

    Under the certified verdict the group splits as a (T) factor times a
    free factor with one generator per isolated edge, so isolated_edges
    doubles as the free rank.
    """

    isolated_edges: int
    skeleton_connected: bool
    zuk_on_stripped: ZukReport
    verdict: str

    @property
    def free_rank(self) -> int:
        return self.isolated_edges


@dataclass(frozen=True)
class HittingReport:
    """First process indices at which each tracked property holds.

    M1: no isolated (d-1)-face remains.  M2: the top reduced Betti number
    reaches zero (dimension >= 2) or the graph connects (dimension 1,
    where it coincides with tau_c_index).  M2T: first structure-certified
    index found by the grid scan.  gap is filled by the dimension-1 scan.
    """

    M1: Optional[int] = None
    M2: Optional[int] = None
    M2T: Optional[int] = None
    tau_c_index: Optional[int] = None
    gap: Optional[GapResult] = None


def link_lambda2(y: Complex, f) -> Optional[Tuple[float, bool]]:
    """(lambda_2, connected) of lk(f) on its positive-degree vertices.

    None when the link has no edges at all.  Zero-degree link vertices
    are discarded before the eigensolve: each one is a kernel dimension
    that says nothing about the expansion of the rest.
    """
    lk = link(y, f)
    keep = np.flatnonzero(lk.degrees > 0)
    if keep.size == 0:
        return None
    vals = full_spectrum(normalized_laplacian(induced_subgraph(lk, keep))).eigenvalues
    connected = int(np.count_nonzero(vals < ZERO_TOL)) == 1
    return float(vals[1]), connected


def garland_check(y: Complex) -> GarlandReport:
    """Certificate that the stripped complex's top rational cohomology dies.

    Purity of the stripped complex (every (d-2)-face under some d-face;
    stripping already guarantees it for the kept (d-1)-faces) plus
    lambda_2 > 1 - 1/d in every nonempty codimension-2 link.
    """
    if y.d < 2:
        raise ValueError("link certificates need dimension >= 2")
    pure = is_pure(y)
    worst: Optional[float] = None
    worst_face: Optional[tuple] = None
    for f in combinations(range(y.n), y.d - 1):
        got = link_lambda2(y, f)
        if got is None:
            continue
        lam2, _ = got
        if worst is None or lam2 < worst:
            worst, worst_face = lam2, f
    if worst is None:
        return GarlandReport(None, pure, False, None)
    certified = pure and worst > 1.0 - 1.0 / y.d
    return GarlandReport(worst, pure, certified, worst_face)


def zuk_check(y: Complex) -> ZukReport:
    """Every vertex link connected with lambda_2 > 1/2, read on Y-tilde.

    A vertex link restricted to its positive-degree vertices is the same
    graph before and after stripping isolated edges, since a kept edge at
    v always arrives inside a triangle at v.  A vertex whose link has no
    edges fails the connectivity clause outright.
    """
    if y.d != 2:
        raise ValueError("vertex-link certificate is for dimension 2")
    all_connected = True
    worst: Optional[float] = None
    for v in range(y.n):
        got = link_lambda2(y, (v,))
        if got is None:
            all_connected = False
            continue
        lam2, connected = got
        all_connected = all_connected and connected
        if worst is None or lam2 < worst:
            worst = lam2
    certified = all_connected and worst is not None and worst > 0.5
    return ZukReport(all_connected, worst, certified)


def t_structure(y: Complex) -> StructureVerdict:
    """Free-product verdict for a dimension-2 complex.

    Fewer than n-1 isolated edges cannot disconnect the complete
    1-skeleton, so stripping them leaves a connected complex; with Zuk
    certified on it, each stripped edge contributes one free generator
    alongside a (T) factor.
    """
    if y.d != 2:
        raise ValueError("structure verdict is for dimension 2")
    isolated = isolated_faces(y).isolated_count
    skeleton_connected = isolated < y.n - 1
    zuk = zuk_check(y)
    verdict = CERTIFIED if skeleton_connected and zuk.certified else INCONCLUSIVE
    return StructureVerdict(isolated, skeleton_connected, zuk, verdict)


def _facet_rows(face: np.ndarray, table: np.ndarray) -> np.ndarray:
    d1 = face.size
    facets = np.empty((d1, d1 - 1), dtype=np.int64)
    for i in range(d1):
        facets[i] = np.delete(face, i)
    return rank_faces(facets, table)


def cohomology_hitting(proc: FaceProcess, seed: int = 0) -> HittingReport:
    """One pass over a process, recording when cohomology obstructions die.

    M1 is the first index with no isolated (d-1)-face, from an incremental
    degree table; M2 the first index at which the streamed boundary rank
    reaches C(n-1, d), i.e. the top reduced Betti number hits zero.  Both
    exist because the complete skeleton satisfies both.
    """
    if proc.d < 2:
        raise ValueError("cohomology scan needs dimension >= 2")
    n, d = proc.n, proc.d
    table = binom_table(n, d + 1)
    stats = empty_stats(n, d)
    tracker = RankTracker(int(table[n, d]), seed=seed)
    target = math.comb(n - 1, d)
    signs = np.array([1 if i % 2 == 0 else -1 for i in range(d + 1)], dtype=np.int64)
    m1 = m2 = None
    arrivals = proc.first(proc.total)
    for m, r in enumerate(arrivals, start=1):
        face = unrank_faces(np.array([r]), d + 1, table)[0]
        stats.add_face(face)
        tracker.add_column(_facet_rows(face, table), signs)
        if m1 is None and stats.isolated_count == 0:
            m1 = m
        if m2 is None and tracker.rank == target:
            m2 = m
        if m1 is not None and m2 is not None:
            break
    return HittingReport(M1=m1, M2=m2)


def _first_without_isolated(proc: FaceProcess) -> Optional[int]:
    stats = empty_stats(proc.n, proc.d)
    table = stats._table
    arrivals = proc.first(proc.total)
    for m, r in enumerate(arrivals, start=1):
        stats.add_face(unrank_faces(np.array([r]), proc.d + 1, table)[0])
        if stats.isolated_count == 0:
            return m
    return None


def t_hitting(proc: FaceProcess, grid: Sequence[int]) -> HittingReport:
    """Grid scan for the first structure-certified index of a process.

    Certification is not monotone in m (each new face reshapes link
    spectra), so a sorted grid is evaluated left to right and the bracket
    between the last inconclusive and the first certified grid point is
    refined one index at a time.  M1 reports the isolated-edge version.
    """
    if proc.d != 2:
        raise ValueError("structure scan is for dimension 2")
    grid = [int(m) for m in grid]
    if not grid:
        raise ValueError("grid must not be empty")
    if grid != sorted(grid) or grid[0] < 0 or grid[-1] > proc.total:
        raise ValueError("grid must be sorted within [0, total]")

    m1 = _first_without_isolated(proc)
    m2t = None
    last_inconclusive = None
    for g in grid:
        if t_structure(proc.prefix(g)).verdict != CERTIFIED:
            last_inconclusive = g
            continue
        start = g if last_inconclusive is None else last_inconclusive + 1
        for m in range(start, g + 1):
            if t_structure(proc.prefix(m)).verdict == CERTIFIED:
                m2t = m
                break
        break
    return HittingReport(M1=m1, M2T=m2t)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


def graph_connectivity_hitting(proc: FaceProcess) -> HittingReport:
    """Edge-process scan: connection time tau_c and the gap right there.

    Union-find tracks the component count edge by edge; the first
    single-component prefix is tau_c, where the graph is connected by
    construction and its gap is measured.  M1 is the death time of the
    last isolated vertex, M2 coincides with tau_c (zero-th reduced Betti
    number hitting zero is exactly connectivity).
    """
    if proc.d != 1:
        raise ValueError("connectivity scan is for dimension 1")
    n = proc.n
    table = binom_table(n, 2)
    uf = _UnionFind(n)
    degree = np.zeros(n, dtype=np.int64)
    zero_deg = n
    m1 = tau = None
    lo = 0
    while (m1 is None or tau is None) and lo < proc.total:
        hi = min(lo + 1024, proc.total)
        block = unrank_faces(proc.first(hi)[lo:], 2, table)
        for m, (u, v) in enumerate(block, start=lo + 1):
            for w in (int(u), int(v)):
                if degree[w] == 0:
                    zero_deg -= 1
                degree[w] += 1
            if m1 is None and zero_deg == 0:
                m1 = m
            uf.union(int(u), int(v))
            if tau is None and uf.components == 1:
                tau = m
            if m1 is not None and tau is not None:
                break
        lo = hi
    gr = gap(from_edges(n, proc.prefix(tau).faces))
    return HittingReport(M1=m1, M2=tau, tau_c_index=tau, gap=gr)

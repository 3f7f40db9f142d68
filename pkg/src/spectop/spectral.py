"""Normalized Laplacian assembly, dense spectra, and gap quantities.

The Laplacian convention follows the degree-normalized form: L = P+ - M with
M[u, v] = 1/sqrt(deg u * deg v) on edges, where coordinates of degree 0 carry
zeros (P+ is the diagonal indicator of positive degree).  Eigenvalues of L
live in [0, 2] and the kernel dimension equals the number of components.

The gap quantity reported everywhere is the absolute one:
max over nontrivial eigenvalues of |1 - lambda_i|.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph, components, induced_subgraph

__all__ = [
    "Spectrum",
    "GapResult",
    "ZERO_TOL",
    "normalized_laplacian",
    "full_spectrum",
    "gap",
    "giant_gap",
    "adjacency_seminorm",
    "rayleigh_bounds",
]

# eigenvalues below this count as kernel; dense solver residuals are ~1e-12
# at these sizes, so this keeps five orders of margin
ZERO_TOL = 1e-7

# dense-only policy: no iterative eigensolvers.  The cap guards accidental
# huge allocations while leaving room for the n=5000 giant-component runs.
_DENSE_CAP = 6144


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues plus the achieved residual bound of the solve."""

    eigenvalues: np.ndarray
    residual_tol: float


@dataclass(frozen=True)
class GapResult:
    lambda_abs: float
    lambda2: float
    lambda_max: float
    kernel_dim: int


def normalized_laplacian(g: Graph) -> np.ndarray:
    deg = g.degrees.astype(np.float64)
    with np.errstate(divide="ignore"):
        dinv = 1.0 / np.sqrt(deg)
    dinv[~np.isfinite(dinv)] = 0.0
    lap = -(g.adjacency() * dinv[:, None]) * dinv[None, :]
    np.fill_diagonal(lap, (deg > 0).astype(np.float64))
    return lap


def _check_square_symmetric(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if m.shape[0] > _DENSE_CAP:
        raise ValueError(f"dense eigensolve capped at n={_DENSE_CAP}")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not symmetric")
    return m


def full_spectrum(m: np.ndarray, tol: float = 1e-9) -> Spectrum:
    """All eigenvalues of a symmetric matrix, residual-checked.

    Every (eigenvalue, eigenvector) pair of the solve satisfies
    ||m v - lambda v|| <= achieved * ||m||_op with achieved <= tol.
    """
    m = _check_square_symmetric(m)
    vals, vecs = np.linalg.eigh(m)
    if vals.size == 0:
        return Spectrum(vals, 0.0)
    resid = np.linalg.norm(m @ vecs - vecs * vals, axis=0).max()
    opnorm = np.abs(vals).max()
    achieved = float(resid / max(opnorm, np.finfo(np.float64).tiny))
    if achieved > tol:
        raise ArithmeticError(f"eigensolve residual {achieved:.3e} exceeds tol {tol:.1e}")
    return Spectrum(vals, achieved)


def _lap_eigvals(g: Graph) -> np.ndarray:
    """Eigenvalues of L only (no vectors); same dense LAPACK path."""
    lap = normalized_laplacian(g)
    if lap.shape[0] > _DENSE_CAP:
        raise ValueError(f"dense eigensolve capped at n={_DENSE_CAP}")
    return np.linalg.eigvalsh(lap)


def gap(g: Graph) -> GapResult:
    """Absolute gap of a connected graph.

    Exactly one smallest eigenvalue is dropped (the kernel of a connected
    graph), so a tiny positive lambda_2 is reported rather than thresholded
    away.  Disconnected input is an error naming the kernel dimension found.
    """
    vals = _lap_eigvals(g)
    kernel_dim = int(np.count_nonzero(vals < ZERO_TOL))
    if kernel_dim != 1:
        raise ValueError(f"graph is not connected: kernel_dim={kernel_dim}")
    if vals.size < 2:
        raise ValueError("gap needs at least 2 vertices")
    rest = vals[1:]
    return GapResult(
        lambda_abs=float(np.abs(1.0 - rest).max()),
        lambda2=float(rest[0]),
        lambda_max=float(rest[-1]),
        kernel_dim=kernel_dim,
    )


def giant_gap(g: Graph) -> GapResult:
    """Gap of the induced subgraph on the giant component."""
    if g.edge_count == 0:
        raise ValueError("giant_gap needs at least one edge")
    comp = components(g)
    keep = np.flatnonzero(comp.component_id == comp.giant)
    return gap(induced_subgraph(g, keep))


def adjacency_seminorm(g: Graph) -> float:
    """sup |x^t A y| over unit x orthogonal to the ones vector, unit y.

    Equals the largest singular value of P A with P = I - J/n, computed from
    the symmetric P A A P (one matmul plus rank-one corrections).
    """
    n = g.n
    if n == 0 or g.edge_count == 0:
        return 0.0
    a = g.adjacency()
    s = a @ a
    rs = s.sum(axis=1)
    tot = float(rs.sum())
    psp = s - (rs[:, None] + rs[None, :]) / n + tot / n**2
    top = np.linalg.eigvalsh(psp)[-1]
    return float(np.sqrt(max(top, 0.0)))


def rayleigh_bounds(g: Graph, f) -> tuple[float, float]:
    """Eigenvalue bounds from one test vector f orthogonal to T^{1/2} * ones.

    With R = f^t T^{-1/2} A T^{-1/2} f / ||f||^2, both lambda_2 <= 1 - R and
    lambda_max >= 1 - R hold; the caller picks the relevant side per sign(R).
    The quotient is taken against L itself, so coordinates of degree 0
    contribute 0 rather than 1 (this only differs from 1 - R when f puts
    mass on isolated vertices, where 1 - R alone would overstate lambda_max).
    """
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (g.n,):
        raise ValueError("test vector has wrong length")
    fnorm = np.linalg.norm(f)
    if fnorm == 0.0:
        raise ValueError("test vector is zero")
    deg = g.degrees.astype(np.float64)
    tsqrt = np.sqrt(deg)
    if abs(float(f @ tsqrt)) > 1e-9 * fnorm * np.linalg.norm(tsqrt):
        raise ValueError("test vector not orthogonal to T^{1/2} ones")
    with np.errstate(divide="ignore"):
        dinv = 1.0 / tsqrt
    dinv[~np.isfinite(dinv)] = 0.0
    u = f * dinv
    quad = sum(float(u[v] * u[nbrs].sum()) for v, nbrs in enumerate(g.adj) if nbrs.size)
    supported = float(f[deg > 0] @ f[deg > 0])
    bound = (supported - quad) / float(fnorm**2)
    return bound, bound

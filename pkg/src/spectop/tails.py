"""Binomial tail bounds and the exact log-gamma CDF oracle used to test them."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

__all__ = [
    "BinomialSpec",
    "lower_tail_bound",
    "upper_tail_bound",
    "exact_binom_cdf",
    "exact_binom_sf",
    "soundness_grid",
]

_N_CAP = 100_000
_GRID_N = (50, 200, 1000)
_GRID_P = (0.01, 0.05, 0.2)


@dataclass(frozen=True)
class BinomialSpec:
    n: int
    p: float

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")

    @property
    def mu(self) -> float:
        return self.n * self.p


def lower_tail_bound(mu: float, t: float) -> float:
    """P[X <= t] <= exp(-mu + t(1 + log(mu/t))) for binomial X with mean mu.

    At t = 0 the t*log term vanishes in the limit, giving exp(-mu).
    """
    if mu < 0:
        raise ValueError("mu must be non-negative")
    if t < 0 or t > mu:
        raise ValueError("need 0 <= t <= mu")
    if t == 0.0:
        return math.exp(-mu)
    return math.exp(-mu + t * (1.0 + math.log(mu / t)))


def upper_tail_bound(mu: float, t_ratio: float) -> float:
    """P[X >= t*mu] <= exp(-t*mu*log(t)/3), valid for t > 4."""
    if mu < 0:
        raise ValueError("mu must be non-negative")
    if t_ratio <= 4.0:
        raise ValueError("bound requires t > 4")
    return math.exp(-t_ratio * mu * math.log(t_ratio) / 3.0)


def _log_pmf_terms(spec: BinomialSpec, ks: np.ndarray) -> np.ndarray:
    n, p = spec.n, spec.p
    ks = ks.astype(np.float64)
    return (
        math.lgamma(n + 1)
        - np.array([math.lgamma(k + 1) + math.lgamma(n - k + 1) for k in ks])
        + ks * math.log(p)
        + (n - ks) * math.log1p(-p)
    )


def exact_binom_cdf(spec: BinomialSpec, k: int) -> float:
    """Sum_{j <= k} C(n,j) p^j (1-p)^{n-j} by log-gamma summation.

    Relative error is at the logsumexp level (~n*eps), well under 1e-10 for
    the permitted n <= 1e5.
    """
    if spec.n > _N_CAP:
        raise ValueError(f"n capped at {_N_CAP}")
    if k < 0:
        return 0.0
    if k >= spec.n:
        return 1.0
    if spec.p == 0.0:
        return 1.0
    if spec.p == 1.0:
        return 0.0
    js = np.arange(0, k + 1)
    return float(np.exp(logsumexp(_log_pmf_terms(spec, js))))


def exact_binom_sf(spec: BinomialSpec, k: int) -> float:
    """P[X >= k], summed directly in log space so tiny tails keep precision."""
    if spec.n > _N_CAP:
        raise ValueError(f"n capped at {_N_CAP}")
    if k <= 0:
        return 1.0
    if k > spec.n:
        return 0.0
    if spec.p == 0.0:
        return 0.0
    if spec.p == 1.0:
        return 1.0
    js = np.arange(k, spec.n + 1)
    return float(np.exp(logsumexp(_log_pmf_terms(spec, js))))


def soundness_grid():
    """Exact-inequality audit of both bounds over the pinned (n, p, t) grid.

    The bounds are proven, so no tolerance is applied anywhere: each cell
    reports the worst margin (bound minus exact probability) over 20 t
    values per bound, and a negative margin is a failure.
    """
    cells = []
    for n in _GRID_N:
        for p in _GRID_P:
            spec = BinomialSpec(n, p)
            mu = spec.mu
            lower_margin = math.inf
            for t in np.linspace(0.0, mu, 20):
                bound = lower_tail_bound(mu, float(t))
                exact = exact_binom_cdf(spec, math.floor(t))
                lower_margin = min(lower_margin, bound - exact)
            upper_margin = math.inf
            for t in np.linspace(4.05, 20.0, 20):
                bound = upper_tail_bound(mu, float(t))
                exact = exact_binom_sf(spec, math.ceil(t * mu))
                upper_margin = min(upper_margin, bound - exact)
            cells.append({
                "n": n,
                "p": p,
                "lower_ok": lower_margin >= 0.0,
                "upper_ok": upper_margin >= 0.0,
                "lower_margin": lower_margin,
                "upper_margin": upper_margin,
            })
    return cells

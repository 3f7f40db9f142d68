import math
from fractions import Fraction

import numpy as np
import pytest

from spectop.tails import (
    BinomialSpec,
    exact_binom_cdf,
    exact_binom_sf,
    lower_tail_bound,
    soundness_grid,
    upper_tail_bound,
)


def rational_cdf(n, p_num, p_den, k):
    """Exact rational CDF oracle, feasible for n <= 100."""
    p = Fraction(p_num, p_den)
    total = Fraction(0)
    for j in range(k + 1):
        total += math.comb(n, j) * p**j * (1 - p) ** (n - j)
    return total


class TestLowerBound:
    def test_boundary_t_equals_mu(self):
        assert lower_tail_bound(5.0, 5.0) == pytest.approx(1.0)

    def test_t_zero_limit(self):
        assert lower_tail_bound(5.0, 0.0) == pytest.approx(math.exp(-5.0))

    def test_halfway_value_and_soundness(self):
        bound = lower_tail_bound(10.0, 5.0)
        assert bound == pytest.approx(math.exp(-10 + 5 * (1 + math.log(2))), rel=1e-12)
        assert bound == pytest.approx(0.2156, rel=1e-3)
        exact = exact_binom_cdf(BinomialSpec(100, 0.1), 5)
        assert exact <= bound

    def test_rejects_t_above_mu(self):
        with pytest.raises(ValueError):
            lower_tail_bound(5.0, 5.1)

    def test_monotone_in_t(self):
        ts = np.linspace(0.0, 7.0, 40)
        vals = [lower_tail_bound(7.0, float(t)) for t in ts]
        assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))


class TestUpperBound:
    def test_e_cubed(self):
        t = math.exp(3.0)
        assert upper_tail_bound(1.0, t) == pytest.approx(math.exp(-t), rel=1e-12)

    def test_mu2_t5_and_soundness(self):
        bound = upper_tail_bound(2.0, 5.0)
        assert bound == pytest.approx(math.exp(-10 * math.log(5) / 3), rel=1e-12)
        exact = exact_binom_sf(BinomialSpec(200, 0.01), 10)
        assert exact <= bound

    def test_rejects_t_at_four(self):
        with pytest.raises(ValueError):
            upper_tail_bound(3.0, 4.0)


class TestExactCdf:
    def test_single_trial(self):
        assert exact_binom_cdf(BinomialSpec(1, 0.3), 0) == pytest.approx(0.7, rel=1e-12)

    def test_two_fair_trials(self):
        assert exact_binom_cdf(BinomialSpec(2, 0.5), 1) == pytest.approx(0.75, rel=1e-12)

    def test_against_rational_oracle(self):
        cases = [(100, 1, 10, 5), (80, 1, 20, 2), (64, 3, 10, 30), (100, 1, 2, 50)]
        for n, num, den, k in cases:
            got = exact_binom_cdf(BinomialSpec(n, num / den), k)
            want = float(rational_cdf(n, num, den, k))
            assert got == pytest.approx(want, rel=1e-10)

    def test_sf_against_rational_oracle(self):
        p = Fraction(1, 20)
        n, k = 60, 12
        want = Fraction(0)
        for j in range(k, n + 1):
            want += math.comb(n, j) * p**j * (1 - p) ** (n - j)
        got = exact_binom_sf(BinomialSpec(60, 0.05), 12)
        assert got == pytest.approx(float(want), rel=1e-10)

    def test_degenerate_p(self):
        assert exact_binom_cdf(BinomialSpec(10, 0.0), 0) == 1.0
        assert exact_binom_cdf(BinomialSpec(10, 1.0), 9) == 0.0
        assert exact_binom_sf(BinomialSpec(10, 1.0), 10) == 1.0

    def test_out_of_range_k(self):
        assert exact_binom_cdf(BinomialSpec(5, 0.4), -1) == 0.0
        assert exact_binom_cdf(BinomialSpec(5, 0.4), 5) == 1.0

    def test_size_cap(self):
        with pytest.raises(ValueError):
            exact_binom_cdf(BinomialSpec(200_000, 0.1), 3)

    def test_invalid_spec(self):
        with pytest.raises(ValueError):
            BinomialSpec(10, 1.5)
        with pytest.raises(ValueError):
            BinomialSpec(-1, 0.5)


class TestSoundnessGrid:
    """Both bounds hold with exact inequality over the whole grid."""

    NS = [50, 200, 1000]
    PS = [0.01, 0.05, 0.2]

    @pytest.mark.parametrize("n", NS)
    @pytest.mark.parametrize("p", PS)
    def test_lower(self, n, p):
        spec = BinomialSpec(n, p)
        mu = spec.mu
        for t in np.linspace(0.0, mu, 20):
            assert exact_binom_cdf(spec, math.floor(t)) <= lower_tail_bound(mu, float(t))

    @pytest.mark.parametrize("n", NS)
    @pytest.mark.parametrize("p", PS)
    def test_upper(self, n, p):
        spec = BinomialSpec(n, p)
        mu = spec.mu
        for t in np.linspace(4.05, 20.0, 20):
            k = math.ceil(t * mu)
            assert exact_binom_sf(spec, k) <= upper_tail_bound(mu, float(t))

    def test_grid_function_all_pass(self):
        cells = soundness_grid()
        assert len(cells) == len(self.NS) * len(self.PS)
        for cell in cells:
            assert cell["lower_ok"] and cell["upper_ok"]
            assert cell["lower_margin"] >= 0.0
            assert cell["upper_margin"] >= 0.0

    def test_grid_function_margins_match_direct(self):
        cell = next(c for c in soundness_grid() if c["n"] == 200 and c["p"] == 0.05)
        spec = BinomialSpec(200, 0.05)
        mu = spec.mu
        lo = min(
            lower_tail_bound(mu, float(t)) - exact_binom_cdf(spec, math.floor(t))
            for t in np.linspace(0.0, mu, 20)
        )
        hi = min(
            upper_tail_bound(mu, float(t)) - exact_binom_sf(spec, math.ceil(t * mu))
            for t in np.linspace(4.05, 20.0, 20)
        )
        assert cell["lower_margin"] == lo
        assert cell["upper_margin"] == hi

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orderbound import binom_cdf, homogeneous_sample, make_sample, quantile_bound, tail_prob
from orderbound.quantile import max_iterations

from conftest import binom_cdf_by_summation


class TestBinomCdf:
    def test_edges(self):
        assert binom_cdf(5, 5, 0.3) == 1.0
        assert binom_cdf(7, 5, 0.3) == 1.0
        assert binom_cdf(-1, 5, 0.3) == 0.0
        assert binom_cdf(0, 5, 0.0) == 1.0
        assert binom_cdf(4, 5, 1.0) == 0.0

    def test_small_example(self):
        # C(2,0)*0.25 + C(2,1)*0.25 = 0.75
        assert abs(binom_cdf(1, 2, 0.5) - 0.75) < 1e-15

    def test_p_validation(self):
        with pytest.raises(ValueError):
            binom_cdf(1, 2, 1.5)

    @given(
        n=st.integers(1, 150),
        k_frac=st.floats(0, 1),
        p=st.floats(0.0, 1.0),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_direct_summation(self, n, k_frac, p):
        k = int(round(k_frac * n))
        assert abs(binom_cdf(k, n, p) - binom_cdf_by_summation(k, n, p)) < 1e-12

    def test_large_n_against_mpmath(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 40
        n = 10_000
        for k, p in [(5000, 0.5), (4800, 0.47), (9999, 0.999), (120, 0.01)]:
            want = float(
                sum(
                    mpmath.binomial(n, j) * mpmath.mpf(p) ** j * mpmath.mpf(1 - p) ** (n - j)
                    for j in range(k + 1)
                )
            )
            assert abs(binom_cdf(k, n, p) - want) < 1e-12


def _tail_by_enumeration(i, n, p):
    """Independent reference: walk all 2^n outcomes of the two-atom draw
    and test the i-th smallest directly."""
    total = 0.0
    for hits in itertools.product((0, 1), repeat=n):
        prob = 1.0
        for h in hits:
            prob *= p if h else 1.0 - p
        if sorted(hits)[i - 1] == 1:
            total += prob
    return total


class TestTailProb:
    def test_single_draw(self):
        for p in (0.0, 0.3, 1.0):
            assert abs(tail_prob(1, 1, p) - p) < 1e-15

    def test_certain_at_full_mass(self):
        for n in (1, 3, 6):
            assert tail_prob(n, n, 1.0) == 1.0

    def test_max_statistic_two_draws(self):
        # P[max of two draws hits the atom] = 1 - (1-p)^2
        assert abs(tail_prob(2, 2, 0.5) - 0.75) < 1e-15
        assert abs(tail_prob(2, 2, 0.5) - _tail_by_enumeration(2, 2, 0.5)) < 1e-15

    def test_min_statistic_two_draws(self):
        # P[min of two draws hits the atom] = p^2
        assert abs(tail_prob(1, 2, 0.5) - 0.25) < 1e-15

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_matches_enumeration(self, n):
        for i in range(1, n + 1):
            for p in (0.0, 0.2, 0.5, 0.9, 1.0):
                assert abs(tail_prob(i, n, p) - _tail_by_enumeration(i, n, p)) < 1e-12

    def test_paper_literal_variant_differs(self):
        # the literal variant is off by one draw and saturates here
        assert tail_prob(2, 2, 0.5, paper_literal=True) == 1.0
        assert tail_prob(2, 2, 0.5) == 0.75

    def test_monotone_in_p(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            n = int(rng.integers(1, 51))
            i = int(rng.integers(1, n + 1))
            p1, p2 = sorted(rng.random(2))
            assert tail_prob(i, n, p1) <= tail_prob(i, n, p2) + 1e-15

    def test_index_validation(self):
        with pytest.raises(ValueError):
            tail_prob(0, 3, 0.5)
        with pytest.raises(ValueError):
            tail_prob(4, 3, 0.5)


class TestQuantileBound:
    def test_single_draw_alpha(self, unit2):
        x = make_sample(unit2, [1.0])
        res = quantile_bound(x, 1, 0.05, 1e-4)
        assert abs(res.p_hat - 0.05) <= res.delta
        assert abs(res.bound - 0.05) <= res.delta
        assert res.c == 1.0

    def test_degenerate_atom_at_min(self, unit3):
        x = make_sample(unit3, [0.0, 0.5])
        res = quantile_bound(x, 1, 0.25, 1e-4)
        assert res.bound == unit3.s_min
        assert res.iterations == 0  # delta = 1, interval never shrinks

    def test_analytic_family_min_statistic(self, unit5):
        """i = 1 needs every draw at-or-above the atom, so the critical
        mass is alpha**(1/n) in closed form."""
        for n in range(1, 7):
            for alpha in (0.01, 0.1, 0.5):
                for j in range(1, 5):
                    x = homogeneous_sample(unit5, j, n)
                    res = quantile_bound(x, 1, alpha, 1e-4)
                    p_star = alpha ** (1.0 / n)
                    v = unit5.point(j)
                    assert abs(res.p_hat - p_star) <= res.delta
                    want = unit5.s_min * (1 - p_star) + v * p_star
                    assert abs(res.bound - want) <= res.epsilon + res.delta * 1.0

    def test_interval_brackets_critical_point(self, unit5):
        for n, i, alpha in [(3, 2, 0.25), (4, 1, 0.05), (5, 5, 0.1), (2, 1, 0.25)]:
            x = homogeneous_sample(unit5, 3, n)
            res = quantile_bound(x, i, alpha, 1e-4)
            d = res.delta
            assert tail_prob(i, n, min(res.p_hat + d, 1.0)) > alpha
            assert res.p_hat <= d or tail_prob(i, n, res.p_hat - d) <= alpha

    def test_iteration_cap(self, unit5):
        for eps in (1e-3, 1e-4, 1e-6):
            x = homogeneous_sample(unit5, 4, 3)
            res = quantile_bound(x, 2, 0.25, eps)
            assert res.iterations <= max_iterations(res.delta)

    def test_alpha_zero_collapses(self, unit5):
        x = homogeneous_sample(unit5, 3, 2)
        res = quantile_bound(x, 1, 0.0, 1e-4)
        assert res.p_hat <= res.delta
        assert res.bound <= unit5.s_min + res.delta * (unit5.point(3) - unit5.s_min)

    def test_validation(self, unit5):
        x = homogeneous_sample(unit5, 3, 2)
        with pytest.raises(ValueError):
            quantile_bound(x, 0, 0.25, 1e-4)
        with pytest.raises(ValueError):
            quantile_bound(x, 1, 1.0, 1e-4)
        with pytest.raises(ValueError):
            quantile_bound(x, 1, 0.25, 0.0)

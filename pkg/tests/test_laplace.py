"""Laplace-transform routes: series vs. grid recursion vs. closed forms."""

from __future__ import annotations

import math

import numpy as np
import pytest

from staircase import (
    DomainError,
    LaplaceQuery,
    ck,
    gf_closed_form,
    laplace_oracle_grid,
    laplace_partial_sum,
    moment_gate,
)
from staircase.quadrature import adaptive_gauss_legendre

# Hand-derived by integrating the one- and two-step recursions at p=1/2, t=1:
# W_1(1) = (1-p)e^{-1} + p(1-e^{-1}) = 1/2;  W_2(1) = (5 + e^{-2})/16.
W1_HALF_T1 = 0.5
W2_HALF_T1 = (5 + math.exp(-2)) / 16


class TestCk:
    def test_empty_integral(self):
        assert ck(0.7, 2.0, 0.0, 3) == 0.0

    def test_t_zero_closed_form(self):
        # (1 - (1-p)^2) / 2 at p = 1/2, x = 1
        assert ck(0.5, 0.0, 1.0, 2) == pytest.approx(0.375, abs=1e-15)

    def test_k_one_antiderivative(self):
        # p (1 - e^{-t}) / t
        got = ck(0.5, 1.0, 1.0, 1)
        assert got == pytest.approx(0.5 * (1 - math.exp(-1)), abs=1e-12)
        assert got == pytest.approx(0.3160603, abs=5e-8)

    def test_quadrature_matches_t_zero_closed_form(self):
        # run the integrand through quadrature at t=0 and compare to the formula
        for p in (0.3, 0.8, 1.0):
            for k in (1, 2, 5, 9):
                closed = (1 - (1 - p) ** k) / k

                def integrand(s, p=p, k=k):
                    return p * (1 - p * s) ** (k - 1)

                q = adaptive_gauss_legendre(integrand, 0.0, 1.0, 1e-10)
                assert q.value == pytest.approx(closed, rel=1e-10)

    def test_invalid_index(self):
        with pytest.raises(DomainError):
            ck(0.5, 1.0, 1.0, 0)


class TestLaplacePartialSum:
    def test_t_zero_is_one(self):
        for p in (0.3, 0.7, 1.0):
            for n in (0, 1, 5, 12):
                w = laplace_partial_sum(LaplaceQuery(p=p, t=0.0, n=n))
                assert abs(w - 1.0) <= 1e-12

    def test_one_step_closed_form(self):
        w = laplace_partial_sum(LaplaceQuery(p=0.5, t=1.0, n=1))
        assert w == pytest.approx(W1_HALF_T1, abs=1e-12)

    def test_two_step_closed_form(self):
        w = laplace_partial_sum(LaplaceQuery(p=0.5, t=1.0, n=2))
        assert w == pytest.approx(W2_HALF_T1, abs=1e-10)

    def test_two_step_matches_grid_oracle(self):
        w = laplace_partial_sum(LaplaceQuery(p=0.5, t=1.0, n=2))
        _, table = laplace_oracle_grid(0.5, 1.0, 2, nodes=1025)
        assert w == pytest.approx(table[2][-1], abs=1e-7)

    def test_decreasing_in_n_and_t(self):
        values = [laplace_partial_sum(LaplaceQuery(p=0.7, t=1.0, n=n)) for n in range(8)]
        assert all(b < a for a, b in zip(values, values[1:]))
        for n in (1, 4):
            w_small_t = laplace_partial_sum(LaplaceQuery(p=0.7, t=0.5, n=n))
            w_large_t = laplace_partial_sum(LaplaceQuery(p=0.7, t=2.0, n=n))
            assert w_large_t < w_small_t

    def test_result_in_unit_interval(self):
        for p in (0.3, 1.0):
            for t in (0.1, 5.0):
                for n in (0, 3, 12):
                    w = laplace_partial_sum(LaplaceQuery(p=p, t=t, n=n))
                    assert 0 < w <= 1

    def test_query_validation(self):
        with pytest.raises(DomainError):
            LaplaceQuery(p=0.5, t=-1.0, n=2)
        with pytest.raises(DomainError):
            LaplaceQuery(p=0.5, t=1.0, n=3, order=2)
        with pytest.raises(DomainError):
            LaplaceQuery(p=0.5, t=1.0, n=2, x=0.0)
        with pytest.raises(DomainError):
            LaplaceQuery(p=1.5, t=1.0, n=2)


class TestGridOracle:
    def test_horizon_zero_constant_one(self):
        _, table = laplace_oracle_grid(0.5, 1.0, 0, nodes=257)
        assert np.all(table[0] == 1.0)

    def test_one_step_value(self):
        _, table = laplace_oracle_grid(0.5, 1.0, 1, nodes=1025)
        assert table[1][-1] == pytest.approx(W1_HALF_T1, abs=1e-10)

    def test_rejects_coarse_grids(self):
        with pytest.raises(DomainError):
            laplace_oracle_grid(0.5, 1.0, 2, nodes=100)

    def test_route_agreement_sweep(self):
        # the acceptance sweep: both numeric routes agree at x = 1
        for p in (0.3, 0.7, 1.0):
            for t in (0.1, 1.0, 5.0):
                _, table = laplace_oracle_grid(p, t, 12, nodes=1025)
                for n in range(13):
                    w = laplace_partial_sum(LaplaceQuery(p=p, t=t, n=n))
                    assert abs(w - table[n][-1]) <= 1e-7, (p, t, n)


class TestGeneratingFunction:
    def test_t_zero_collapses_to_geometric_sum(self):
        for p in (0.25, 0.9):
            for x in (0.4, 1.0):
                got = gf_closed_form(p, 0.0, x, 0.3)
                assert got == pytest.approx(1 / 0.7, rel=1e-10)

    def test_z_zero_is_one(self):
        assert gf_closed_form(0.5, 1.0, 1.0, 0.0) == 1.0

    def test_domain_error_outside_unit_disc(self):
        with pytest.raises(DomainError):
            gf_closed_form(0.5, 1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            gf_closed_form(0.5, 1.0, 1.0, -1.2)

    @pytest.mark.parametrize("z", [0.3, 0.5, 0.8])
    @pytest.mark.parametrize("N", [5, 10, 20])
    def test_partial_sums_within_tail_bound(self, z, N):
        h = gf_closed_form(0.5, 1.0, 1.0, z)
        partial = sum(
            laplace_partial_sum(LaplaceQuery(p=0.5, t=1.0, n=n)) * z**n
            for n in range(N + 1)
        )
        assert abs(partial - h) <= z ** (N + 1) / (1 - z)


class TestMonteCarlo:
    def test_empirical_transform_matches(self, ensemble_half_n5):
        # E[e^{-t S_n}] vs the series route, 5 SE band
        t = 1.0
        sample = np.exp(-t * ensemble_half_n5.partial_sums)
        w = laplace_partial_sum(LaplaceQuery(p=0.5, t=t, n=5))
        report = moment_gate(sample, w, name="laplace_mc")
        assert report.passed, f"{report.statistic} > {report.threshold}"

"""Martingale families: construction, balance residuals, and MC verification."""

from __future__ import annotations

import math

import numpy as np
import pytest

from staircase import (
    DomainError,
    MartingaleFamily,
    ModelParams,
    NumericMode,
    SeedFunction,
    SingularDomainError,
    build_family,
    closed_example_family,
    example_family,
    example_seed,
    martingale_residual,
    mc_martingale_check,
)

TWO_LOG_TWO = 2 * math.log(2)  # f_0(1) at p = 1/2


class TestExampleFamily:
    def test_seed_value_at_one(self):
        assert example_family(0.5, 0, 1.0) == pytest.approx(TWO_LOG_TWO, abs=1e-12)
        assert example_family(0.5, 0, 1.0) == pytest.approx(1.3862944, abs=5e-8)

    def test_vanishes_at_zero(self):
        for n in (0, 1, 5):
            assert example_family(0.7, n, 0.0) == 0.0

    def test_first_member_at_one(self):
        # (1/(pn)) ((1-px)^{-n} - 1) = 2 * (2 - 1)
        assert example_family(0.5, 1, 1.0) == pytest.approx(2.0, abs=1e-15)

    def test_singular_corner_guarded(self):
        with pytest.raises(SingularDomainError):
            example_family(1.0, 2, 1.0)
        # but p = 1 evaluations away from the corner are fine
        assert example_family(1.0, 1, 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            example_family(0.5, -1, 0.5)
        with pytest.raises(DomainError):
            example_family(0.5, 1, 1.5)


class TestBuildFamily:
    def test_constant_seed_stays_constant(self):
        seed = SeedFunction(f0=lambda x: 3.25, df0=lambda x: 0.0, f0_at_zero=3.25)
        family = build_family(seed, 0.6, n_max=5)
        for n in (0, 2, 5):
            for x in (0.0, 0.3, 1.0):
                assert family.value(n, x) == pytest.approx(3.25, abs=1e-12)

    def test_log_seed_reproduces_closed_form_at_one(self):
        family = build_family(example_seed(0.5), 0.5, n_max=3)
        assert family.value(1, 1.0) == pytest.approx(2.0, abs=1e-9)

    def test_quadrature_matches_closed_form(self):
        assert build_family(example_seed(0.5), 0.5, n_max=3).value(3, 0.5) == (
            pytest.approx(example_family(0.5, 3, 0.5), abs=1e-9)
        )

    def test_closed_form_agreement_across_grid(self):
        for p in (0.3, 0.7):
            family = build_family(example_seed(p), p, n_max=10)
            for n in range(0, 11):
                for x in np.linspace(0.1, 0.9, 9):
                    assert family.value(n, float(x)) == pytest.approx(
                        example_family(p, n, float(x)), abs=1e-9
                    )

    def test_family_starts_at_seed_origin_value(self):
        family = build_family(example_seed(0.7), 0.7, n_max=6)
        for n in range(7):
            assert family.value(n, 0.0) == 0.0

    def test_p_one_full_domain_rejected(self):
        with pytest.raises(SingularDomainError):
            build_family(example_seed(1.0), 1.0, n_max=2, x_domain_cap=1.0)
        family = build_family(example_seed(1.0), 1.0, n_max=2, x_domain_cap=0.9)
        assert family.value(1, 0.5) == pytest.approx(1.0, abs=1e-9)

    def test_derivative_relation(self):
        # (1-px)^n f_n'(x) recovers f_0'(x); f_n' estimated by central differences
        p = 0.7
        family = build_family(example_seed(p), p, n_max=4)
        h = 1e-5
        for n in (1, 2, 4):
            for x in np.linspace(0.1, 0.9, 9):
                x = float(x)
                fd = (family.value(n, x + h) - family.value(n, x - h)) / (2 * h)
                lhs = (1 - p * x) ** n * fd
                rhs = 1 / (1 - p * x)
                assert abs(lhs - rhs) <= 1e-6, (n, x, lhs - rhs)


class TestResidual:
    def test_example_family_balances(self):
        family = closed_example_family(0.5)
        resid = martingale_residual(family, 2, 0.8)
        scale = 1 + abs(family.value(1, 0.8))
        assert abs(resid) <= 10 * 1e-10 * scale

    def test_constant_family_balances_exactly(self):
        family = MartingaleFamily(0.5, lambda n, x: 1.5, "constant")
        for n in (1, 3):
            for x in (0.2, 1.0):
                assert abs(martingale_residual(family, n, x)) <= 1e-12

    def test_identity_family_fails_with_known_residual(self):
        # (1-px) x + p x^2/2 - x = -p x^2 / 2
        family = MartingaleFamily(0.5, lambda n, x: x, "negative-control")
        assert martingale_residual(family, 1, 1.0) == pytest.approx(-0.25, abs=1e-8)
        for p, x in [(0.3, 0.6), (0.7, 0.9)]:
            fam = MartingaleFamily(p, lambda n, x: x, "negative-control")
            assert martingale_residual(fam, 2, x) == pytest.approx(
                -p * x**2 / 2, abs=1e-8
            )

    def test_balance_across_grid(self):
        for p in (0.3, 0.7):
            family = closed_example_family(p)
            for n in range(1, 11):
                for x in np.linspace(0.1, 0.9, 9):
                    x = float(x)
                    resid = martingale_residual(family, n, x)
                    scale = 1 + abs(family.value(n - 1, x))
                    assert abs(resid) <= 1e-8 * scale, (p, n, x)

    def test_n_zero_rejected(self):
        with pytest.raises(DomainError):
            martingale_residual(closed_example_family(0.5), 0, 0.5)


class TestMonteCarlo:
    PARAMS = ModelParams(0.5, NumericMode.FLOAT64)

    def test_example_family_preserves_mean(self):
        report = mc_martingale_check(
            closed_example_family(0.5), self.PARAMS, n=1, m=100_000, master_seed=4242
        )
        assert report.mean_gate.passed
        assert report.max_conditional_residual <= report.conditional_tolerance
        assert report.passed

    def test_constant_family_trivially_passes(self):
        family = MartingaleFamily(0.5, lambda n, x: 2.0, "constant")
        report = mc_martingale_check(family, self.PARAMS, n=1, m=2_000, master_seed=7)
        assert report.passed
        assert report.mean_gate.statistic == 0.0

    def test_identity_family_flagged(self):
        family = MartingaleFamily(0.5, lambda n, x: x, "negative-control")
        report = mc_martingale_check(family, self.PARAMS, n=1, m=50_000, master_seed=8)
        # empirical mean sits near E[X_1] = 0.75, far from f_0(1) = 1
        assert not report.mean_gate.passed
        assert not report.passed

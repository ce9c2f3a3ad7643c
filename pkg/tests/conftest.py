"""Shared fixtures: large Monte Carlo ensembles are simulated once per session."""

from __future__ import annotations

import pytest

from staircase import ModelParams, NumericMode, sample_ensemble

MASTER_SEED = 42
DESK_PATHS = 200_000


def _params(p: float) -> ModelParams:
    return ModelParams(p, NumericMode.FLOAT64)


@pytest.fixture(scope="session")
def ensemble_half_n5():
    """p = 1/2, n = 5, 200k paths."""
    return sample_ensemble(_params(0.5), 5, DESK_PATHS, MASTER_SEED)


@pytest.fixture(scope="session")
def ensemble_ninetenths_n8():
    """p = 9/10, n = 8, 200k paths."""
    return sample_ensemble(_params(0.9), 8, DESK_PATHS, MASTER_SEED)


@pytest.fixture(scope="session")
def ensemble_one_n4():
    """p = 1, n = 4, 200k paths."""
    return sample_ensemble(_params(1.0), 4, DESK_PATHS, MASTER_SEED)


@pytest.fixture(scope="session")
def ensemble_half_n3():
    """p = 1/2, n = 3, 200k paths (joint-survival checks)."""
    return sample_ensemble(_params(0.5), 3, DESK_PATHS, MASTER_SEED)

"""Statistical gates comparing Monte Carlo ensembles to the exact laws.

The marginal law is mixed (atom at 1), so empirical-CDF checks use the
distribution-free DKW bound sup|F_hat - F| <= sqrt(ln(2/alpha) / (2m)) --
valid without continuity assumptions -- rather than classical KS p-values.
Counting-process fits use a Pearson chi-square with tail pooling, and scalar
means use a blunt fixed five-standard-error band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .counting import PmfTable
from .distributions import MarginalLaw
from .errors import InsufficientSampleError, PreconditionError

#: Expected-count floor below which adjacent histogram bins are pooled.
MIN_EXPECTED_PER_BIN = 5.0

#: Width of the moment-gate acceptance band, in standard errors.
MOMENT_GATE_SIGMAS = 5.0


@dataclass(frozen=True)
class GateReport:
    """One statistical check: passes iff statistic <= threshold."""

    name: str
    statistic: float
    threshold: float
    sample_size: int
    passed: bool
    reference: str

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statistic": self.statistic,
            "threshold": self.threshold,
            "sample_size": self.sample_size,
            "passed": self.passed,
            "reference": self.reference,
        }


def dkw_threshold(m: int, alpha: float) -> float:
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * m))


def dkw_cdf_gate(sample: np.ndarray, law: MarginalLaw, alpha: float,
                 name: str = "dkw_marginal_cdf") -> GateReport:
    """DKW band check of the empirical CDF of X_n against the mixed exact law.

    The supremum gap is evaluated from both sides at every sample point plus
    the atom location 1, which covers the discontinuity exactly.
    """
    sample = np.asarray(sample, dtype=float)
    m = sample.shape[0]
    if m < 1000:
        raise PreconditionError(f"DKW gate needs at least 1000 samples, got {m}")
    sorted_sample = np.sort(sample)
    points = np.unique(np.append(sorted_sample, 1.0))
    n_le = np.searchsorted(sorted_sample, points, side="right")
    n_lt = np.searchsorted(sorted_sample, points, side="left")
    p_f = float(law.p)
    n = law.n
    cdf_right = np.where(points >= 1.0, 1.0, 1.0 - (1.0 - p_f * points) ** n)
    cdf_left = 1.0 - (1.0 - p_f * points) ** n
    gap = np.maximum(
        np.abs(n_le / m - cdf_right),
        np.abs(n_lt / m - cdf_left),
    )
    statistic = float(gap.max())
    threshold = dkw_threshold(m, alpha)
    return GateReport(
        name=name,
        statistic=statistic,
        threshold=threshold,
        sample_size=m,
        passed=statistic <= threshold,
        reference=f"mixed CDF 1-(1-px)^n with atom (1-p)^n at 1, p={p_f}, n={n}",
    )


def _pool_bins(observed: np.ndarray, expected: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Merge adjacent bins left to right until every group's expectation >= 5."""
    obs_groups: list[float] = []
    exp_groups: list[float] = []
    acc_obs = 0.0
    acc_exp = 0.0
    for o, e in zip(observed, expected):
        acc_obs += o
        acc_exp += e
        if acc_exp >= MIN_EXPECTED_PER_BIN:
            obs_groups.append(acc_obs)
            exp_groups.append(acc_exp)
            acc_obs = 0.0
            acc_exp = 0.0
    if acc_exp > 0 or acc_obs > 0:
        if exp_groups:
            obs_groups[-1] += acc_obs
            exp_groups[-1] += acc_exp
        else:
            obs_groups.append(acc_obs)
            exp_groups.append(acc_exp)
    return np.asarray(obs_groups), np.asarray(exp_groups)


def chi_square_gate(counts: np.ndarray, table: PmfTable, alpha: float,
                    name: str = "chi_square_count") -> GateReport:
    """Pearson goodness-of-fit of a jump-count histogram against the exact PMF.

    Low-expectation bins are pooled into their neighbors; the statistic is
    compared to the chi-square quantile at (groups - 1) degrees of freedom.
    """
    counts = np.asarray(counts, dtype=float)
    if counts.shape[0] != table.n + 1:
        raise PreconditionError(
            f"histogram needs {table.n + 1} bins for horizon {table.n}, got {counts.shape[0]}"
        )
    m = float(counts.sum())
    expected = m * np.array([float(q) for q in table.probs])
    observed, expected = _pool_bins(counts, expected)
    if observed.shape[0] < 2:
        raise InsufficientSampleError(
            "fewer than 2 bins remain after pooling; increase the sample size"
        )
    statistic = float(np.sum((observed - expected) ** 2 / expected))
    dof = observed.shape[0] - 1
    threshold = float(chi2.ppf(1.0 - alpha, dof))
    return GateReport(
        name=name,
        statistic=statistic,
        threshold=threshold,
        sample_size=int(m),
        passed=statistic <= threshold,
        reference=f"exact jump-count PMF, n={table.n}, dof={dof}",
    )


def moment_gate(sample: np.ndarray, exact_value: float,
                second_moment_bound: float | None = None,
                name: str = "moment_mean") -> GateReport:
    """Five-standard-error band around an exact mean.

    Blunt but dependable at desk-scale sample sizes; a degenerate (constant)
    sample passes exactly when it equals the reference.  The optional second
    moment bound is carried into the report for context only.
    """
    sample = np.asarray(sample, dtype=float)
    m = sample.shape[0]
    if m < 1000:
        raise PreconditionError(f"moment gate needs at least 1000 samples, got {m}")
    mean = float(sample.mean())
    sd = float(sample.std(ddof=1))
    statistic = abs(mean - exact_value)
    threshold = MOMENT_GATE_SIGMAS * sd / math.sqrt(m)
    ref = f"exact value {exact_value!r}"
    if second_moment_bound is not None:
        ref += f"; second moment bound {second_moment_bound!r}"
    return GateReport(
        name=name,
        statistic=statistic,
        threshold=threshold,
        sample_size=m,
        passed=statistic <= threshold,
        reference=ref,
    )

"""Martingale families attached to the chain.

A sequence of C^1 functions f_n makes {f_n(X_n)} a martingale exactly when

    f_n(x) = f_0(0) + int_0^x f_0'(t) / (1-pt)^n dt,

equivalently when the one-step balance

    (1-px) f_n(x) + p int_0^x f_n(y) dy  =  f_{n-1}(x)

holds; the residual of that balance is the testable quantity.  The worked
family here seeds with f_0(x) = -(1/p) ln(1-px), giving the closed form
f_n(x) = (1/(pn)) ((1-px)^{-n} - 1) for n >= 1.

The representation integrand (1-pt)^{-n} blows up at t = 1/p, so when p = 1
all evaluations are kept away from x = 1 by a fixed margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, SingularDomainError
from .gates import GateReport, moment_gate
from .params import ModelParams, Tolerances
from .quadrature import adaptive_gauss_legendre
from .simulate import sample_ensemble

#: Evaluations at p = 1 are truncated to x <= 1 - SINGULARITY_MARGIN.
SINGULARITY_MARGIN = 1e-6


def _check_x(p: float, x: float) -> None:
    if not (0 <= x <= 1):
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if p == 1.0 and x > 1.0 - SINGULARITY_MARGIN:
        raise SingularDomainError(
            f"integrand is singular at x = 1 when p = 1; keep x <= {1 - SINGULARITY_MARGIN}"
        )


@dataclass(frozen=True)
class SeedFunction:
    """f_0 with its derivative and limit value at 0; must be C^1 on (0, 1]."""

    f0: Callable[[float], float]
    df0: Callable[[float], float]
    f0_at_zero: float


@dataclass(frozen=True)
class MartingaleFamily:
    """A rule (n, x) -> f_n(x) for n >= 0, with its construction provenance."""

    p: float
    rule: Callable[[int, float], float]
    provenance: str
    x_cap: float = 1.0

    def value(self, n: int, x: float) -> float:
        if n < 0:
            raise DomainError(f"family index must be nonnegative, got {n}")
        _check_x(self.p, x)
        if x > self.x_cap:
            raise DomainError(f"x={x} exceeds the family domain cap {self.x_cap}")
        return self.rule(n, x)


def build_family(seed: SeedFunction, p: float, n_max: int,
                 x_domain_cap: float = 1.0,
                 tolerances: Tolerances | None = None) -> MartingaleFamily:
    """Numeric family from the integral representation of the seed.

    f_n(x) is produced by adaptive quadrature of f_0'(t) / (1-pt)^n; the n = 0
    member bypasses quadrature and evaluates the seed directly.
    """
    if not (0 < p <= 1):
        raise DomainError(f"p must lie in (0, 1], got {p}")
    if n_max < 0:
        raise DomainError(f"n_max must be nonnegative, got {n_max}")
    if p == 1.0 and x_domain_cap > 1.0 - SINGULARITY_MARGIN:
        raise SingularDomainError(
            "with p = 1 the family domain must stay below x = 1"
        )
    if not (0 < x_domain_cap <= 1):
        raise DomainError(f"domain cap must lie in (0, 1], got {x_domain_cap}")
    tol = tolerances if tolerances is not None else Tolerances()

    def rule(n: int, x: float) -> float:
        if n > n_max:
            raise DomainError(f"family was built up to n={n_max}, asked for {n}")
        if n == 0:
            return seed.f0(x) if x > 0 else seed.f0_at_zero
        if x == 0:
            return seed.f0_at_zero

        def integrand(t: np.ndarray) -> np.ndarray:
            vals = np.vectorize(seed.df0, otypes=[float])(t)
            return vals / (1.0 - p * t) ** n

        q = adaptive_gauss_legendre(integrand, 0.0, x, tol.quad_rel_tol)
        return seed.f0_at_zero + q.value

    return MartingaleFamily(p, rule, "numeric-from-seed", x_domain_cap)


# ---------------------------------------------------------------------------
# The worked closed-form family.
# ---------------------------------------------------------------------------

def example_family(p: float, n: int, x: float) -> float:
    """f_n for the seed f_0(x) = -(1/p) ln(1-px).

    Returns -(1/p) ln(1-px) for n = 0 and (1/(pn)) ((1-px)^{-n} - 1) for
    n >= 1.  x = 1 is permitted only when p < 1.
    """
    if not (0 < p <= 1):
        raise DomainError(f"p must lie in (0, 1], got {p}")
    if n < 0:
        raise DomainError(f"family index must be nonnegative, got {n}")
    _check_x(p, x)
    if n == 0:
        return -math.log1p(-p * x) / p
    return ((1.0 - p * x) ** (-n) - 1.0) / (p * n)


def example_seed(p: float) -> SeedFunction:
    """The logarithmic seed of the worked family, for rebuilding it numerically."""
    return SeedFunction(
        f0=lambda x: -math.log1p(-p * x) / p,
        df0=lambda x: 1.0 / (1.0 - p * x),
        f0_at_zero=0.0,
    )


def closed_example_family(p: float) -> MartingaleFamily:
    cap = 1.0 if p < 1.0 else 1.0 - SINGULARITY_MARGIN
    return MartingaleFamily(
        p, lambda n, x: example_family(p, n, x), "closed-form-example", cap
    )


# ---------------------------------------------------------------------------
# Verification operations.
# ---------------------------------------------------------------------------

def martingale_residual(family: MartingaleFamily, n: int, x: float,
                        tolerances: Tolerances | None = None) -> float:
    """(1-px) f_n(x) + p int_0^x f_n(y) dy - f_{n-1}(x).

    Zero (up to quadrature error) characterizes a martingale family; for the
    defective family f_n(y) = y the residual is exactly -p x^2 / 2.
    """
    if n < 1:
        raise DomainError(f"residual needs n >= 1, got {n}")
    _check_x(family.p, x)
    tol = tolerances if tolerances is not None else Tolerances()
    p = family.p

    def integrand(ys: np.ndarray) -> np.ndarray:
        return np.array([family.value(n, float(y)) for y in ys])

    integral = 0.0
    if x > 0:
        integral = adaptive_gauss_legendre(integrand, 0.0, x, tol.quad_rel_tol).value
    return (1.0 - p * x) * family.value(n, x) + p * integral - family.value(n - 1, x)


@dataclass(frozen=True)
class MartingaleMcReport:
    """Monte Carlo martingale check: mean preservation plus one-step balance."""

    mean_gate: GateReport
    max_conditional_residual: float
    conditional_tolerance: float

    @property
    def passed(self) -> bool:
        return self.mean_gate.passed and (
            self.max_conditional_residual <= self.conditional_tolerance
        )


def mc_martingale_check(family: MartingaleFamily, params: ModelParams, n: int,
                        m: int, master_seed: int,
                        n_conditional_points: int = 25) -> MartingaleMcReport:
    """Compare the empirical mean of f_n(X_n) over m paths with f_0(X_0) = f_0(1).

    Also evaluates the one-step balance residual at states sampled from the
    simulated X_{n-1} marginal, which checks the exact conditional expectation
    formula pointwise.
    """
    if n < 1:
        raise DomainError(f"the MC check needs n >= 1, got {n}")
    tol = params.tolerances
    ensemble = sample_ensemble(params, n, m, master_seed)
    cap = family.x_cap
    # paths leaving the family domain (only possible at p = 1) are filtered out
    finals = ensemble.states[:, n]
    finals = finals[finals <= cap]
    values = np.array([family.value(n, float(x)) for x in finals])
    target = family.value(0, min(1.0, cap))
    gate = moment_gate(values, target, name=f"martingale_mean_n{n}")

    prev_states = np.unique(ensemble.states[:, n - 1])
    prev_states = prev_states[prev_states <= cap]
    if prev_states.shape[0] > n_conditional_points:
        idx = np.linspace(0, prev_states.shape[0] - 1, n_conditional_points)
        prev_states = prev_states[idx.astype(int)]
    max_resid = 0.0
    for x in prev_states:
        r = abs(martingale_residual(family, n, float(x), tol))
        ref = abs(family.value(n - 1, float(x)))
        scaled = r / (1.0 + ref)
        max_resid = max(max_resid, scaled)
    cond_tol = 10.0 * tol.quad_rel_tol
    return MartingaleMcReport(gate, max_resid, cond_tol)

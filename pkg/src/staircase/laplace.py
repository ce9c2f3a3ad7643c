"""Laplace transform W_n(x) = E[exp(-t sum_{i=1}^n X_i) | X_0 = x].

Two independent numeric routes are implemented:

* laplace_partial_sum -- the series route.  Integral coefficients
      c_k(x) = p int_0^x e^{-tks} (1-ps)^{k-1} ds            (k >= 1)
  feed the exponential-series coefficients V_i (exp(sum c_k z^k) =
  sum V_i z^i), and then
      W_n(x) = sum_{i=0}^{n} (1-px)^{n-i} e^{-t(n-i)x} V_i(x).
* laplace_oracle_grid -- direct iteration of the integral recursion
      W_n(x) = (1-px) e^{-tx} W_{n-1}(x) + p int_0^x e^{-ty} W_{n-1}(y) dy
  on a fixed uniform grid with cumulative composite Simpson integrals.

Their agreement at matched (p, t, n) is one of the package's acceptance
gates.  The generating function H(x,z) = sum_n W_n(x) z^n has the closed form
      H(x,z) = exp( int_0^x p z e^{-ts} / (1 - z(1-ps)e^{-ts}) ds )
               / (1 - z(1-px)e^{-tx}),
evaluated here for |z| < 1 where the series is guaranteed to converge
(0 < W_n <= 1 termwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .params import Tolerances
from .quadrature import adaptive_gauss_legendre, cumulative_simpson_uniform
from .series import TruncatedSeries, cauchy_product, series_exp

#: Minimum node count for the grid oracle.
MIN_GRID_NODES = 256


@dataclass(frozen=True)
class LaplaceQuery:
    """Evaluation request for W_n(x) at Laplace argument t."""

    p: float
    t: float
    n: int
    x: float = 1.0
    order: int | None = None  # series truncation; defaults to n (higher terms unused)
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self) -> None:
        if not (0 < self.p <= 1):
            raise DomainError(f"p must lie in (0, 1], got {self.p}")
        if self.t < 0:
            raise DomainError(f"Laplace argument must be >= 0, got {self.t}")
        if self.n < 0:
            raise DomainError(f"n must be nonnegative, got {self.n}")
        if not (0 < self.x <= 1):
            raise DomainError(f"initial state must lie in (0, 1], got {self.x}")
        if self.order is not None and self.order < self.n:
            raise DomainError("series truncation order must be >= n")


def ck(p: float, t: float, x: float, k: int,
       tolerances: Tolerances | None = None) -> float:
    """c_k(x) = p int_0^x e^{-tks} (1-ps)^{k-1} ds, for k >= 1.

    At t = 0 the closed form (1 - (1-px)^k) / k is returned; the quadrature
    against it doubles as a regression test for the integrator.
    """
    if k < 1:
        raise DomainError(f"coefficient index must be >= 1, got {k}")
    if not (0 < p <= 1):
        raise DomainError(f"p must lie in (0, 1], got {p}")
    if t < 0:
        raise DomainError(f"Laplace argument must be >= 0, got {t}")
    if not (0 <= x <= 1):
        raise DomainError(f"upper limit must lie in [0, 1], got {x}")
    if x == 0:
        return 0.0
    if t == 0:
        return (1.0 - (1.0 - p * x) ** k) / k
    tol = tolerances if tolerances is not None else Tolerances()

    def integrand(s: np.ndarray) -> np.ndarray:
        return p * np.exp(-t * k * s) * (1.0 - p * s) ** (k - 1)

    return adaptive_gauss_legendre(integrand, 0.0, x, tol.quad_rel_tol).value


def exp_series_coefficients(p: float, t: float, x: float, order: int,
                            tolerances: Tolerances | None = None) -> TruncatedSeries:
    """V_0..V_order with exp(sum_{k>=1} c_k(x) z^k) = sum_i V_i(x) z^i."""
    cs: list[float] = [0.0]
    cs.extend(ck(p, t, x, k, tolerances) for k in range(1, order + 1))
    return series_exp(TruncatedSeries(cs, order), order)


def laplace_partial_sum(q: LaplaceQuery) -> float:
    """W_n(x) by the series route; result lies in (0, 1].

    The stated sum is coefficient n of the product of the stay-decay geometric
    series with the exponential series, so it is computed as a Cauchy product.
    """
    order = q.order if q.order is not None else q.n
    v = exp_series_coefficients(q.p, q.t, q.x, order, q.tolerances)
    decay = (1.0 - q.p * q.x) * math.exp(-q.t * q.x)
    geometric = TruncatedSeries([decay**j for j in range(q.n + 1)], q.n)
    return float(cauchy_product(geometric, v, q.n).coefficient(q.n))


def laplace_oracle_grid(p: float, t: float, n: int,
                        nodes: int = 1025) -> tuple[np.ndarray, np.ndarray]:
    """W_0..W_n sampled on a uniform grid over [0, 1] via the integral recursion.

    Returns (xs, table) with table[k] the sampled W_k.  This route shares no
    machinery with the series route and serves as its independent oracle.
    """
    if nodes < MIN_GRID_NODES:
        raise DomainError(f"grid must have at least {MIN_GRID_NODES} nodes, got {nodes}")
    if not (0 < p <= 1):
        raise DomainError(f"p must lie in (0, 1], got {p}")
    if t < 0:
        raise DomainError(f"Laplace argument must be >= 0, got {t}")
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    xs = np.linspace(0.0, 1.0, nodes)
    dx = xs[1] - xs[0]
    damp = np.exp(-t * xs)
    stay = (1.0 - p * xs) * damp
    table = np.empty((n + 1, nodes))
    table[0] = 1.0
    for k in range(1, n + 1):
        prefix = cumulative_simpson_uniform(damp * table[k - 1], dx)
        table[k] = stay * table[k - 1] + p * prefix
    return xs, table


def gf_closed_form(p: float, t: float, x: float, z: float,
                   tolerances: Tolerances | None = None) -> float:
    """H(x, z) = sum_n W_n(x) z^n in closed form, for |z| < 1.

    The partial sums obey |sum_{n<=N} W_n z^n - H| <= |z|^{N+1} / (1 - |z|)
    because 0 < W_n <= 1; that tail bound is what the tests assert.
    """
    if not (0 < p <= 1):
        raise DomainError(f"p must lie in (0, 1], got {p}")
    if t < 0:
        raise DomainError(f"Laplace argument must be >= 0, got {t}")
    if not (0 < x <= 1):
        raise DomainError(f"x must lie in (0, 1], got {x}")
    if abs(z) >= 1:
        raise DomainError(f"|z| must be < 1, got {z}")
    if z == 0:
        return 1.0
    tol = tolerances if tolerances is not None else Tolerances()

    def integrand(s: np.ndarray) -> np.ndarray:
        damp = np.exp(-t * s)
        return p * z * damp / (1.0 - z * (1.0 - p * s) * damp)

    integral = adaptive_gauss_legendre(integrand, 0.0, x, tol.quad_rel_tol).value
    return math.exp(integral) / (1.0 - z * (1.0 - p * x) * math.exp(-t * x))

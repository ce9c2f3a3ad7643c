"""The jump-counting process N_n = xi_1 + ... + xi_n.

Three independent routes to its law are implemented and cross-checked:

* pgf_eval / pmf      -- the finite binomial sum
                         E[z^{N_n}] = sum_j C(n,j) binom(z-1,j) p^j,
                         with the PMF read off the z-expansion coefficients.
* pgf_oracle          -- exact bivariate-polynomial iteration of
                         G_n(x) = p z * int_0^x G_{n-1}(u) du + (1-px) G_{n-1}(x),
                         G_0 = 1; the z-coefficients of G_n(1) are the PMF.
* closed_form_gn      -- G_n(x) = sum_k C(n,k) binom(z-1,k) p^k x^k at a fixed z,
                         equal to the oracle polynomial coefficient-for-coefficient.

The PMF sum mixes large binomials with alternating-sign coefficients, so the
rational path is the ground truth; the float path is a fast approximation that
carries a cancellation warning for deep horizons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ModeError
from .params import Scalar, format_scalar
from .series import (
    BivarPoly,
    RationalPoly,
    falling_binomial_coeffs,
    falling_binomial_eval,
)

#: Horizon beyond which the float-only PMF path is flagged for cancellation risk.
FLOAT_PMF_WARN_HORIZON = 40


def _check_n(n: int) -> None:
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")


def _check_p(p: Scalar) -> None:
    if not (0 < p <= 1):
        raise DomainError(f"p must lie in (0, 1], got {p}")


@dataclass(frozen=True)
class PmfTable:
    """P(N_n = k) for k = 0..n.

    In rational mode the entries are Fractions that sum to exactly 1;
    nonnegativity is a genuine check because the defining sum alternates.
    """

    n: int
    probs: tuple[Scalar, ...]
    cancellation_warning: bool = field(default=False)

    def __post_init__(self) -> None:
        if len(self.probs) != self.n + 1:
            raise DomainError(
                f"a horizon-{self.n} table needs {self.n + 1} entries, got {len(self.probs)}"
            )

    @property
    def exact(self) -> bool:
        return all(isinstance(q, Fraction) for q in self.probs)

    def prob(self, k: int) -> Scalar:
        return self.probs[k] if 0 <= k <= self.n else Fraction(0)

    def mean(self) -> Scalar:
        return sum(k * q for k, q in enumerate(self.probs))

    def to_float(self) -> "PmfTable":
        return PmfTable(
            self.n, tuple(float(q) for q in self.probs), self.cancellation_warning
        )

    def rows(self) -> list[dict]:
        """JSON-ready rows: decimal string always, exact num/den when available."""
        out = []
        for k, q in enumerate(self.probs):
            row = {"k": k, "prob": format(float(q), ".17g")}
            if isinstance(q, Fraction):
                row["prob_exact"] = format_scalar(q)
            out.append(row)
        return out


def pgf_eval(p: Scalar, n: int, z: Scalar) -> Scalar:
    """The degree-n polynomial sum_j C(n,j) binom(z-1,j) p^j.

    For z in [-1, 1] this equals E[z^{N_n}]; the polynomial identity itself
    holds for every z and is evaluated as stated.
    """
    _check_p(p)
    _check_n(n)
    if isinstance(p, Fraction) and not isinstance(z, float):
        total: Scalar = Fraction(0)
        for j in range(n + 1):
            total += math.comb(n, j) * falling_binomial_eval(Fraction(z), j) * p**j
        return total
    return math.fsum(
        math.comb(n, j) * float(falling_binomial_eval(float(z), j)) * float(p) ** j
        for j in range(n + 1)
    )


def pmf(p: Scalar, n: int) -> PmfTable:
    """P(N_n = k) = sum_{j=k}^{n} C(n,j) p^j c_{j,k}.

    c_{j,k} is the z^k coefficient of binom(z-1, j).  With Fraction p the
    result is exact; with float p the same sum runs in compensated float
    arithmetic and the table is flagged beyond the cancellation horizon.
    """
    _check_p(p)
    _check_n(n)
    c = [falling_binomial_coeffs(j) for j in range(n + 1)]
    if isinstance(p, Fraction):
        probs = []
        for k in range(n + 1):
            acc = Fraction(0)
            for j in range(k, n + 1):
                acc += math.comb(n, j) * p**j * c[j].coefficient(k)
            probs.append(acc)
        return PmfTable(n, tuple(probs))
    probs_f = tuple(
        math.fsum(
            math.comb(n, j) * float(p) ** j * float(c[j].coefficient(k))
            for j in range(k, n + 1)
        )
        for k in range(n + 1)
    )
    return PmfTable(n, probs_f, cancellation_warning=n > FLOAT_PMF_WARN_HORIZON)


# ---------------------------------------------------------------------------
# Exact oracle: the bivariate-polynomial recursion for G_n(x) = E[z^{N_n}|X_0=x].
# ---------------------------------------------------------------------------

def _gn_step(g: BivarPoly, p: Fraction) -> BivarPoly:
    # G_n = p z int_0^x G_{n-1}(u) du + (1 - p x) G_{n-1}(x)
    integral_term = g.integrate_x().scale(p).shift_z()
    return integral_term + g - g.shift_x().scale(p)


def pgf_oracle(p: Scalar, n: int) -> BivarPoly:
    """G_n as an exact bivariate polynomial; requires rational mode.

    Iterates the integral recursion with Fraction coefficients; polynomial
    integration is exact, so the z-coefficients of G_n(1) are the PMF with no
    rounding anywhere.
    """
    _check_p(p)
    _check_n(n)
    if not isinstance(p, Fraction):
        raise ModeError("the polynomial oracle requires an exact rational p")
    g = BivarPoly((RationalPoly((Fraction(1),)),))
    for _ in range(n):
        g = _gn_step(g, p)
    return g


def oracle_pmf_tables(p: Scalar, n_max: int) -> list[PmfTable]:
    """PmfTables for all horizons 0..n_max from one pass of the exact recursion."""
    _check_p(p)
    _check_n(n_max)
    if not isinstance(p, Fraction):
        raise ModeError("the polynomial oracle requires an exact rational p")
    tables = []
    g = BivarPoly((RationalPoly((Fraction(1),)),))
    for n in range(n_max + 1):
        if n > 0:
            g = _gn_step(g, p)
        z_poly = g.eval_x(Fraction(1))
        probs = tuple(z_poly.coefficient(k) for k in range(n + 1))
        tables.append(PmfTable(n, probs))
    return tables


def closed_form_gn(p: Scalar, n: int, z: Scalar) -> RationalPoly:
    """G_n at a fixed z as a polynomial in x: sum_k C(n,k) binom(z-1,k) p^k x^k."""
    _check_p(p)
    _check_n(n)
    return RationalPoly(
        [math.comb(n, k) * falling_binomial_eval(z, k) * p**k for k in range(n + 1)]
    )


# ---------------------------------------------------------------------------
# Mean of the counting process, three ways.
# ---------------------------------------------------------------------------

def mean_count(p: Scalar, n: int) -> Scalar:
    """E[N_n] = sum_{i=1}^{n} (1 - (1-p)^i) / i.

    Telescopes E[N_i] - E[N_{i-1}] = p E[X_{i-1}] with the closed-form state
    mean; must agree exactly with the PMF mean and the signed-binomial form.
    """
    _check_p(p)
    _check_n(n)
    if isinstance(p, Fraction):
        return sum((1 - (1 - p) ** i) / Fraction(i) for i in range(1, n + 1))
    return math.fsum((1 - (1 - p) ** i) / i for i in range(1, n + 1))


def mean_count_signed_binomial(p: Scalar, n: int) -> Scalar:
    """E[N_n] = sum_{j=1}^{n} C(n,j) p^j (-1)^(j-1) / j (PGF derivative at z=1)."""
    _check_p(p)
    _check_n(n)
    if isinstance(p, Fraction):
        return sum(
            math.comb(n, j) * p**j * Fraction((-1) ** (j - 1), j)
            for j in range(1, n + 1)
        )
    return math.fsum(
        math.comb(n, j) * p**j * (-1) ** (j - 1) / j for j in range(1, n + 1)
    )

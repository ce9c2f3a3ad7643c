"""Closed-form laws of the chain state X_n.

The marginal law is mixed: an atom of mass (1-p)^n at 1 (no jump yet) plus a
continuous part with CDF 1-(1-px)^n on (0,1).  The joint survival function of
(X_1..X_n) factorizes over suffix maxima of the thresholds:

    P(X_1 > x_1, ..., X_n > x_n) = prod_i (1 - p * max(x_i, ..., x_n)).

Every function is generic over the scalar type: Fraction arguments give exact
results, floats give fast 64-bit evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, PreconditionError
from .params import Scalar


def _check_p(p: Scalar) -> None:
    if not (0 < p <= 1):
        raise DomainError(f"p must lie in (0, 1], got {p}")


def atom_at_one(p: Scalar, n: int) -> Scalar:
    """P(X_n = 1) = (1-p)^n, the probability that no jump has occurred."""
    _check_p(p)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return (1 - p) ** n


def marginal_cdf(p: Scalar, n: int, x: Scalar) -> Scalar:
    """P(X_n <= x): 1-(1-px)^n for x in (0,1), and exactly 1 at x = 1."""
    _check_p(p)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if not (0 < x <= 1):
        raise DomainError(f"threshold must lie in (0, 1], got {x}")
    if x == 1:
        return 1.0 if isinstance(p, float) or isinstance(x, float) else Fraction(1)
    return 1 - (1 - p * x) ** n


@dataclass(frozen=True)
class MarginalLaw:
    """The mixed law of X_n, exposed both as (continuous part, atom) and combined.

    Keeping the two parts separate avoids off-by-atom mistakes in empirical-CDF
    comparisons; the combined right-continuous CDF is what DKW gates consume.
    """

    p: Scalar
    n: int

    def __post_init__(self) -> None:
        _check_p(self.p)
        if self.n < 0:
            raise DomainError(f"n must be nonnegative, got {self.n}")

    def continuous_cdf(self, x: Scalar) -> Scalar:
        """The absolutely continuous part 1-(1-px)^n, valid on (0, 1]."""
        if not (0 < x <= 1):
            raise DomainError(f"threshold must lie in (0, 1], got {x}")
        return 1 - (1 - self.p * x) ** self.n

    @property
    def atom(self) -> Scalar:
        return atom_at_one(self.p, self.n)

    def cdf(self, x: Scalar) -> Scalar:
        """Combined right-continuous CDF (continuous part plus atom at 1)."""
        return marginal_cdf(self.p, self.n, x)

    def cdf_left_limit(self, x: Scalar) -> Scalar:
        """lim_{y -> x^-} F(y); differs from cdf(x) only at the atom x = 1."""
        if not (0 < x <= 1):
            raise DomainError(f"threshold must lie in (0, 1], got {x}")
        return 1 - (1 - self.p * x) ** self.n


def joint_survival(p: Scalar, thresholds: Sequence[Scalar]) -> Scalar:
    """P(X_1 > x_1, ..., X_n > x_n) for thresholds x_i in [0, 1).

    Equals the product over i of (1 - p * M_i) with M_i = max(x_i, ..., x_n);
    the suffix maxima are accumulated in one right-to-left pass.  Thresholds
    equal to 1 are rejected: the product form is stated only on [0, 1).
    """
    _check_p(p)
    if len(thresholds) < 1:
        raise PreconditionError("joint survival needs at least one threshold")
    for x in thresholds:
        if not (0 <= x < 1):
            raise DomainError(f"thresholds must lie in [0, 1), got {x}")
    result: Scalar = Fraction(1)
    suffix_max: Scalar = Fraction(0)
    for x in reversed(thresholds):
        if x > suffix_max:
            suffix_max = x
        result = result * (1 - p * suffix_max)
    return result


def moment(p: Scalar, n: int, m: int = 1) -> Scalar:
    """E[X_n^m] = m * sum_{j=0}^{n} C(n,j) (-p)^j / (m+j).

    The sum is the term-by-term integral of m x^(m-1) (1-px)^n over (0,1];
    alternating signs make the exact (Fraction) path the reference, while the
    float path uses compensated summation.
    """
    _check_p(p)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    if m < 1:
        raise DomainError(f"moment order must be >= 1, got {m}")
    if isinstance(p, Fraction):
        total = Fraction(0)
        for j in range(n + 1):
            total += Fraction(math.comb(n, j), m + j) * (-p) ** j
        return m * total
    return m * math.fsum(
        math.comb(n, j) * (-p) ** j / (m + j) for j in range(n + 1)
    )


def mean_state(p: Scalar, n: int) -> Scalar:
    """E[X_n] in the telescoped closed form (1 - (1-p)^(n+1)) / (p (n+1))."""
    _check_p(p)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    return (1 - (1 - p) ** (n + 1)) / (p * (n + 1))

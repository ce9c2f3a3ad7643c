"""Dense polynomial and truncated power-series arithmetic.

Three small value types power the exact analytic machinery:

* RationalPoly     -- univariate polynomial, dense coefficient vector; with
                      Fraction coefficients every operation is exact.
* BivarPoly        -- polynomial in x whose x-coefficients are RationalPoly
                      in a second variable z; supports the integrate-in-x step
                      of the counting-process recursion as a coefficient shift.
* TruncatedSeries  -- coefficient vector c_0..c_K; operations never invent
                      coefficients beyond the truncation order.

Everything is generic over the scalar type (Fraction or float); mixing the
two silently degrades to float, as ordinary Python arithmetic does.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .errors import PreconditionError
from .params import Scalar


def _trim(coeffs: Sequence[Scalar]) -> tuple[Scalar, ...]:
    """Drop trailing zeros; the zero polynomial has an empty coefficient tuple."""
    last = -1
    for i, c in enumerate(coeffs):
        if c != 0:
            last = i
    return tuple(coeffs[: last + 1])


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial a_0 + a_1 v + ... + a_d v^d as a trimmed coefficient tuple."""

    coeffs: tuple[Scalar, ...]

    def __init__(self, coeffs: Sequence[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim(tuple(coeffs)))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(
            [self.coefficient(k) - other.coefficient(k) for k in range(n)]
        )

    def __neg__(self) -> "RationalPoly":
        return RationalPoly([-c for c in self.coeffs])

    def scale(self, factor: Scalar) -> "RationalPoly":
        return RationalPoly([c * factor for c in self.coeffs])

    def shift(self, powers: int = 1) -> "RationalPoly":
        """Multiply by v**powers."""
        if not self.coeffs:
            return self
        return RationalPoly((Fraction(0),) * powers + self.coeffs)

    def __mul__(self, other: "RationalPoly") -> "RationalPoly":
        if not self.coeffs or not other.coeffs:
            return RationalPoly(())
        out: list[Scalar] = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    def __call__(self, v: Scalar) -> Scalar:
        acc: Scalar = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly([k * c for k, c in enumerate(self.coeffs)][1:])


def poly_definite_integral_0_to_x(poly: RationalPoly) -> RationalPoly:
    """Antiderivative with zero constant term: a_k v^k maps to a_k/(k+1) v^(k+1).

    Exact when the coefficients are Fractions.
    """
    out: list[Scalar] = [Fraction(0)]
    for k, c in enumerate(poly.coeffs):
        out.append(c / (k + 1))
    return RationalPoly(out)


@lru_cache(maxsize=None)
def falling_binomial_coeffs(j: int) -> RationalPoly:
    """Coefficient vector of binom(z-1, j) = (z-1)(z-2)...(z-j)/j! in z.

    Built by iterated multiplication by (z - i), then one division by j!.
    Always exact (Fraction coefficients); results are immutable and cached.
    """
    if j < 0:
        raise PreconditionError(f"order must be nonnegative, got {j}")
    prod = RationalPoly((Fraction(1),))
    for i in range(1, j + 1):
        prod = prod * RationalPoly((Fraction(-i), Fraction(1)))
    return prod.scale(Fraction(1, factorial(j)))


def falling_binomial_eval(z: Scalar, j: int) -> Scalar:
    """binom(z-1, j) evaluated directly as a product, without expansion."""
    if j < 0:
        raise PreconditionError(f"order must be nonnegative, got {j}")
    acc: Scalar = Fraction(1)
    for i in range(1, j + 1):
        acc = acc * (z - i)
    return acc / factorial(j)


# ---------------------------------------------------------------------------
# Bivariate polynomials: dense in x, each x-coefficient a polynomial in z.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BivarPoly:
    """Polynomial sum_k q_k(z) x^k with q_k stored as RationalPoly in z."""

    coeffs_x: tuple[RationalPoly, ...]

    def __init__(self, coeffs_x: Sequence[RationalPoly] = ()):
        cs = list(coeffs_x)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs_x", tuple(cs))

    @property
    def degree_x(self) -> int:
        return len(self.coeffs_x) - 1

    def coefficient_x(self, k: int) -> RationalPoly:
        return self.coeffs_x[k] if 0 <= k < len(self.coeffs_x) else RationalPoly(())

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        n = max(len(self.coeffs_x), len(other.coeffs_x))
        return BivarPoly(
            [self.coefficient_x(k) + other.coefficient_x(k) for k in range(n)]
        )

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        n = max(len(self.coeffs_x), len(other.coeffs_x))
        return BivarPoly(
            [self.coefficient_x(k) - other.coefficient_x(k) for k in range(n)]
        )

    def scale(self, factor: Scalar) -> "BivarPoly":
        return BivarPoly([q.scale(factor) for q in self.coeffs_x])

    def shift_x(self, powers: int = 1) -> "BivarPoly":
        """Multiply by x**powers."""
        if not self.coeffs_x:
            return self
        return BivarPoly((RationalPoly(()),) * powers + self.coeffs_x)

    def shift_z(self, powers: int = 1) -> "BivarPoly":
        """Multiply by z**powers."""
        return BivarPoly([q.shift(powers) for q in self.coeffs_x])

    def integrate_x(self) -> "BivarPoly":
        """Definite integral from 0 to x, as a coefficient shift in x."""
        out = [RationalPoly(())]
        for k, q in enumerate(self.coeffs_x):
            out.append(q.scale(Fraction(1, k + 1)))
        return BivarPoly(out)

    def eval_z(self, z: Scalar) -> RationalPoly:
        """Substitute a value for z, leaving a polynomial in x."""
        return RationalPoly([q(z) for q in self.coeffs_x])

    def eval_x(self, x: Scalar) -> RationalPoly:
        """Substitute a value for x, leaving a polynomial in z."""
        acc = RationalPoly(())
        for q in reversed(self.coeffs_x):
            acc = RationalPoly([c * x for c in acc.coeffs]) + q
        return acc


# ---------------------------------------------------------------------------
# Truncated power series.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_K of a power series truncated at order K.

    Operations on order-K series return order-K series; coefficients beyond K
    are discarded, never invented.
    """

    coeffs: tuple[Scalar, ...]
    order: int

    def __init__(self, coeffs: Sequence[Scalar], order: int | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise PreconditionError("truncation order must be nonnegative")
        if len(cs) < order + 1:
            cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs[: order + 1]))
        object.__setattr__(self, "order", order)

    def coefficient(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        k = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(k + 1)], k
        )


def cauchy_product(a: TruncatedSeries, b: TruncatedSeries, order: int) -> TruncatedSeries:
    """Coefficient n of the product is sum_{i=0}^{n} a_i b_{n-i}, for n <= order."""
    out: list[Scalar] = []
    for n in range(order + 1):
        acc: Scalar = Fraction(0)
        for i in range(n + 1):
            acc += a.coefficient(i) * b.coefficient(n - i)
        out.append(acc)
    return TruncatedSeries(out, order)


def series_exp(c: TruncatedSeries, order: int) -> TruncatedSeries:
    """exp of a truncated series with c_0 = 0, via the log-derivative recurrence.

    With V = exp(c): V_0 = 1 and  i * V_i = sum_{k=1}^{i} k * c_k * V_{i-k}.
    O(K^2) operations, exact for Fraction coefficients.
    """
    if c.coefficient(0) != 0:
        raise PreconditionError("series_exp requires a zero constant term")
    v: list[Scalar] = [Fraction(1)]
    for i in range(1, order + 1):
        acc: Scalar = Fraction(0)
        for k in range(1, i + 1):
            acc += k * c.coefficient(k) * v[i - k]
        v.append(acc / i)
    return TruncatedSeries(v, order)

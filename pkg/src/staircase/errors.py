"""Semantic exception hierarchy.

Public functions raise these instead of bare ValueError so callers (and the
CLI exit-code mapping) can distinguish contract violations from numerical
failures.
"""


class StaircaseError(Exception):
    """Base error for this package."""


class OutOfRangeError(StaircaseError, ValueError):
    """A model parameter lies outside its admissible range."""


class NonRationalError(StaircaseError, TypeError):
    """Exact-rational mode was handed a value that is not a ratio of integers."""


class DomainError(StaircaseError, ValueError):
    """An evaluation point lies outside the function's domain."""


class ModeError(StaircaseError, TypeError):
    """An operation requiring exact rational arithmetic was invoked with floats."""


class PreconditionError(StaircaseError, ValueError):
    """A structural precondition on the input data is violated."""


class QuadratureFailure(StaircaseError, ArithmeticError):
    """Adaptive quadrature exhausted its panel budget without converging."""


class SingularDomainError(StaircaseError, ValueError):
    """Evaluation requested at a point where the integrand is singular (p = 1, x = 1)."""


class InsufficientSampleError(StaircaseError, ValueError):
    """A statistical gate has too little data after pooling to be meaningful."""

"""Model parameters, numeric modes, and tolerance configuration.

The chain has a single parameter p in (0, 1]: from state x the process jumps
with probability p*x to a point uniform on (0, x), else stays.  Every analytic
routine in this package is written against a shared scalar abstraction:

* exact mode  -- p (and any other scalar input) is a `fractions.Fraction`;
  polynomial formulas then evaluate with no rounding at all.
* float mode  -- plain 64-bit floats throughout.

The abstraction is structural: functions are generic over the scalar type, so
exactness is preserved precisely when every input is exact.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Rational
from pathlib import Path as FilePath
from typing import Union

from .errors import OutOfRangeError, NonRationalError

Scalar = Union[Fraction, float]

#: Environment variable naming a JSON config file used as CLI defaults.
CONFIG_ENV_VAR = "STAIRCASE_CONFIG"


class NumericMode(Enum):
    EXACT_RATIONAL = "exact"
    FLOAT64 = "float"


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances shared by quadrature, cross-checks, and MC gates.

    quad_rel_tol   relative stopping tolerance for adaptive quadrature
    match_abs_tol  absolute agreement tolerance for float cross-checks
    mc_alpha       significance level for statistical gates
    """

    quad_rel_tol: float = 1e-10
    match_abs_tol: float = 1e-9
    mc_alpha: float = 0.01

    def __post_init__(self) -> None:
        if not (self.quad_rel_tol > 0 and self.match_abs_tol > 0):
            raise OutOfRangeError("tolerances must be strictly positive")
        if not (0 < self.mc_alpha < 0.5):
            raise OutOfRangeError(f"mc_alpha must lie in (0, 0.5), got {self.mc_alpha}")

    def to_dict(self) -> dict:
        return {
            "quad_rel_tol": self.quad_rel_tol,
            "match_abs_tol": self.match_abs_tol,
            "mc_alpha": self.mc_alpha,
        }


@dataclass(frozen=True)
class ModelParams:
    """Validated jump-rate coefficient p plus the active numeric mode.

    Invariant: 0 < p <= 1, so p*x is a valid probability for every state
    x in (0, 1].  In exact mode ``p`` is a Fraction and is stored exactly.
    """

    p: Scalar
    mode: NumericMode
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self) -> None:
        if self.mode is NumericMode.EXACT_RATIONAL and not isinstance(self.p, Rational):
            raise NonRationalError(
                f"exact mode requires an integer-ratio p, got {type(self.p).__name__}"
            )
        if not (0 < self.p <= 1):
            raise OutOfRangeError(f"p must lie in (0, 1], got {self.p}")

    @property
    def p_float(self) -> float:
        return float(self.p)

    def to_dict(self) -> dict:
        return {
            "p": scalar_to_json(self.p),
            "mode": self.mode.value,
            "tolerances": self.tolerances.to_dict(),
        }


def validate_params(
    p_num: int | None = None,
    p_den: int | None = None,
    p_float: float | None = None,
    tolerances: Tolerances | None = None,
) -> ModelParams:
    """Construct ModelParams from either an integer ratio or a float.

    Exactly one of (p_num, p_den) or p_float must be supplied.  The ratio form
    yields exact mode; the float form yields float mode.

    Raises OutOfRangeError if p is outside (0, 1], NonRationalError if the
    exact form is given non-integers, and ValueError on a zero denominator.
    """
    tol = tolerances if tolerances is not None else Tolerances()
    if p_float is None:
        if p_num is None or p_den is None:
            raise NonRationalError("exact mode needs both a numerator and a denominator")
        if not (isinstance(p_num, int) and isinstance(p_den, int)):
            raise NonRationalError("exact mode accepts integer ratios only")
        if p_den == 0:
            raise ValueError("denominator must be nonzero")
        return ModelParams(Fraction(p_num, p_den), NumericMode.EXACT_RATIONAL, tol)
    if p_num is not None or p_den is not None:
        raise ValueError("supply either a ratio or a float, not both")
    return ModelParams(float(p_float), NumericMode.FLOAT64, tol)


def parse_p(text: str) -> ModelParams:
    """Parse a CLI-style p literal: 'a/b' gives exact mode, anything else float."""
    text = text.strip()
    if "/" in text:
        num_s, den_s = text.split("/", 1)
        return validate_params(p_num=int(num_s), p_den=int(den_s))
    return validate_params(p_float=float(text))


# ---------------------------------------------------------------------------
# Scalar serialization: exact values as "num/den" strings, floats round-trip
# through a 17-significant-digit decimal form.
# ---------------------------------------------------------------------------

def scalar_to_json(value: Scalar) -> str | float:
    if isinstance(value, Rational) and not isinstance(value, float):
        f = Fraction(value)
        return f"{f.numerator}/{f.denominator}"
    return float(value)


def scalar_from_json(value: str | float | int) -> Scalar:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    return float(value)


def format_scalar(value: Scalar) -> str:
    """Decimal string with 17 significant digits (floats) or 'num/den' (exact)."""
    if isinstance(value, Rational) and not isinstance(value, float):
        f = Fraction(value)
        return f"{f.numerator}/{f.denominator}"
    return format(float(value), ".17g")


# ---------------------------------------------------------------------------
# JSON configuration file: p, mode, tolerances, master seed.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    """Full run configuration as carried by the JSON config file."""

    params: ModelParams
    master_seed: int = 0

    def to_dict(self) -> dict:
        d = self.params.to_dict()
        d["master_seed"] = self.master_seed
        return d


def config_from_dict(data: dict) -> RunConfig:
    mode = NumericMode(data.get("mode", "float"))
    p_raw = data["p"]
    if mode is NumericMode.EXACT_RATIONAL:
        if isinstance(p_raw, float):
            raise NonRationalError("exact mode config must carry p as a ratio string")
        p: Scalar = Fraction(p_raw)
    else:
        p = float(Fraction(p_raw)) if isinstance(p_raw, str) else float(p_raw)
    tol_d = data.get("tolerances", {})
    tol = Tolerances(**tol_d) if tol_d else Tolerances()
    return RunConfig(ModelParams(p, mode, tol), int(data.get("master_seed", 0)))


def load_config(path: str | FilePath | None = None) -> RunConfig | None:
    """Load a RunConfig from `path`, or from $STAIRCASE_CONFIG, or return None."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if path is None:
        return None
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def save_config(config: RunConfig, path: str | FilePath) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")

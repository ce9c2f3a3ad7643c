"""Seedable simulation of the staircase chain.

Dynamics from X_0 = 1: at each step, with probability p * X_{n-1} the chain
jumps to X_{n-1} * U with U uniform on (0, 1); otherwise it stays.  Each step
consumes exactly two uniforms (jump decision, landing level), which keeps the
kernel auditable and makes conditional tests trivial.

Reproducibility contract: the uniform stream of path i is a pure function of
(master_seed, path_index) -- a counter-based seed mix feeding a PCG64
generator -- so batches are order-independent and embarrassingly parallel.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import IO, Iterator

import numpy as np

from .errors import DomainError, OutOfRangeError
from .params import ModelParams

#: Recorded in verification reports so runs are reproducible per implementation.
RNG_DESCRIPTION = "numpy PCG64 seeded via SeedSequence(entropy=master_seed, spawn_key=(path_index,))"


@dataclass(frozen=True)
class SeedSpec:
    """Addresses one path's private uniform substream."""

    master_seed: int
    path_index: int = 0

    def __post_init__(self) -> None:
        if not (0 <= self.master_seed < 2**64):
            raise OutOfRangeError("master_seed must fit in an unsigned 64-bit integer")
        if self.path_index < 0:
            raise OutOfRangeError("path_index must be nonnegative")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(
            entropy=self.master_seed, spawn_key=(self.path_index,)
        )
        return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class Path:
    """One realized trajectory.

    states[0] = 1; states never increase and stay strictly positive; jump
    indicator i is 1 exactly when states[i] < states[i-1].  The two uniforms
    consumed by each step are kept for conditional-law audits.
    """

    states: tuple[float, ...]
    jumps: tuple[int, ...]
    uniforms: tuple[tuple[float, float], ...]

    @property
    def n(self) -> int:
        return len(self.jumps)

    def validate(self) -> None:
        """Raise DomainError on any violated path invariant."""
        if len(self.states) != self.n + 1 or len(self.uniforms) != self.n:
            raise DomainError("inconsistent path lengths")
        if self.states[0] != 1.0:
            raise DomainError("paths must start at 1")
        for i in range(1, len(self.states)):
            prev, cur = self.states[i - 1], self.states[i]
            if cur <= 0.0:
                raise DomainError(f"state {i} not strictly positive: {cur}")
            if cur > prev:
                raise DomainError(f"state increased at step {i}: {prev} -> {cur}")
            expected_jump = 1 if cur < prev else 0
            if self.jumps[i - 1] != expected_jump:
                raise DomainError(f"jump indicator {i} inconsistent with states")


def step(x: float, p: float, u_jump: float, u_level: float) -> float:
    """One transition: returns x * u_level if u_jump < p*x, else x.

    u_jump is a uniform draw in [0,1) and u_level one in (0,1); the result
    lies in (0, x].
    """
    if not (0 < x <= 1):
        raise DomainError(f"state must lie in (0, 1], got {x}")
    if not (0 < p <= 1):
        raise DomainError(f"p must lie in (0, 1], got {p}")
    if not (0 <= u_jump < 1) or not (0 < u_level < 1):
        raise DomainError("uniform draws outside their half-open/open intervals")
    if u_jump < p * x:
        return x * u_level
    return x


def _draw_step_uniforms(rng: np.random.Generator, n: int) -> list[float]:
    """2n uniforms in consumption order; landing draws of exactly 0 are redrawn."""
    draws = rng.random(2 * n).tolist()
    for i in range(1, 2 * n, 2):
        while draws[i] == 0.0:
            draws[i] = float(rng.random())
    return draws


def simulate_path(params: ModelParams, n: int, seed: SeedSpec) -> Path:
    """Generate one path of n steps; identical inputs give identical paths."""
    if n < 0:
        raise DomainError(f"horizon must be nonnegative, got {n}")
    p = params.p_float
    draws = _draw_step_uniforms(seed.generator(), n)
    states = [1.0]
    jumps: list[int] = []
    uniforms: list[tuple[float, float]] = []
    x = 1.0
    for i in range(n):
        u_jump, u_level = draws[2 * i], draws[2 * i + 1]
        uniforms.append((u_jump, u_level))
        nxt = step(x, p, u_jump, u_level)
        jumps.append(1 if nxt < x else 0)
        x = nxt
        states.append(x)
    return Path(tuple(states), tuple(jumps), tuple(uniforms))


def simulate_batch(params: ModelParams, n: int, m: int,
                   master_seed: int) -> Iterator[Path]:
    """m independent paths on disjoint substreams; path i depends only on
    (master_seed, i), so content is order-independent and reproducible."""
    if m < 1:
        raise DomainError(f"path count must be >= 1, got {m}")
    for i in range(m):
        yield simulate_path(params, n, SeedSpec(master_seed, i))


@dataclass(frozen=True)
class Ensemble:
    """Columnar batch: states[i, k] = X_k of path i, jumps[i, k-1] its indicator."""

    states: np.ndarray  # (m, n+1) float64
    jumps: np.ndarray   # (m, n) uint8

    @property
    def m(self) -> int:
        return self.states.shape[0]

    @property
    def n(self) -> int:
        return self.jumps.shape[1]

    @property
    def jump_counts(self) -> np.ndarray:
        return self.jumps.sum(axis=1, dtype=np.int64)

    @property
    def partial_sums(self) -> np.ndarray:
        """S_n = X_1 + ... + X_n per path."""
        return self.states[:, 1:].sum(axis=1)


def sample_ensemble(params: ModelParams, n: int, m: int,
                    master_seed: int) -> Ensemble:
    """Vectorized container over the same per-path substreams as simulate_batch.

    Bitwise-identical trajectories to the Path route, without the per-path
    object overhead; this is what the Monte Carlo gates consume.
    """
    if n < 0:
        raise DomainError(f"horizon must be nonnegative, got {n}")
    if m < 1:
        raise DomainError(f"path count must be >= 1, got {m}")
    p = params.p_float
    states = np.empty((m, n + 1))
    jumps = np.zeros((m, n), dtype=np.uint8)
    for i in range(m):
        rng = SeedSpec(master_seed, i).generator()
        draws = _draw_step_uniforms(rng, n)
        x = 1.0
        states[i, 0] = 1.0
        for k in range(n):
            u_jump, u_level = draws[2 * k], draws[2 * k + 1]
            if u_jump < p * x:
                x *= u_level
                jumps[i, k] = 1
            states[i, k + 1] = x
    return Ensemble(states, jumps)


# ---------------------------------------------------------------------------
# Path dumps.
# ---------------------------------------------------------------------------

def dump_paths_json(paths: Iterator[Path], out: IO[str]) -> None:
    """One JSON object per line: {index, states[], jumps[]}."""
    for idx, path in enumerate(paths):
        record = {"index": idx, "states": list(path.states), "jumps": list(path.jumps)}
        out.write(json.dumps(record) + "\n")


def dump_paths_csv(paths: Iterator[Path], out: IO[str]) -> None:
    """Long-format rows (path, step, state, jump); step 0 carries the start state."""
    writer = csv.writer(out)
    writer.writerow(["path", "step", "state", "jump"])
    for idx, path in enumerate(paths):
        writer.writerow([idx, 0, format(path.states[0], ".17g"), ""])
        for k in range(path.n):
            writer.writerow(
                [idx, k + 1, format(path.states[k + 1], ".17g"), path.jumps[k]]
            )

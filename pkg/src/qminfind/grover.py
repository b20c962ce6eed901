"""Exact amplitude evolution for search over a marked subset.

The state is a dense vector of N complex amplitudes over basis indices
0..N-1 (a single register; no tensor structure is needed because the
algorithms here only ever distinguish marked from unmarked indices).
One search iteration is the usual pair of reflections: flip the phase of
every marked amplitude, then invert every amplitude about the mean.

Starting from the uniform state with t of N indices marked, j iterations
rotate the marked-subset amplitude to sin((2j+1) * theta) with
theta = arcsin(sqrt(t/N)); ``success_probability`` is that closed form,
and the statevector path is checked against it in the test suite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "StateVector",
    "GroverAngle",
    "uniform_state",
    "grover_iterate",
    "success_probability",
    "measure",
    "marked_subset",
]

NORM_TOL = 1e-9

# Predicate over basis indices: maps an int array to a bool array.
MarkedPredicate = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class StateVector:
    """Normalized vector of complex amplitudes over basis indices.

    Treat instances as immutable: operations return new vectors and never
    modify their input, so states can be shared freely between concurrent
    workers (each worker still needs its own random stream to measure).
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1 or len(amps) < 1:
            raise ValueError("state needs at least one amplitude")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |a|^2 = {norm_sq!r}")

    def __len__(self) -> int:
        return len(self.amplitudes)

    def probabilities(self) -> np.ndarray:
        """Measurement distribution |a_i|^2."""
        return np.abs(self.amplitudes) ** 2

    def subset_probability(self, marked: MarkedPredicate) -> float:
        """Total probability mass on indices satisfying ``marked``."""
        mask = _evaluate(marked, len(self))
        return float(np.sum(np.abs(self.amplitudes[mask]) ** 2))


@dataclass(frozen=True)
class GroverAngle:
    """Rotation angle per iteration for t marked items out of n.

    theta = arcsin(sqrt(t/n)), so theta = 0 when nothing is marked and
    pi/2 when everything is.
    """

    theta: float
    n_total: int
    n_marked: int

    @classmethod
    def from_counts(cls, n: int, t: int) -> "GroverAngle":
        if n < 1:
            raise ValueError("n must be positive")
        if not 0 <= t <= n:
            raise ValueError(f"marked count t={t} outside [0, {n}]")
        return cls(theta=math.asin(math.sqrt(t / n)), n_total=n, n_marked=t)


def uniform_state(n: int) -> StateVector:
    """Equal superposition 1/sqrt(n) over n basis indices."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return StateVector(np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128))


def _evaluate(marked: MarkedPredicate, n: int) -> np.ndarray:
    mask = np.asarray(marked(np.arange(n)), dtype=bool)
    if mask.shape != (n,):
        raise ValueError(f"predicate returned shape {mask.shape}, expected ({n},)")
    return mask


def grover_iterate(state: StateVector, marked: MarkedPredicate) -> StateVector:
    """One iteration: phase-flip marked amplitudes, invert all about the mean.

    The predicate is queried afresh on every call (one oracle query per
    iteration); no marked-index list is materialized by the caller.
    """
    mask = _evaluate(marked, len(state))
    amps = state.amplitudes.copy()
    amps[mask] = -amps[mask]
    amps = 2.0 * amps.mean() - amps
    return StateVector(amps)


def success_probability(n: int, t: int, j: int) -> float:
    """Probability that measuring after j iterations from uniform hits a marked index.

    Closed form sin^2((2j+1) * arcsin(sqrt(t/n))).  Equals t/n at j=0 and
    stays exactly 0 / 1 at t=0 / t=n for every j.
    """
    if j < 0:
        raise ValueError("iteration count must be >= 0")
    angle = GroverAngle.from_counts(n, t)
    return math.sin((2 * j + 1) * angle.theta) ** 2


def measure(state: StateVector, rng) -> int:
    """Sample a basis index with probability |a_i|^2.

    Consumes one uniform draw from ``rng``.  The post-measurement state is
    never needed by callers, so none is returned.
    """
    probs = state.probabilities()
    cumulative = np.cumsum(probs)
    # Guard the top end against float round-off in the cumulative sum.
    idx = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    return min(idx, len(state) - 1)


def marked_subset(indices: Sequence[int]) -> MarkedPredicate:
    """Predicate marking exactly the given indices (test/demo helper)."""
    index_set = np.asarray(sorted(set(int(i) for i in indices)), dtype=np.int64)

    def predicate(idx: np.ndarray) -> np.ndarray:
        return np.isin(idx, index_set)

    return predicate

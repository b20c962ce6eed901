"""Search for a marked index when the number of marked items is unknown.

The strategy: run the amplitude-amplification iteration a random number of
times j, drawn uniformly below a cap m that grows geometrically after each
failed measurement (growth factor strictly between 1 and 4/3, capped at
sqrt(N)).  With t >= 1 marked items out of N this finds one of them, each
with equal probability, in an expected O(sqrt(N/t)) iterations; with t = 0
it would run forever, so a time-step budget bounds it from outside.

Two interchangeable backends produce identical outcome distributions:

* ``EXACT_STATEVECTOR`` evolves the dense amplitude vector and measures it;
  it sees the oracle only through its index predicate.
* ``ANALYTIC_SAMPLER`` declares success with the closed-form probability
  sin^2((2j+1) arcsin(sqrt(t/N))) and draws a uniform index within the
  success or failure class; it needs the classical marked count instead of
  the statevector and runs in O(1) per round, independent of N.

Each search consumes one random stream and one budget; concurrent searches
need disjoint streams.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .grover import grover_iterate, measure, success_probability, uniform_state

__all__ = [
    "Backend",
    "SearchParams",
    "SearchOutcome",
    "OutcomeDistribution",
    "FixedSetOracle",
    "exponential_search",
    "outcome_distribution",
]

DEFAULT_GROWTH = 8.0 / 7.0


class Backend(enum.Enum):
    """Which machinery realizes one search round."""

    EXACT_STATEVECTOR = "exact"
    ANALYTIC_SAMPLER = "analytic"

    @classmethod
    def parse(cls, text: str) -> "Backend":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown backend {text!r} (expected 'exact' or 'analytic')")


@dataclass(frozen=True)
class SearchParams:
    """Knobs of the iteration-count schedule.

    ``growth`` multiplies the cap m after each failed round and must stay
    strictly inside (1, 4/3) for the expected-iteration bound to hold; m
    starts at ``m_init`` and is clamped to sqrt(N).  The iteration count of
    a round is uniform on {0, ..., ceil(m)-1}.
    """

    growth: float = DEFAULT_GROWTH
    m_init: float = 1.0

    def __post_init__(self):
        if not 1.0 < self.growth < 4.0 / 3.0:
            raise ValueError(f"growth factor must lie strictly in (1, 4/3), got {self.growth}")
        if self.m_init < 1.0:
            raise ValueError("initial cap must be >= 1")


@dataclass(frozen=True)
class SearchOutcome:
    """Measured index plus the iteration cost actually paid.

    ``interrupted`` is False only when the search ended on its own terms,
    in which case the index is marked whenever any marked index exists.
    Each iteration counts as one time step.
    """

    index: int
    iterations_used: int
    interrupted: bool


@dataclass(frozen=True)
class FixedSetOracle:
    """Oracle over 0..n-1 with an explicit marked index set.

    Mirrors the oracle surface of the threshold oracle (predicate for the
    exact backend; count and class sampling for the analytic one), which
    lets experiments pin (n, t) cells directly.
    """

    n: int
    marked: tuple[int, ...]
    _marked_arr: np.ndarray | None = field(default=None, repr=False, compare=False)
    _unmarked_arr: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("oracle domain must have size >= 1")
        marked = tuple(sorted(set(int(i) for i in self.marked)))
        if marked and not (0 <= marked[0] and marked[-1] < self.n):
            raise ValueError("marked indices outside oracle domain")
        object.__setattr__(self, "marked", marked)
        marked_arr = np.asarray(marked, dtype=np.int64)
        unmarked_arr = np.setdiff1d(np.arange(self.n, dtype=np.int64), marked_arr)
        object.__setattr__(self, "_marked_arr", marked_arr)
        object.__setattr__(self, "_unmarked_arr", unmarked_arr)

    @property
    def marked_count(self) -> int:
        return len(self.marked)

    def is_marked(self, indices: np.ndarray) -> np.ndarray:
        return np.isin(np.asarray(indices), self._marked_arr)

    def sample_marked(self, rng) -> int:
        if not self.marked:
            raise ValueError("no marked indices")
        return int(self._marked_arr[rng.randrange(len(self.marked))])

    def sample_unmarked(self, rng) -> int:
        free = self.n - len(self.marked)
        if free == 0:
            raise ValueError("every index is marked")
        return int(self._unmarked_arr[rng.randrange(free)])


def _round_result(oracle, j: int, backend: Backend, rng) -> tuple[int, bool]:
    """Run one round of j iterations and measure; return (index, hit)."""
    if backend is Backend.EXACT_STATEVECTOR:
        state = uniform_state(oracle.n)
        for _ in range(j):
            state = grover_iterate(state, oracle.is_marked)
        idx = measure(state, rng)
        return idx, bool(oracle.is_marked(np.asarray([idx]))[0])
    t = oracle.marked_count
    n = oracle.n
    if t > 0 and rng.random() < success_probability(n, t, j):
        return oracle.sample_marked(rng), True
    if t == n:
        # Failure class is empty; cannot happen since success prob is 1.
        raise AssertionError("failure sampled with every index marked")
    return oracle.sample_unmarked(rng), False


def exponential_search(oracle, params: SearchParams, budget: float, backend: Backend, rng) -> SearchOutcome:
    """Hunt for a marked index within ``budget`` time steps.

    Rounds draw j uniformly below the growing cap; a draw the budget cannot
    cover is truncated to the affordable count, the (partially rotated)
    state is still measured, and the outcome comes back ``interrupted``.
    Running out of budget is a normal outcome, not an error; with nothing
    marked the search always ends that way, consuming the whole budget.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    n = oracle.n
    m_cap = math.sqrt(n)
    m = min(params.m_init, m_cap)
    remaining = budget
    used = 0
    while True:
        high = math.ceil(m)
        j = rng.randrange(high) if high > 1 else 0
        truncated = j > remaining
        if truncated:
            j = int(remaining)
        idx, hit = _round_result(oracle, j, backend, rng)
        remaining -= j
        used += j
        if hit:
            return SearchOutcome(index=idx, iterations_used=used, interrupted=truncated)
        if truncated or remaining <= 0:
            return SearchOutcome(index=idx, iterations_used=used, interrupted=True)
        if high == 1 and m >= m_cap:
            # Degenerate domain (sqrt(N) <= 1): every draw is j = 0, so the
            # budget can never be consumed; report the interruption now.
            return SearchOutcome(index=idx, iterations_used=used, interrupted=True)
        m = min(params.growth * m, m_cap)


@dataclass(frozen=True)
class OutcomeDistribution:
    """Law of one round at fixed iteration count j.

    Success happens with ``p_success``; conditioned on the class, the
    returned index is uniform, so each marked index carries probability
    ``p_success / t`` and each unmarked one ``(1 - p_success) / (n - t)``.
    """

    n: int
    t: int
    j: int
    p_success: float

    @property
    def marked_index_probability(self) -> float:
        if self.t == 0:
            return 0.0
        return self.p_success / self.t

    @property
    def unmarked_index_probability(self) -> float:
        if self.t == self.n:
            return 0.0
        return (1.0 - self.p_success) / (self.n - self.t)


def outcome_distribution(n: int, t: int, j: int) -> OutcomeDistribution:
    """Closed-form law of a single round: success mass and per-index weights."""
    return OutcomeDistribution(n=n, t=t, j=j, p_success=success_probability(n, t, j))

"""Closed forms for every cost bound the experiments compare against.

All quantities are in time steps (lg N per initialization, 1 per search
iteration) and use the real-valued binary logarithm, also for sizes that
are not powers of two.  The two headline expressions:

* expected cost of the uncapped run until the threshold holds the minimum:
  at most (45/4) sqrt(n) + (7/10) lg^2(n);
* the run cap, exactly twice that, 22.5 sqrt(n) + 1.4 lg^2(n), which by
  Markov's inequality leaves success probability at least 1/2.

The sweep helpers re-verify the two inequality steps behind the first
expression (an exact finite sum against its integral bound, and a
harmonic-number bound) over a range of sizes, in double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "expected_cost_bound",
    "timeout_cap",
    "search_iterations_bound",
    "harmonic_number",
    "expected_search_cost_bound",
    "sweep_search_cost_bound",
    "sweep_harmonic_bound",
    "BoundReport",
    "SweepResult",
]

EULER_GAMMA = 0.5772156649015329
DIRECT_SUM_LIMIT = 10**7


def _require_size(n: int, minimum: int) -> None:
    if n < minimum:
        raise ValueError(f"size must be >= {minimum}, got {n}")


def expected_cost_bound(n: int) -> float:
    """Upper bound on the uncapped run's expected total time, in steps.

    (45/4) sqrt(n) + (7/10) lg^2(n); e.g. 430 at n=1024.
    """
    _require_size(n, 2)
    return 11.25 * math.sqrt(n) + 0.7 * math.log2(n) ** 2


def timeout_cap(n: int) -> float:
    """Default run cap 22.5 sqrt(n) + 1.4 lg^2(n); twice ``expected_cost_bound``."""
    _require_size(n, 2)
    return 22.5 * math.sqrt(n) + 1.4 * math.log2(n) ** 2


def search_iterations_bound(n: int, t: int) -> float:
    """Expected-iteration bound 4.5 sqrt(n/t) for one search with t marked items.

    With nothing marked the search never ends on its own; that case is
    signaled as ``inf`` rather than a number.
    """
    _require_size(n, 1)
    if t < 0 or t > n:
        raise ValueError(f"marked count t={t} outside [0, {n}]")
    if t == 0:
        return math.inf
    return 4.5 * math.sqrt(n / t)


def _harmonic_direct(n: int) -> float:
    total = 0.0
    chunk = 10**6
    for start in range(1, n + 1, chunk):
        stop = min(n, start + chunk - 1)
        total += float(np.sum(1.0 / np.arange(start, stop + 1, dtype=np.float64)))
    return total


def _harmonic_asymptotic(n: int) -> float:
    inv = 1.0 / n
    return (
        math.log(n)
        + EULER_GAMMA
        + inv / 2.0
        - inv * inv / 12.0
        + inv**4 / 120.0
    )


def harmonic_number(n: int) -> float:
    """H_n = sum of 1/k for k=1..n.

    Direct summation up to 10^7; the Euler-Maclaurin expansion beyond,
    accurate to well under 1e-12 there.
    """
    _require_size(n, 1)
    if n <= DIRECT_SUM_LIMIT:
        return _harmonic_direct(n)
    return _harmonic_asymptotic(n)


def expected_search_cost_bound(n: int) -> float:
    """Exact finite sum bounding the expected search-iteration total.

    4.5 sqrt(n) * sum_{r=1}^{n-1} 1 / ((r+1) sqrt(r)): the per-threshold
    iteration bound weighted by the 1/rank selection probabilities.  The
    integral comparison keeps it below (45/4) sqrt(n) for every n.
    """
    _require_size(n, 2)
    r = np.arange(1, n, dtype=np.float64)
    return 4.5 * math.sqrt(n) * float(np.sum(1.0 / ((r + 1.0) * np.sqrt(r))))


@dataclass(frozen=True)
class SweepResult:
    """Worst case found while checking an inequality over n = 2..n_max."""

    ok: bool
    n_max: int
    worst_n: int
    worst_ratio: float  # max of lhs/rhs; <= 1 when the inequality holds


def sweep_search_cost_bound(n_max: int) -> SweepResult:
    """Check expected_search_cost_bound(n) <= (45/4) sqrt(n) for n = 2..n_max."""
    _require_size(n_max, 2)
    r = np.arange(1, n_max, dtype=np.float64)
    partial = np.cumsum(1.0 / ((r + 1.0) * np.sqrt(r)))
    # Entry k of ``partial`` is the sum for n = k + 2; sqrt(n) cancels in the ratio.
    ratios = 4.5 * partial / 11.25
    worst = int(np.argmax(ratios))
    worst_ratio = float(ratios[worst])
    return SweepResult(ok=worst_ratio <= 1.0, n_max=n_max, worst_n=worst + 2, worst_ratio=worst_ratio)


def sweep_harmonic_bound(n_max: int) -> SweepResult:
    """Check (H_n - 1) lg n <= 0.7 lg^2 n for n = 2..n_max."""
    _require_size(n_max, 2)
    harmonic = np.cumsum(1.0 / np.arange(1, n_max + 1, dtype=np.float64))
    n = np.arange(2, n_max + 1, dtype=np.float64)
    lhs = (harmonic[1:] - 1.0) * np.log2(n)
    rhs = 0.7 * np.log2(n) ** 2
    ratios = lhs / rhs
    worst = int(np.argmax(ratios))
    worst_ratio = float(ratios[worst])
    return SweepResult(ok=worst_ratio <= 1.0, n_max=n_max, worst_n=worst + 2, worst_ratio=worst_ratio)


@dataclass(frozen=True)
class BoundReport:
    """Every bound evaluated at one size, ready for serialization."""

    n: int
    expected_cost_bound: float
    timeout_cap: float
    harmonic: float
    search_bounds: dict[int, float]

    @classmethod
    def for_size(cls, n: int, t_grid: tuple[int, ...] | None = None) -> "BoundReport":
        _require_size(n, 2)
        if t_grid is None:
            t_grid = tuple(sorted({1, 2, max(1, n // 16), max(1, n // 4), n}))
        return cls(
            n=n,
            expected_cost_bound=expected_cost_bound(n),
            timeout_cap=timeout_cap(n),
            harmonic=harmonic_number(n),
            search_bounds={t: search_iterations_bound(n, t) for t in t_grid},
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "expected_cost_bound": self.expected_cost_bound,
            "timeout_cap": self.timeout_cap,
            "harmonic": self.harmonic,
            "search_iteration_bounds": {str(t): v for t, v in sorted(self.search_bounds.items())},
        }

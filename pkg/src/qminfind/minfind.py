"""Threshold-descent minimum finding around the exponential search.

One run: pick a threshold index uniformly at random, then repeatedly
initialize (lg N time steps), search for an index holding a strictly
smaller value (one time step per iteration), observe, and move the
threshold to the observed index when it improves.  A run with the default
time cap of 22.5*sqrt(N) + 1.4*lg^2(N) steps returns an index of the
minimum value with probability at least 1/2; the uncapped variant runs
until the threshold first holds the minimum and exists for cost and
rank-selection analysis (the stopping check compares against the known
table minimum, which is the analyst's clock, not something the algorithm
itself could do).

Classical bookkeeping (choosing the start index, comparisons, the final
return) is free; only initializations and search iterations are charged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounds import timeout_cap
from .qsearch import Backend, SearchParams, exponential_search
from .table import Table, ThresholdOracle

__all__ = [
    "CostLedger",
    "ThresholdState",
    "RunResult",
    "find_minimum",
    "find_minimum_infinite",
    "find_minimum_boosted",
    "INIT_CHARGE_POLICY",
]

# A final pass interrupted before any search iteration still pays for the
# initialization it performed; passes never start once the cap is exceeded.
INIT_CHARGE_POLICY = "charge-init-when-performed"


@dataclass
class CostLedger:
    """Time-step account: lg N per initialization, 1 per search iteration.

    ``spent`` can end up above ``cap`` by at most one initialization charge,
    because the cap is only noticed once crossed; search iterations
    themselves are truncated at the cap.
    """

    cap: float
    spent: float = 0.0
    init_charges: int = 0
    iteration_charges: int = 0

    def charge_init(self, n: int) -> None:
        self.spent += math.log2(n)
        self.init_charges += 1

    def charge_iterations(self, count: int) -> None:
        self.spent += count
        self.iteration_charges += count

    @property
    def remaining(self) -> float:
        return max(0.0, self.cap - self.spent)

    @property
    def exceeded(self) -> bool:
        return self.spent > self.cap


@dataclass
class ThresholdState:
    """Current threshold index and, optionally, every accepted move.

    Updates are accepted only on strict improvement, so recorded threshold
    values are strictly decreasing.
    """

    y: int
    history: list[tuple[float, int]] | None = None

    def accept(self, y_new: int, time: float) -> None:
        self.y = y_new
        if self.history is not None:
            self.history.append((time, y_new))


@dataclass(frozen=True)
class RunResult:
    """Outcome of one algorithm run.

    ``first_hit_time`` is the time step at which the threshold first held a
    minimal value (None when unknown because history was off, or when the
    capped run never got there).  ``total_spent`` counts lg N per pass plus
    all search iterations.
    """

    returned_index: int
    returned_is_minimum: bool
    first_hit_time: float | None
    total_spent: float
    loop_passes: int
    history: list[tuple[float, int]] | None = field(default=None, compare=False)


def _immediate_result(table: Table, y: int, record_history: bool, known_hit: bool) -> RunResult:
    is_min = table.is_minimum(y)
    history = [(0.0, y)] if record_history else None
    first_hit = 0.0 if (record_history or known_hit) and is_min else None
    return RunResult(
        returned_index=y,
        returned_is_minimum=is_min,
        first_hit_time=first_hit,
        total_spent=0.0,
        loop_passes=0,
        history=history,
    )


def find_minimum(
    table: Table,
    backend: Backend = Backend.ANALYTIC_SAMPLER,
    params: SearchParams | None = None,
    timeout_override: float | None = None,
    rng=None,
    record_history: bool = False,
) -> RunResult:
    """One capped run; the default cap is 22.5*sqrt(N) + 1.4*lg^2(N) steps.

    A zero (or negative) cap returns the uniformly random start index
    unexamined, which makes a handy 1/N null baseline.
    """
    params = params or SearchParams()
    n = len(table)
    if n == 1:
        return _immediate_result(table, 0, record_history, known_hit=True)
    cap = timeout_cap(n) if timeout_override is None else float(timeout_override)
    y0 = rng.randrange(n)
    if cap <= 0.0:
        return _immediate_result(table, y0, record_history, known_hit=False)

    state = ThresholdState(y=y0, history=[(0.0, y0)] if record_history else None)
    ledger = CostLedger(cap=cap)
    first_hit: float | None = None
    if record_history and table.is_minimum(y0):
        first_hit = 0.0
    while True:
        ledger.charge_init(n)
        oracle = ThresholdOracle(table, state.y)
        outcome = exponential_search(oracle, params, ledger.remaining, backend, rng)
        ledger.charge_iterations(outcome.iterations_used)
        observed = outcome.index
        if table.values[observed] < table.values[state.y]:
            state.accept(observed, ledger.spent)
            if record_history and first_hit is None and table.is_minimum(observed):
                first_hit = ledger.spent
        if outcome.interrupted or ledger.exceeded:
            break
    return RunResult(
        returned_index=state.y,
        returned_is_minimum=table.is_minimum(state.y),
        first_hit_time=first_hit,
        total_spent=ledger.spent,
        loop_passes=ledger.init_charges,
        history=state.history,
    )


def find_minimum_infinite(
    table: Table,
    backend: Backend = Backend.ANALYTIC_SAMPLER,
    params: SearchParams | None = None,
    rng=None,
) -> RunResult:
    """Uncapped run, stopped the moment the threshold holds a minimal value.

    Always records the threshold history; ``first_hit_time`` equals
    ``total_spent`` by construction.  Termination is sure because every
    accepted move strictly lowers the threshold value.
    """
    params = params or SearchParams()
    n = len(table)
    if n == 1:
        return _immediate_result(table, 0, record_history=True, known_hit=True)
    y0 = rng.randrange(n)
    state = ThresholdState(y=y0, history=[(0.0, y0)])
    ledger = CostLedger(cap=math.inf)
    while not table.is_minimum(state.y):
        ledger.charge_init(n)
        oracle = ThresholdOracle(table, state.y)
        outcome = exponential_search(oracle, params, math.inf, backend, rng)
        ledger.charge_iterations(outcome.iterations_used)
        observed = outcome.index
        if table.values[observed] < table.values[state.y]:
            state.accept(observed, ledger.spent)
    return RunResult(
        returned_index=state.y,
        returned_is_minimum=True,
        first_hit_time=ledger.spent,
        total_spent=ledger.spent,
        loop_passes=ledger.init_charges,
        history=state.history,
    )


def find_minimum_boosted(
    table: Table,
    backend: Backend = Backend.ANALYTIC_SAMPLER,
    params: SearchParams | None = None,
    c: int = 1,
    rng=None,
    strategy: str = "repeat",
) -> RunResult:
    """Push the success probability to at least 1 - 1/2^c.

    strategy="repeat" runs the capped algorithm c times and keeps the
    outcome with the smallest value; strategy="extend" performs a single
    run whose cap is c times the default (it reuses what earlier passes
    already learned, so it can only do better).
    """
    if c < 1:
        raise ValueError("boost count must be >= 1")
    params = params or SearchParams()
    n = len(table)
    if strategy == "extend":
        cap = None if n == 1 else c * timeout_cap(n)
        return find_minimum(table, backend, params, timeout_override=cap, rng=rng)
    if strategy != "repeat":
        raise ValueError(f"unknown boost strategy {strategy!r}")
    best: RunResult | None = None
    total_spent = 0.0
    total_passes = 0
    for _ in range(c):
        result = find_minimum(table, backend, params, rng=rng)
        total_spent += result.total_spent
        total_passes += result.loop_passes
        if best is None or table.values[result.returned_index] < table.values[best.returned_index]:
            best = result
    return RunResult(
        returned_index=best.returned_index,
        returned_is_minimum=best.returned_is_minimum,
        first_hit_time=None,
        total_spent=total_spent,
        loop_passes=total_passes,
        history=None,
    )

"""Input tables, the threshold-comparison oracle, and rank utilities.

A table is an array of 64-bit signed integers; the algorithms only ever
compare entries, so the integer carrier sidesteps any floating-point
comparison ambiguity.  The oracle for threshold index y marks exactly the
entries strictly smaller than T[y]; y itself is never marked, which makes
the all-duplicates table have zero marked entries.

Tables are immutable after construction and oracles are read-only views,
so both are safe to share across concurrent runs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "Table",
    "ThresholdOracle",
    "marked_count",
    "rank_of",
    "generate_table",
    "read_table",
    "write_table",
]


@dataclass(frozen=True)
class Table:
    """Array of orderable values, with metadata on guaranteed distinctness."""

    values: np.ndarray
    distinct: bool = False
    _order: np.ndarray | None = field(default=None, repr=False, compare=False)
    _ranks: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.int64, copy=True)
        if vals.ndim != 1 or len(vals) < 1:
            raise ValueError("table needs at least one value")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.distinct and len(np.unique(vals)) != len(vals):
            raise ValueError("table flagged distinct but holds duplicate values")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def order(self) -> np.ndarray:
        """Indices sorted by value (stable), computed once on first use."""
        if self._order is None:
            order = np.argsort(self.values, kind="stable")
            order.setflags(write=False)
            object.__setattr__(self, "_order", order)
        return self._order

    @property
    def ranks(self) -> np.ndarray:
        """1-based rank of every index; ties share the rank of their value."""
        if self._ranks is None:
            sorted_vals = self.values[self.order]
            ranks = np.searchsorted(sorted_vals, self.values, side="left") + 1
            ranks.setflags(write=False)
            object.__setattr__(self, "_ranks", ranks)
        return self._ranks

    def minimum(self) -> int:
        return int(self.values.min())

    def is_minimum(self, i: int) -> bool:
        """True when index i holds a minimal value (ties all count)."""
        return int(self.values[i]) == self.minimum()


@dataclass(frozen=True)
class ThresholdOracle:
    """Marks every index j with T[j] < T[y], strictly.

    Also serves both search backends: ``is_marked`` is the per-index
    predicate the statevector path queries, while ``marked_count`` and the
    ``sample_*`` methods give the analytic sampler its classical view
    (the count of marked items and uniform draws within each class).
    """

    table: Table
    threshold_index: int

    def __post_init__(self):
        if not 0 <= self.threshold_index < len(self.table):
            raise IndexError(
                f"threshold index {self.threshold_index} outside table of size {len(self.table)}"
            )

    @property
    def n(self) -> int:
        return len(self.table)

    @property
    def marked_count(self) -> int:
        """Number of marked entries; equals rank(y) - 1."""
        return int(self.table.ranks[self.threshold_index]) - 1

    def is_marked(self, indices: np.ndarray) -> np.ndarray:
        threshold_value = self.table.values[self.threshold_index]
        return self.table.values[np.asarray(indices)] < threshold_value

    def sample_marked(self, rng) -> int:
        """Uniform random marked index; requires at least one marked entry."""
        t = self.marked_count
        if t == 0:
            raise ValueError("no marked entries below the threshold")
        return int(self.table.order[rng.randrange(t)])

    def sample_unmarked(self, rng) -> int:
        """Uniform random unmarked index (the threshold index is one of them)."""
        t = self.marked_count
        return int(self.table.order[rng.randrange(t, self.n)])


def marked_count(oracle: ThresholdOracle) -> int:
    """Count of entries strictly below the oracle's threshold value."""
    return oracle.marked_count


def rank_of(table: Table, i: int) -> int:
    """1-based rank of index i: 1 + number of strictly smaller values."""
    if not 0 <= i < len(table):
        raise IndexError(f"index {i} outside table of size {len(table)}")
    return int(table.ranks[i])


def generate_table(n: int, mode: str, rng, k: int | None = None) -> Table:
    """Draw a fresh random table.

    mode="distinct": uniformly random permutation of 0..n-1 (Fisher-Yates
    on the caller's stream, so results are reproducible from the seed).
    mode="dup": each entry drawn uniformly from the k values 0..k-1.
    """
    if n < 1:
        raise ValueError("table size must be >= 1")
    if mode == "distinct":
        values = list(range(n))
        rng.shuffle(values)
        return Table(np.asarray(values, dtype=np.int64), distinct=True)
    if mode == "dup":
        if k is None or not 1 <= k <= n:
            raise ValueError(f"duplicates mode needs 1 <= k <= {n}, got {k}")
        values = [rng.randrange(k) for _ in range(n)]
        return Table(np.asarray(values, dtype=np.int64), distinct=False)
    raise ValueError(f"unknown table mode {mode!r}")


def read_table(path: str | Path) -> Table:
    """Load a table from newline-delimited decimal integers."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                values.append(int(text, 10))
            except ValueError as exc:
                raise ValueError(f"{path}:{line_no}: not a decimal integer: {text!r}") from exc
    if not values:
        raise ValueError(f"{path}: no values")
    arr = np.asarray(values, dtype=np.int64)
    return Table(arr, distinct=len(np.unique(arr)) == len(arr))


def write_table(table: Table, path: str | Path) -> None:
    """Write one decimal value per line (the format ``read_table`` accepts)."""
    with open(path, "w", encoding="utf-8") as fh:
        for value in table.values:
            fh.write(f"{int(value)}\n")

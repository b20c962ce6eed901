"""Monte Carlo experiment driver.

Each experiment turns a claim about the algorithm into a seeded batch of
runs plus a statistical verdict:

* ``lemma1``        rank-selection frequencies of the uncapped run vs 1/r;
* ``success``       capped-run (or boosted) success fraction vs its floor;
* ``expected-cost`` uncapped-run cost vs its closed-form bound;
* ``equivalence``   exact statevector backend vs the analytic sampler;
* ``bounds``        closed-form identities and inequality sweeps;
* ``single-run``    raw per-run records, no verdict.

Runs are embarrassingly parallel: run i draws its private stream from
(seed, experiment, i), workers only ever fold integer counts or
concatenate per-run records in run order, so a report is byte-identical
for any worker count.  Reports deliberately contain no wall-clock data;
timing goes to stderr in the CLI layer.

Verdict conventions: equality checks pass within max(0.01, 3 standard
errors), one-sided bound checks require estimate + 3 SE below the bound,
distribution comparisons use a chi-square threshold of p > 0.001.
"""
from __future__ import annotations

import csv
import functools
import io
import json
import math
import subprocess
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import ndtri
from scipy.stats import chi2 as chi2_dist

from . import __version__
from .bounds import (
    BoundReport,
    expected_cost_bound,
    expected_search_cost_bound,
    sweep_harmonic_bound,
    sweep_search_cost_bound,
    timeout_cap,
)
from .grover import grover_iterate, measure, success_probability, uniform_state
from .minfind import INIT_CHARGE_POLICY, find_minimum, find_minimum_boosted, find_minimum_infinite
from .qsearch import Backend, FixedSetOracle, SearchParams, exponential_search
from .seeding import derive_stream
from .table import Table, generate_table, read_table

__all__ = [
    "ExperimentConfig",
    "Report",
    "run_experiment",
    "estimate_rank_selection",
    "estimate_success_rate",
    "estimate_expected_cost",
    "backend_equivalence",
    "bounds_report",
    "single_run_records",
    "closed_form_deviation",
    "wilson_interval",
    "two_sample_chisquare",
    "uniform_chisquare",
    "build_identifier",
]

EXPERIMENTS = ("lemma1", "success", "expected-cost", "equivalence", "bounds", "single-run")

Z99 = float(ndtri(0.995))  # two-sided 99% normal quantile
CHI2_ALPHA = 1e-3
EXACT_BACKEND_MAX_N = 2**14
EQUIVALENCE_MAX_N = 2**10
# Rank rows below this many (run, index) pairs carry no 0.01-scale
# information and are reported but not asserted.
MIN_ASSERT_PAIRS = 100


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment invocation depends on."""

    experiment: str
    n: int = 64
    runs: int = 10_000
    seed: int = 0
    backend: Backend = Backend.ANALYTIC_SAMPLER
    growth: float = SearchParams().growth
    mode: str = "distinct"
    dup_k: int | None = None
    boost: int | None = None
    boost_strategy: str = "repeat"
    timeout: float | None = None
    max_rank: int = 10
    j_max: int = 12
    sweep_max: int = 10**6
    workers: int = 1
    table_path: str | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        SearchParams(growth=self.growth)  # validates the growth factor
        if self.mode not in ("distinct", "dup"):
            raise ValueError(f"unknown table mode {self.mode!r}")
        if self.mode == "dup" and (self.dup_k is None or not 1 <= self.dup_k <= self.n):
            raise ValueError(f"duplicates mode needs 1 <= k <= {self.n}, got {self.dup_k}")
        if self.boost is not None and self.boost < 1:
            raise ValueError("boost count must be >= 1")
        if self.boost_strategy not in ("repeat", "extend"):
            raise ValueError(f"unknown boost strategy {self.boost_strategy!r}")
        if self.timeout is not None and self.timeout < 0:
            raise ValueError("timeout must be >= 0")
        if self.backend is Backend.EXACT_STATEVECTOR and self.n > EXACT_BACKEND_MAX_N:
            raise ValueError(f"exact backend is limited to n <= {EXACT_BACKEND_MAX_N}")
        if self.experiment == "equivalence" and self.n > EQUIVALENCE_MAX_N:
            raise ValueError(f"equivalence runs the exact backend; n <= {EQUIVALENCE_MAX_N}")
        if self.experiment in ("expected-cost", "bounds") and self.n < 2:
            raise ValueError(f"{self.experiment} experiment needs n >= 2")

    @property
    def mode_label(self) -> str:
        return "distinct" if self.mode == "distinct" else f"dup:{self.dup_k}"

    def search_params(self) -> SearchParams:
        return SearchParams(growth=self.growth)

    def to_dict(self) -> dict:
        # Worker count is a throughput knob with no effect on results, so
        # it stays out of the report body (reports must be byte-identical
        # across worker counts).
        return {
            "experiment": self.experiment,
            "n": self.n,
            "runs": self.runs,
            "seed": self.seed,
            "backend": self.backend.value,
            "lambda": self.growth,
            "mode": self.mode_label,
            "boost": self.boost,
            "boost_strategy": self.boost_strategy if self.boost else None,
            "timeout": self.timeout,
            "max_rank": self.max_rank,
            "j_max": self.j_max,
            "sweep_max": self.sweep_max,
            "table": self.table_path,
            "init_charge_policy": INIT_CHARGE_POLICY,
        }


@dataclass
class Report:
    """Uniform result container: scalar summary plus tabular rows.

    JSON carries the whole object; CSV carries the rows (header included),
    which for ``single-run`` are exactly the per-run records.
    """

    experiment: str
    config: dict
    build: str
    passed: bool
    summary: dict
    rows: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "build": self.build,
            "config": self.config,
            "passed": self.passed,
            "summary": self.summary,
            "rows": self.rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        rows = self.rows or [self.summary]
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
        return buffer.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")


@functools.lru_cache(maxsize=1)
def build_identifier() -> str:
    """Package version, with the git revision when running from a checkout."""
    base = f"qminfind {__version__}"
    try:
        result = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=10,
        )
    except (OSError, subprocess.TimeoutExpired):
        return base
    if result.returncode != 0:
        return base
    return f"{base} ({result.stdout.strip()})"


# ---------------------------------------------------------------------------
# statistics helpers


def wilson_interval(successes: int, trials: int, z: float = Z99) -> tuple[float, float]:
    """Wilson score confidence interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z2 / (4 * trials * trials)) / denom
    # The edges are exact (the interval closes at the observed boundary);
    # computing them through the general formula loses an ulp.
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


def mean_and_stderr(values: np.ndarray) -> tuple[float, float]:
    values = np.asarray(values, dtype=np.float64)
    mean = float(np.mean(values))
    if len(values) < 2:
        return mean, 0.0
    return mean, float(np.std(values, ddof=1) / math.sqrt(len(values)))


def proportion_stderr(p: float, trials: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / trials)


def two_sample_chisquare(
    counts_a: Counter, counts_b: Counter, min_pooled: int = 10
) -> tuple[float, float, int]:
    """Chi-square homogeneity test for two category-count samples.

    Categories are pooled in sorted-key order until each bin holds at least
    ``min_pooled`` observations combined.  Returns (statistic, p, dof);
    fewer than two usable bins yields the degenerate (0, 1, 0).
    """
    total_a = sum(counts_a.values())
    total_b = sum(counts_b.values())
    if total_a == 0 or total_b == 0:
        raise ValueError("both samples need at least one observation")
    bins: list[tuple[int, int]] = []
    acc_a = acc_b = 0
    for key in sorted(set(counts_a) | set(counts_b)):
        acc_a += counts_a.get(key, 0)
        acc_b += counts_b.get(key, 0)
        if acc_a + acc_b >= min_pooled:
            bins.append((acc_a, acc_b))
            acc_a = acc_b = 0
    if acc_a + acc_b > 0:
        if bins:
            last_a, last_b = bins.pop()
            bins.append((last_a + acc_a, last_b + acc_b))
        else:
            bins.append((acc_a, acc_b))
    if len(bins) < 2:
        return 0.0, 1.0, 0
    ratio_ab = math.sqrt(total_b / total_a)
    ratio_ba = math.sqrt(total_a / total_b)
    stat = sum((a * ratio_ab - b * ratio_ba) ** 2 / (a + b) for a, b in bins)
    dof = len(bins) - 1
    return float(stat), float(chi2_dist.sf(stat, dof)), dof


def uniform_chisquare(counts: np.ndarray) -> tuple[float, float, int]:
    """Goodness-of-fit of integer counts against the uniform distribution.

    Skipped (p = 1) when there are fewer than two categories or the
    expected count per category is below 5.
    """
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    k = len(counts)
    if k < 2 or total / k < 5:
        return 0.0, 1.0, 0
    expected = total / k
    stat = float(np.sum((counts - expected) ** 2 / expected))
    dof = k - 1
    return stat, float(chi2_dist.sf(stat, dof)), dof


# ---------------------------------------------------------------------------
# run plumbing


def _spans(runs: int, pieces: int) -> list[tuple[int, int]]:
    pieces = max(1, min(pieces, runs))
    edges = np.linspace(0, runs, pieces + 1, dtype=int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if a < b]


def _map_chunks(chunk_fn, config: ExperimentConfig, fixed_table: Table | None) -> list:
    """Apply ``chunk_fn(config, fixed_table, span)`` over the run range.

    Chunk results come back in span order, so folds that respect run order
    (or commute, like integer counts) are identical for any worker count.
    """
    bound = functools.partial(chunk_fn, config, fixed_table)
    if config.workers <= 1:
        return [bound((0, config.runs))]
    spans = _spans(config.runs, config.workers * 4)
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(bound, spans))


def _load_fixed_table(config: ExperimentConfig) -> Table | None:
    if config.table_path is None:
        return None
    table = read_table(config.table_path)
    if len(table) != config.n:
        # The file wins; n is display metadata in this case.
        raise ValueError(
            f"table file holds {len(table)} values but --n is {config.n}; pass --n {len(table)}"
        )
    return table


def _run_table(config: ExperimentConfig, fixed_table: Table | None, rng) -> Table:
    if fixed_table is not None:
        return fixed_table
    return generate_table(config.n, config.mode, rng, k=config.dup_k)


# ---------------------------------------------------------------------------
# lemma1: rank-selection frequencies


def _lemma1_chunk(config: ExperimentConfig, fixed_table: Table | None, span: tuple[int, int]):
    n = config.n
    params = config.search_params()
    represented = np.zeros(n + 1, dtype=np.int64)
    chosen = np.zeros(n + 1, dtype=np.int64)
    for i in range(*span):
        rng = derive_stream(config.seed, "lemma1", i)
        table = _run_table(config, fixed_table, rng)
        result = find_minimum_infinite(table, config.backend, params, rng)
        ranks = table.ranks
        represented += np.bincount(ranks, minlength=n + 1)
        chosen_indices = np.fromiter((y for _, y in result.history), dtype=np.int64)
        chosen += np.bincount(ranks[chosen_indices], minlength=n + 1)
    return represented, chosen


def estimate_rank_selection(config: ExperimentConfig) -> Report:
    """How often the index of each rank ever becomes the threshold.

    For distinct tables the frequency must match 1/r; with duplicates it
    must stay at or below 1/r.  Counting includes the uniformly random
    starting threshold, and the minimum (rank 1) is always reached.
    """
    fixed_table = _load_fixed_table(config)
    chunks = _map_chunks(_lemma1_chunk, config, fixed_table)
    represented = np.sum([c[0] for c in chunks], axis=0)
    chosen = np.sum([c[1] for c in chunks], axis=0)

    distinct = config.mode == "distinct"
    rows = []
    all_ok = True
    worst_dev = 0.0
    for r in range(1, config.n + 1):
        pairs = int(represented[r])
        if pairs == 0:
            continue
        hits = int(chosen[r])
        p_hat = hits / pairs
        theory = 1.0 / r
        se = proportion_stderr(p_hat, pairs)
        margin = max(0.01, 3.0 * se)
        deviation = p_hat - theory
        if distinct:
            asserted = r <= config.max_rank
            ok = abs(deviation) <= margin
        else:
            asserted = pairs >= MIN_ASSERT_PAIRS
            ok = deviation <= margin
        if asserted:
            all_ok = all_ok and ok
            worst_dev = max(worst_dev, abs(deviation) if distinct else deviation)
        rows.append(
            {
                "rank": r,
                "pairs": pairs,
                "ever_chosen": hits,
                "frequency": p_hat,
                "theory": theory,
                "stderr": se,
                "margin": margin,
                "asserted": asserted,
                "ok": ok,
            }
        )

    minimum_always_chosen = bool(chosen[1] == represented[1]) if represented[1] else False
    passed = all_ok and (minimum_always_chosen or not distinct)
    summary = {
        "runs": config.runs,
        "asserted_ranks": sum(1 for row in rows if row["asserted"]),
        "worst_asserted_deviation": worst_dev,
        "minimum_always_chosen": minimum_always_chosen,
        "comparison": "equality" if distinct else "upper-bound",
    }
    return Report(
        experiment=config.experiment,
        config=config.to_dict(),
        build=build_identifier(),
        passed=passed,
        summary=summary,
        rows=rows,
    )


# ---------------------------------------------------------------------------
# success: capped-run success fraction


def _success_chunk(config: ExperimentConfig, fixed_table: Table | None, span: tuple[int, int]):
    params = config.search_params()
    out = []
    for i in range(*span):
        rng = derive_stream(config.seed, "success", i)
        table = _run_table(config, fixed_table, rng)
        if config.boost:
            result = find_minimum_boosted(
                table, config.backend, params, c=config.boost, rng=rng, strategy=config.boost_strategy
            )
        else:
            result = find_minimum(
                table, config.backend, params, timeout_override=config.timeout, rng=rng
            )
        out.append((bool(result.returned_is_minimum), result.total_spent, result.loop_passes))
    return out


def estimate_success_rate(config: ExperimentConfig) -> Report:
    """Success fraction with a Wilson 99% interval, against its floor.

    Unboosted capped runs must keep the lower confidence bound at or above
    1/2; with c-fold boosting the floor rises to 1 - 1/2^c (checked within
    three standard errors).
    """
    fixed_table = _load_fixed_table(config)
    chunks = _map_chunks(_success_chunk, config, fixed_table)
    records = [rec for chunk in chunks for rec in chunk]
    successes = sum(1 for rec in records if rec[0])
    spent = np.asarray([rec[1] for rec in records])
    passes = np.asarray([rec[2] for rec in records])

    fraction = successes / config.runs
    lo, hi = wilson_interval(successes, config.runs)
    if config.boost:
        floor = 1.0 - 0.5**config.boost
        se = proportion_stderr(fraction, config.runs)
        passed = fraction >= floor - 3.0 * se
    else:
        floor = 0.5
        passed = lo >= floor
    summary = {
        "runs": config.runs,
        "successes": successes,
        "success_fraction": fraction,
        "wilson99_low": lo,
        "wilson99_high": hi,
        "floor": floor,
        "mean_spent": float(np.mean(spent)),
        "mean_loop_passes": float(np.mean(passes)),
    }
    return Report(
        experiment=config.experiment,
        config=config.to_dict(),
        build=build_identifier(),
        passed=passed,
        summary=summary,
        rows=[summary],
    )


# ---------------------------------------------------------------------------
# expected-cost: uncapped-run cost against the closed-form bound


def _cost_chunk(config: ExperimentConfig, fixed_table: Table | None, span: tuple[int, int]):
    params = config.search_params()
    lg_n = math.log2(config.n)
    out = []
    for i in range(*span):
        rng = derive_stream(config.seed, "cost", i)
        table = _run_table(config, fixed_table, rng)
        result = find_minimum_infinite(table, config.backend, params, rng)
        search_steps = result.total_spent - result.loop_passes * lg_n
        out.append((result.first_hit_time, result.loop_passes, search_steps))
    return out


def estimate_expected_cost(config: ExperimentConfig) -> Report:
    """Mean time until the threshold first holds the minimum.

    Total time must sit below (45/4) sqrt(n) + (7/10) lg^2 n, and the
    search-iteration share alone below its exact-sum bound, both with a
    three-standard-error allowance.
    """
    fixed_table = _load_fixed_table(config)
    chunks = _map_chunks(_cost_chunk, config, fixed_table)
    records = [rec for chunk in chunks for rec in chunk]
    first_hits = np.asarray([rec[0] for rec in records])
    passes = np.asarray([rec[1] for rec in records])
    search_steps = np.asarray([rec[2] for rec in records])

    mean_cost, se_cost = mean_and_stderr(first_hits)
    mean_search, se_search = mean_and_stderr(search_steps)
    cost_bound = expected_cost_bound(config.n)
    search_bound = expected_search_cost_bound(config.n)
    cost_ok = mean_cost + 3.0 * se_cost <= cost_bound
    search_ok = mean_search + 3.0 * se_search <= search_bound
    summary = {
        "runs": config.runs,
        "mean_first_hit_time": mean_cost,
        "stderr_first_hit_time": se_cost,
        "cost_bound": cost_bound,
        "cost_ok": cost_ok,
        "mean_search_steps": mean_search,
        "stderr_search_steps": se_search,
        "search_steps_bound": search_bound,
        "search_steps_ok": search_ok,
        "mean_loop_passes": float(np.mean(passes)),
    }
    return Report(
        experiment=config.experiment,
        config=config.to_dict(),
        build=build_identifier(),
        passed=cost_ok and search_ok,
        summary=summary,
        rows=[summary],
    )


# ---------------------------------------------------------------------------
# equivalence: exact statevector vs analytic sampler


def closed_form_deviation(n: int, j_max: int) -> float:
    """Worst |statevector marked probability - closed form| over t and j <= j_max."""
    worst = 0.0
    for t in range(n + 1):
        oracle = FixedSetOracle(n, tuple(range(t)))
        state = uniform_state(n)
        for j in range(j_max + 1):
            if j > 0:
                state = grover_iterate(state, oracle.is_marked)
            deviation = abs(state.subset_probability(oracle.is_marked) - success_probability(n, t, j))
            worst = max(worst, deviation)
    return worst


def _equivalence_cells(n: int) -> list[int]:
    return sorted({0, 1, 2, n // 4, n // 2, n} & set(range(0, n + 1)))


def _sampled_fixed_j(config: ExperimentConfig) -> tuple[list[dict], bool]:
    """Exact-backend measurement frequencies at pinned iteration counts."""
    n = config.n
    samples = min(config.runs, 20_000)
    rows = []
    ok = True
    for t in _equivalence_cells(n):
        oracle = FixedSetOracle(n, tuple(range(t)))
        state = uniform_state(n)
        for j in range(min(config.j_max, 8) + 1):
            if j > 0:
                state = grover_iterate(state, oracle.is_marked)
            p_true = success_probability(n, t, j)
            rng = derive_stream(config.seed, "eqv-fixedj", t, j)
            hits = 0
            for _ in range(samples):
                if measure(state, rng) < t:
                    hits += 1
            p_hat = hits / samples
            tolerance = 4.0 * proportion_stderr(p_true, samples) + 1e-9
            cell_ok = abs(p_hat - p_true) <= tolerance
            ok = ok and cell_ok
            rows.append(
                {
                    "check": "fixed-j",
                    "t": t,
                    "j": j,
                    "estimate": p_hat,
                    "expected": p_true,
                    "tolerance": tolerance,
                    "p_value": None,
                    "ok": cell_ok,
                }
            )
    return rows, ok


def _qsearch_cell_chunk(config: ExperimentConfig, cell: tuple[str, int], span: tuple[int, int]):
    """Counts of (hit, iterations) and per-index hits for one backend/t cell."""
    backend = Backend.parse(cell[0])
    t = cell[1]
    n = config.n
    params = config.search_params()
    oracle = FixedSetOracle(n, tuple(range(t)))
    budget = timeout_cap(n) if n >= 2 else float(n)
    outcome_counts: Counter = Counter()
    hit_index_counts = np.zeros(n, dtype=np.int64)
    miss_index_counts = np.zeros(n, dtype=np.int64)
    for i in range(*span):
        rng = derive_stream(config.seed, "eqv-cell", backend.value, t, i)
        outcome = exponential_search(oracle, params, budget, backend, rng)
        hit = outcome.index < t
        outcome_counts[(hit, outcome.iterations_used)] += 1
        if hit:
            hit_index_counts[outcome.index] += 1
        else:
            miss_index_counts[outcome.index] += 1
    return outcome_counts, hit_index_counts, miss_index_counts


def _search_distribution_cells(config: ExperimentConfig) -> tuple[list[dict], bool]:
    """Per-t comparison of the two backends' full search outcome law."""
    rows = []
    ok = True
    for t in _equivalence_cells(config.n):
        per_backend = {}
        for backend in Backend:
            counts, hit_idx, miss_idx = _qsearch_cell_chunk(
                config, (backend.value, t), (0, config.runs)
            )
            per_backend[backend] = (counts, hit_idx, miss_idx)
            for label, class_counts in (("hit", hit_idx[:t]), ("miss", miss_idx[t:])):
                _, p_uniform, _ = uniform_chisquare(class_counts)
                cell_ok = p_uniform > CHI2_ALPHA
                ok = ok and cell_ok
                rows.append(
                    {
                        "check": f"uniformity-{label}-{backend.value}",
                        "t": t,
                        "j": None,
                        "estimate": None,
                        "expected": None,
                        "tolerance": CHI2_ALPHA,
                        "p_value": p_uniform,
                        "ok": cell_ok,
                    }
                )
        counts_exact = per_backend[Backend.EXACT_STATEVECTOR][0]
        counts_analytic = per_backend[Backend.ANALYTIC_SAMPLER][0]
        if t == 0:
            hits = sum(v for (hit, _), v in counts_exact.items() if hit) + sum(
                v for (hit, _), v in counts_analytic.items() if hit
            )
            cell_ok = hits == 0
            p_value = None
        else:
            _, p_value, _ = two_sample_chisquare(counts_exact, counts_analytic)
            cell_ok = p_value > CHI2_ALPHA
        ok = ok and cell_ok
        rows.append(
            {
                "check": "outcome-distribution",
                "t": t,
                "j": None,
                "estimate": None,
                "expected": None,
                "tolerance": CHI2_ALPHA,
                "p_value": p_value,
                "ok": cell_ok,
            }
        )
    return rows, ok


def _full_algorithm_rates(config: ExperimentConfig) -> tuple[list[dict], bool]:
    """Capped-run success rates under both backends must agree within 3 sigma."""
    runs = min(config.runs, 10_000)
    params = config.search_params()
    rates = {}
    for backend in Backend:
        successes = 0
        for i in range(runs):
            rng = derive_stream(config.seed, "eqv-full", backend.value, i)
            table = generate_table(config.n, "distinct", rng)
            result = find_minimum(table, backend, params, rng=rng)
            successes += bool(result.returned_is_minimum)
        rates[backend] = successes / runs
    p_exact = rates[Backend.EXACT_STATEVECTOR]
    p_analytic = rates[Backend.ANALYTIC_SAMPLER]
    sigma = math.sqrt(
        proportion_stderr(p_exact, runs) ** 2 + proportion_stderr(p_analytic, runs) ** 2
    )
    ok = abs(p_exact - p_analytic) <= 3.0 * sigma + 1e-12
    row = {
        "check": "full-algorithm-success",
        "t": None,
        "j": None,
        "estimate": p_exact,
        "expected": p_analytic,
        "tolerance": 3.0 * sigma,
        "p_value": None,
        "ok": ok,
    }
    return [row], ok


def backend_equivalence(config: ExperimentConfig) -> Report:
    """Full battery pitting the exact backend against the analytic sampler.

    Deterministic part: statevector marked-probabilities against the closed
    form, to 1e-9.  Stochastic parts: fixed-j measurement frequencies,
    chi-square comparison of (hit, iterations) search outcomes per t cell,
    class-conditional index uniformity, and whole-algorithm success rates.
    """
    deviation = closed_form_deviation(config.n, config.j_max)
    closed_ok = deviation <= 1e-9
    rows = [
        {
            "check": "closed-form",
            "t": None,
            "j": config.j_max,
            "estimate": deviation,
            "expected": 0.0,
            "tolerance": 1e-9,
            "p_value": None,
            "ok": closed_ok,
        }
    ]
    sampled_rows, sampled_ok = _sampled_fixed_j(config)
    cell_rows, cells_ok = _search_distribution_cells(config)
    full_rows, full_ok = _full_algorithm_rates(config)
    rows += sampled_rows + cell_rows + full_rows
    passed = closed_ok and sampled_ok and cells_ok and full_ok
    summary = {
        "runs": config.runs,
        "closed_form_deviation": deviation,
        "checks": len(rows),
        "failed_checks": sum(1 for row in rows if not row["ok"]),
    }
    return Report(
        experiment=config.experiment,
        config=config.to_dict(),
        build=build_identifier(),
        passed=passed,
        summary=summary,
        rows=rows,
    )


# ---------------------------------------------------------------------------
# bounds: closed-form identities and sweeps


def bounds_report(config: ExperimentConfig) -> Report:
    """Evaluate every bound at n and sweep the two proof inequalities."""
    report = BoundReport.for_size(config.n)
    identity_error = abs(report.timeout_cap - 2.0 * report.expected_cost_bound)
    identity_ok = identity_error <= 1e-9
    cost_sweep = sweep_search_cost_bound(config.sweep_max)
    harmonic_sweep = sweep_harmonic_bound(config.sweep_max)
    passed = identity_ok and cost_sweep.ok and harmonic_sweep.ok
    summary = {
        **report.to_dict(),
        "cap_identity_error": identity_error,
        "search_cost_sum": expected_search_cost_bound(config.n),
        "sweep_max": config.sweep_max,
        "search_cost_sweep_worst_ratio": cost_sweep.worst_ratio,
        "search_cost_sweep_worst_n": cost_sweep.worst_n,
        "harmonic_sweep_worst_ratio": harmonic_sweep.worst_ratio,
        "harmonic_sweep_worst_n": harmonic_sweep.worst_n,
    }
    rows = [
        {"quantity": "expected_cost_bound", "n": config.n, "value": report.expected_cost_bound},
        {"quantity": "timeout_cap", "n": config.n, "value": report.timeout_cap},
        {"quantity": "harmonic", "n": config.n, "value": report.harmonic},
        {"quantity": "search_cost_sum", "n": config.n, "value": summary["search_cost_sum"]},
    ] + [
        {"quantity": f"search_iterations_bound[t={t}]", "n": config.n, "value": v}
        for t, v in sorted(report.search_bounds.items())
    ]
    return Report(
        experiment=config.experiment,
        config=config.to_dict(),
        build=build_identifier(),
        passed=passed,
        summary=summary,
        rows=rows,
    )


# ---------------------------------------------------------------------------
# single-run: raw records


def _record_cap(config: ExperimentConfig) -> float:
    if config.n == 1:
        return 0.0
    base = config.timeout if config.timeout is not None else timeout_cap(config.n)
    if config.boost and config.boost_strategy == "extend":
        return config.boost * timeout_cap(config.n)
    return base


def _single_run_chunk(config: ExperimentConfig, fixed_table: Table | None, span: tuple[int, int]):
    params = config.search_params()
    cap = _record_cap(config)
    out = []
    for i in range(*span):
        rng = derive_stream(config.seed, "run", i)
        table = _run_table(config, fixed_table, rng)
        if config.boost:
            result = find_minimum_boosted(
                table, config.backend, params, c=config.boost, rng=rng, strategy=config.boost_strategy
            )
        else:
            result = find_minimum(
                table,
                config.backend,
                params,
                timeout_override=config.timeout,
                rng=rng,
                record_history=True,
            )
        out.append(
            {
                "n": config.n,
                "seed": config.seed,
                "backend": config.backend.value,
                "lambda": config.growth,
                "cap": cap,
                "returned_index": int(result.returned_index),
                "returned_is_minimum": bool(result.returned_is_minimum),
                "first_hit_time": None
                if result.first_hit_time is None
                else float(result.first_hit_time),
                "total_spent": float(result.total_spent),
                "loop_passes": int(result.loop_passes),
            }
        )
    return out


def single_run_records(config: ExperimentConfig) -> Report:
    """Per-run records with no statistical verdict attached."""
    fixed_table = _load_fixed_table(config)
    chunks = _map_chunks(_single_run_chunk, config, fixed_table)
    records = [rec for chunk in chunks for rec in chunk]
    hits = sum(1 for rec in records if rec["returned_is_minimum"])
    summary = {"runs": config.runs, "successes": hits}
    return Report(
        experiment=config.experiment,
        config=config.to_dict(),
        build=build_identifier(),
        passed=True,
        summary=summary,
        rows=records,
    )


# ---------------------------------------------------------------------------
# dispatch


_DRIVERS = {
    "lemma1": estimate_rank_selection,
    "success": estimate_success_rate,
    "expected-cost": estimate_expected_cost,
    "equivalence": backend_equivalence,
    "bounds": bounds_report,
    "single-run": single_run_records,
}


def run_experiment(config: ExperimentConfig) -> Report:
    """Run the configured experiment and return its report."""
    return _DRIVERS[config.experiment](config)

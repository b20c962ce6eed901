#!/usr/bin/env python3
"""Run every experiment at a chosen scale and print a verdict table.

A faster, configurable counterpart to the acceptance tests: handy for
eyeballing margins at other sizes, seeds, or growth factors, e.g.

    python scripts/run_verification_suite.py --runs 2000 --seed 7
    python scripts/run_verification_suite.py --scale full   # acceptance-sized
"""
from __future__ import annotations

import argparse
import sys
import time

from qminfind.harness import ExperimentConfig, run_experiment

SCALES = {
    "quick": {"lemma1": 5_000, "success": 2_000, "expected-cost": 2_000, "equivalence": 500},
    "full": {"lemma1": 100_000, "success": 10_000, "expected-cost": 10_000, "equivalence": 2_000},
}


def suite(runs_by_experiment: dict[str, int], seed: int, growth: float, workers: int):
    shared = {"seed": seed, "growth": growth, "workers": workers}
    yield ExperimentConfig(
        experiment="lemma1", n=64, runs=runs_by_experiment["lemma1"], **shared
    )
    for n in (16, 64, 256, 1024):
        yield ExperimentConfig(
            experiment="success", n=n, runs=runs_by_experiment["success"], **shared
        )
    yield ExperimentConfig(
        experiment="success", n=256, runs=runs_by_experiment["success"], boost=3, **shared
    )
    for n in (64, 1024):
        yield ExperimentConfig(
            experiment="expected-cost", n=n, runs=runs_by_experiment["expected-cost"], **shared
        )
    yield ExperimentConfig(
        experiment="lemma1", n=64, runs=runs_by_experiment["lemma1"], mode="dup", dup_k=8, **shared
    )
    yield ExperimentConfig(
        experiment="equivalence", n=8, runs=runs_by_experiment["equivalence"], **shared
    )
    yield ExperimentConfig(experiment="bounds", n=1024, **shared)


def describe(config: ExperimentConfig) -> str:
    extras = []
    if config.boost:
        extras.append(f"boost={config.boost}")
    if config.mode != "distinct":
        extras.append(config.mode_label)
    suffix = f" ({', '.join(extras)})" if extras else ""
    return f"{config.experiment} n={config.n}{suffix}"


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scale", choices=sorted(SCALES), default="quick")
    parser.add_argument("--runs", type=int, default=None, help="override every run count")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--lambda", dest="growth", type=float, default=8.0 / 7.0)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args(argv)

    runs_by_experiment = dict(SCALES[args.scale])
    if args.runs is not None:
        runs_by_experiment = {key: args.runs for key in runs_by_experiment}

    failures = 0
    for config in suite(runs_by_experiment, args.seed, args.growth, args.workers):
        started = time.perf_counter()
        report = run_experiment(config)
        elapsed = time.perf_counter() - started
        verdict = "pass" if report.passed else "FAIL"
        failures += not report.passed
        print(f"{describe(config):40s} {verdict:4s} {elapsed:7.2f}s")
    print(f"\n{failures} failing experiment(s)" if failures else "\nall experiments pass")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

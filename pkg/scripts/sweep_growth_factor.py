#!/usr/bin/env python3
"""Sweep the search growth factor and chart its cost/success trade-off.

The expected-iteration bound needs the growth factor strictly inside
(1, 4/3); this sweep shows how flat the optimum is in practice, e.g.

    python scripts/sweep_growth_factor.py --n 256 --runs 2000
"""
from __future__ import annotations

import argparse
import sys

from qminfind.bounds import expected_cost_bound
from qminfind.harness import ExperimentConfig, run_experiment


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=256)
    parser.add_argument("--runs", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--points", type=int, default=9, help="grid size across (1, 4/3)")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args(argv)

    lo, hi = 1.02, 4.0 / 3.0 - 0.02
    grid = [lo + (hi - lo) * i / (args.points - 1) for i in range(args.points)]
    bound = expected_cost_bound(args.n)
    print(f"n={args.n}, runs={args.runs}, cost bound {bound:.1f}")
    print(f"{'lambda':>8s} {'mean cost':>10s} {'bound frac':>10s} {'success':>8s}")
    best = None
    for growth in grid:
        cost = run_experiment(
            ExperimentConfig(
                experiment="expected-cost", n=args.n, runs=args.runs, seed=args.seed,
                growth=growth, workers=args.workers,
            )
        ).summary["mean_first_hit_time"]
        success = run_experiment(
            ExperimentConfig(
                experiment="success", n=args.n, runs=args.runs, seed=args.seed,
                growth=growth, workers=args.workers,
            )
        ).summary["success_fraction"]
        print(f"{growth:8.4f} {cost:10.2f} {cost / bound:10.3f} {success:8.4f}")
        if best is None or cost < best[1]:
            best = (growth, cost)
    print(f"\nlowest mean cost {best[1]:.2f} at lambda {best[0]:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Gradient-norm-per-iteration traces for one problem, both methods.

Writes two trace CSVs (columns k,grad_norm,merit,alpha,direction_kind,
backtracks) from the same seeded start, ready for plotting the classic
picture: the full-step method wanders for many iterations before entering
the fast-convergence region, the damped method backtracks a few times and
then takes unit steps straight in.

Example:

    python scripts/trace_gradnorm.py --family f1 --ratio 0.1 --dim 100 --seed 7
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from rdn.bench import ExperimentSpec, emit_trace, run_experiment
from rdn.objectives import Family
from rdn.solver import Method


def parse_range(text):
    low, high = (float(part) for part in text.split(","))
    return low, high


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", choices=["f1", "f2"], default="f1")
    parser.add_argument("--ratio", type=float, default=0.1)
    parser.add_argument("--dim", type=int, default=100)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--init-range", type=parse_range, default=(9.0, 10.0), metavar="LOW,HIGH")
    parser.add_argument("--max-iters", type=int, default=2000)
    parser.add_argument("--outdir", default=".")
    args = parser.parse_args()

    for method in (Method.FULL, Method.DAMPED):
        spec = ExperimentSpec(
            family=Family(args.family),
            ratio=args.ratio,
            dim=args.dim,
            method=method,
            seed=args.seed,
            max_iters=args.max_iters,
            init_eig_range=args.init_range,
        )
        result = run_experiment(spec)
        name = f"trace_{args.family}_{args.ratio:g}_n{args.dim}_{method.value}.csv"
        path = str(Path(args.outdir) / name)
        emit_trace(result.trace, path)
        print(
            f"{method.value:6s}: {result.status:14s} nit={result.nit:4d} "
            f"ge={result.ge:5d} time={result.time_s:.2f}s -> {path}"
        )


if __name__ == "__main__":
    main()

"""Benchmark command line.

Single run:

    rdn-bench --family f1 --ratio 0.1 --dim 100 --method damped --seed 7 \
              --out results.csv --trace trace.csv

Full grid (both families, ratios 0.1/1.0/1.5 and 0.001/0.002/0.01, dims
1/100/1000, both methods):

    rdn-bench --table1 --max-dim 100 --seed 42 --out table1.csv

Exit code is 0 iff every requested run converged.  The CSV keeps its
wall-clock column at 0.0 unless --wall-times is given, so identical
invocations produce byte-identical files; measured times are always printed
in the per-run summary.
"""

from __future__ import annotations

import argparse
import sys

from .bench import ExperimentSpec, emit_csv, emit_trace, run_grid, table1_grid
from .objectives import Family
from .solver import Method, Status


def _parse_range(text: str) -> tuple[float, float]:
    try:
        low, high = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected LOW,HIGH (e.g. 1,10), got {text!r}"
        ) from None
    return low, high


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdn-bench",
        description="Seeded damped/full Newton benchmarks on the SPD cone.",
    )
    parser.add_argument("--family", choices=[f.value for f in Family], help="objective family")
    parser.add_argument("--ratio", type=float, help="coefficient ratio b/a")
    parser.add_argument("--dim", type=int, help="matrix dimension n")
    parser.add_argument("--method", choices=[m.value for m in Method], help="solver variant")
    parser.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
    parser.add_argument("--sigma", type=float, default=1e-4, help="line-search slope factor")
    parser.add_argument("--tol", type=float, default=1e-8, help="gradient-norm stop tolerance")
    parser.add_argument("--max-iters", type=int, default=500, help="iteration cap")
    parser.add_argument(
        "--init-range",
        type=_parse_range,
        default=(1.0, 10.0),
        metavar="LOW,HIGH",
        help="spectrum range of the random start (default 1,10)",
    )
    parser.add_argument("--out", metavar="FILE", help="write results CSV here")
    parser.add_argument("--trace", metavar="FILE", help="write the per-iteration trace CSV here (single run only)")
    parser.add_argument(
        "--table1",
        action="store_true",
        help="run the built-in 18-cell benchmark grid with both methods",
    )
    parser.add_argument("--max-dim", type=int, help="drop grid cells above this dimension")
    parser.add_argument(
        "--wall-times",
        action="store_true",
        help="write measured seconds into the CSV (breaks byte determinism)",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress the per-run summary")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.table1:
        if args.trace:
            parser.error("--trace requires a single run, not --table1")
        specs = table1_grid(
            args.seed,
            max_dim=args.max_dim,
            sigma=args.sigma,
            grad_tol=args.tol,
            max_iters=args.max_iters,
            init_eig_range=args.init_range,
        )
    else:
        missing = [
            name
            for name, value in (
                ("--family", args.family),
                ("--ratio", args.ratio),
                ("--dim", args.dim),
                ("--method", args.method),
            )
            if value is None
        ]
        if missing:
            parser.error(f"{' '.join(missing)} required (or use --table1)")
        specs = [
            ExperimentSpec(
                family=Family(args.family),
                ratio=args.ratio,
                dim=args.dim,
                method=Method(args.method),
                seed=args.seed,
                sigma=args.sigma,
                grad_tol=args.tol,
                max_iters=args.max_iters,
                init_eig_range=args.init_range,
            )
        ]

    results = run_grid(specs)

    if not args.quiet:
        for r in results:
            s = r.spec
            print(
                f"{s.family.value} ratio={s.ratio:g} n={s.dim} {s.method.value:6s} "
                f"seed={s.seed}: {r.status:18s} nit={r.nit:4d} he={r.he:4d} ge={r.ge:5d} "
                f"time={r.time_s:.3f}s grad={r.final_grad_norm:.3e} dist={r.final_dist_to_star:.3e}"
            )

    if args.out:
        emit_csv(results, args.out, wall_times=args.wall_times)
    if args.trace:
        emit_trace(results[0].trace, args.trace)

    return 0 if all(r.status == Status.CONVERGED.value for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())

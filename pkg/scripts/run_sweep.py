"""Ratio study over seeded random instances; writes rows and a per-cell summary.

    python scripts/run_sweep.py --out results/sweep.csv --seeds 50 --t 12 --workers 4
"""
import argparse
import os
import time

from testcover.sweep import SweepConfig, parse_int_range, rows_to_csv, run_sweep, summarize, summary_to_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results/sweep.csv")
    ap.add_argument("--n-range", default="4-8")
    ap.add_argument("--r-range", default="1-3")
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--t", type=int, default=12)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--oracle-budget", type=int, default=200_000)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    cfg = SweepConfig(
        ns=parse_int_range(args.n_range), rs=parse_int_range(args.r_range), seeds=args.seeds,
        t=args.t, p=args.p, seed=args.seed, oracle_budget=args.oracle_budget, workers=args.workers,
    )
    t0 = time.perf_counter()
    rows = run_sweep(cfg)
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    with open(args.out, "w") as fh:
        fh.write(rows_to_csv(rows))
    summary = summary_to_csv(summarize(rows))
    with open(os.path.splitext(args.out)[0] + "_summary.csv", "w") as fh:
        fh.write(summary)
    print(summary)
    fails = sum(r.get("assertions_passed") == "fail" for r in rows)
    print(f"{len(rows)} instances, {fails} with failed assertions, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()

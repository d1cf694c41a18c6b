#!/usr/bin/env python3
"""Sweep the north-pole maximality check over a range of n.

Writes one summary row per n and prints the key counters, including the
median orbit radius that drives the sweep density.

    python3 scripts/run_conjecture_sweep.py --n-min 15 --n-max 25 \
        --structure twisted --summary sweep.csv
"""
import argparse

from capdisc import (
    conjecture_check,
    generate_polar,
    generate_twisted_polar,
    upsert_summary_row,
)
from capdisc.reporting import RunSummaryRow


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=15)
    ap.add_argument("--n-max", type=int, default=25)
    ap.add_argument("--structure", choices=["twisted", "polar"], default="twisted")
    ap.add_argument("--summary", default=None, help="optional summary CSV path")
    args = ap.parse_args()

    gen = generate_twisted_polar if args.structure == "twisted" else generate_polar
    for n in range(args.n_min, args.n_max + 1):
        outcome, cert = conjecture_check(n, structure=args.structure)
        c = outcome.counters
        print(
            f"n={n} t={gen(n).size} status={outcome.status} "
            f"n_DD={c['n_DD']} n_CC={c['n_CC']} "
            f"r_min_median={c['r_min_median']:.6f} "
            f"total={outcome.timings['total']:.1f}s"
        )
        if args.summary:
            row = RunSummaryRow(
                n=n,
                t=gen(n).size,
                n_DD=c["n_DD"],
                n_CC=c["n_CC"],
                phase1_s=outcome.timings["phase1"],
                cover_cap_s=outcome.timings["cover_cap"],
                total_s=outcome.timings["total"],
                d=cert.north_value,
                status=outcome.status,
            )
            upsert_summary_row(args.summary, row)


if __name__ == "__main__":
    main()

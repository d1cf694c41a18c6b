#!/usr/bin/env python3
"""Empirical complexity of the covering sweep: n_DD against 1/r_min^2.

Runs the north-pole check for a list of n, then fits a log-log regression
of the direction count against the inverse squared median orbit radius.
A slope near 1 confirms that the number of directions scales with the
area divided by the typical confidence-ball footprint.

    python3 scripts/complexity_regression.py --ns 20 40 60 80
"""
import argparse
import math

import numpy as np

from capdisc import conjecture_check


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=[20, 40, 60, 80])
    ap.add_argument("--structure", choices=["twisted", "polar"], default="twisted")
    args = ap.parse_args()

    xs, ys = [], []
    for n in args.ns:
        outcome, _ = conjecture_check(n, structure=args.structure)
        c = outcome.counters
        xs.append(math.log(1.0 / c["r_min_median"] ** 2))
        ys.append(math.log(c["n_DD"]))
        print(
            f"n={n} status={outcome.status} n_DD={c['n_DD']} "
            f"r_min_median={c['r_min_median']:.6f} "
            f"r_min_global={c['r_min_global']:.6f}"
        )
    slope, intercept = np.polyfit(xs, ys, 1)
    print(f"log-log slope of n_DD vs 1/r_min_median^2: {slope:.4f}")


if __name__ == "__main__":
    main()

"""Angular error of the fitted normal as correspondence noise grows.

    python scripts/noise_sweep.py --dim 3 --m 200 --trials 50
"""

import argparse
import math

import numpy as np

from lsreflect import fit_reflection
from lsreflect.cli import generate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--m", type=int, default=200)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--sigmas", type=float, nargs="+", default=[0.0, 0.001, 0.01, 0.05, 0.1, 0.3])
    args = ap.parse_args()

    print(f"{'sigma':>8} {'median rad':>12} {'p95 rad':>12} {'degenerate':>10}")
    for sigma in args.sigmas:
        errs, degenerate = [], 0
        for seed in range(args.trials):
            P, Q, truth = generate(args.dim, args.m, sigma, seed)
            fit = fit_reflection(P, Q)
            degenerate += fit.degenerate
            n = fit.plane.normal * np.sign(fit.plane.normal @ truth.normal)
            # chord form stays accurate for tiny angles, unlike acos
            errs.append(2 * math.asin(min(1.0, np.linalg.norm(n - truth.normal) / 2)))
        print(f"{sigma:>8g} {np.median(errs):>12.3e} {np.percentile(errs, 95):>12.3e} {degenerate:>10d}")


if __name__ == "__main__":
    main()

"""How fast the brute-force oracle closes in on the eigen solution (D=2).

    python scripts/oracle_gap.py --trials 20 --sigma 0.1
"""

import argparse

import numpy as np

from lsreflect import canonicalize, fit_reflection, grid_search_fit, Hyperplane, reflect_points

RESOLUTIONS = (16, 64, 256, 1024, 4096, 16384)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--m", type=int, default=50)
    ap.add_argument("--sigma", type=float, default=0.1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    gaps = np.zeros((args.trials, len(RESOLUTIONS)))
    for t in range(args.trials):
        P = rng.uniform(-1, 1, (args.m, 2))
        n = rng.standard_normal(2)
        plane = canonicalize(Hyperplane(n, rng.uniform(-0.5, 0.5) * np.linalg.norm(n)))
        Q = reflect_points(plane, P) + args.sigma * rng.standard_normal(P.shape)
        best = fit_reflection(P, Q).objective
        gaps[t] = [grid_search_fit(P, Q, r).objective - best for r in RESOLUTIONS]

    print(f"{'resolution':>10} {'median gap':>12} {'max gap':>12} {'max gap * r^2':>14}")
    for j, r in enumerate(RESOLUTIONS):
        g = gaps[:, j]
        print(f"{r:>10} {np.median(g):>12.3e} {g.max():>12.3e} {g.max() * r * r:>14.3e}")


if __name__ == "__main__":
    main()

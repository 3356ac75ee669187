"""Exact head-instability probabilities for small n, next to Monte-Carlo and the bound.

    python scripts/exact_instability.py --n 4 --k-max 10 --samples 10000
"""

import argparse

from garside import stats


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--k-max", type=int, default=10)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'k':>3} {'exact':>10} {'mc':>10} {'se':>9} {'d bound':>10}")
    for k in range(2, args.k_max + 1):
        exact = float(stats.exact_head_instability(args.n, k))
        r = stats.mc_experiment("head-stability", args.n, k, args.samples, args.seed)
        print(f"{k:>3} {exact:>10.6f} {1 - r.rate:>10.6f} {r.stderr:>9.6f} {float(stats.d_bound(args.n, k)):>10.6f}")


if __name__ == "__main__":
    main()

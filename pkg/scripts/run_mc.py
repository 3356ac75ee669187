"""Run every Monte-Carlo experiment on one (n, k) and print a summary table.

    python scripts/run_mc.py --n 6 --k 12 --samples 2000 --seed 1 [--jobs 2]
"""

import argparse
import json

from garside import stats


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--k", type=int, default=12)
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--json", help="write all results to this file")
    args = ap.parse_args()

    results = []
    print(f"{'experiment':<20} {'rate':>8} {'95% CI':>19} {'bound':>8} {'kind':>6}  clears")
    for name in sorted(stats.EXPERIMENTS):
        _, _, kmin = stats.EXPERIMENTS[name]
        if args.k < kmin or args.n > stats.MAX_N.get(name, args.n):
            print(f"{name:<20} skipped")
            continue
        r = stats.mc_experiment(name, args.n, args.k, args.samples, args.seed, jobs=args.jobs)
        results.append(r.to_json())
        print(f"{name:<20} {r.rate:>8.4f} [{r.ci_low:7.4f}, {r.ci_high:7.4f}] {r.bound:>8.4f} {r.bound_kind:>6}  {r.clears}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2)


if __name__ == "__main__":
    main()

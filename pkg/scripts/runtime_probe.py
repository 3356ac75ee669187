"""Time fast conjugacy at fixed n while k doubles, and report growth ratios.

    python scripts/runtime_probe.py --n 50 --k 25 --doublings 2 --trials 3
"""

import argparse
import statistics
import time

from garside import normal_form as nf
from garside.fast import FAST, decide_conjugacy
from garside.stats import RandomBraidSpec, sample_random_braid


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=50)
    ap.add_argument("--k", type=int, default=25)
    ap.add_argument("--doublings", type=int, default=2)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    prev = None
    print(f"{'k':>5} {'mean s':>8} {'max s':>8} {'ratio':>6}  verdicts")
    for d in range(args.doublings + 1):
        k = args.k * 2**d
        times, verdicts = [], []
        for t in range(args.trials):
            x, _ = sample_random_braid(RandomBraidSpec(args.n, k, seed=args.seed, trial=t))
            w, _ = sample_random_braid(RandomBraidSpec(args.n, k, seed=args.seed + 1, trial=t))
            y = nf.conjugate(x, w)
            t0 = time.perf_counter()
            cert = decide_conjugacy(x, y, mode=FAST)
            times.append(time.perf_counter() - t0)
            verdicts.append(cert.verdict.value)
        mean = statistics.fmean(times)
        ratio = f"{mean / prev:.2f}" if prev else "-"
        print(f"{k:>5} {mean:>8.3f} {max(times):>8.3f} {ratio:>6}  {','.join(verdicts)}")
        prev = mean


if __name__ == "__main__":
    main()

"""Recompute the descent-bound grid and compare it with the reference values.

    python scripts/reproduce_grid.py [--out table.csv]
"""

import argparse
import time

from garside import stats


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="also write the CSV here")
    ap.add_argument("--tol", type=float, default=0.02, help="relative tolerance for the OK column")
    args = ap.parse_args()

    t0 = time.perf_counter()
    table = stats.d_bound_table()
    elapsed = time.perf_counter() - t0

    print(f"{'k':>3} {'n':>4} {'computed':>10} {'reference':>10} {'rel':>8}  status")
    for k in stats.GRID_K:
        for n in stats.GRID_N:
            row = table.get(n, k)
            ref = stats.reference_value(n, k)
            value = float(row.value)
            if (k, n) in stats.SUSPECTED_TYPOS:
                status, rel = "typo?", ""
            elif ref is None:
                status, rel = ("ok" if value < 1e-15 else "OFF"), ""
            else:
                r = value / ref - 1
                status, rel = ("ok" if abs(r) <= args.tol else "OFF"), f"{100 * r:+.2f}%"
            shown = "<1e-15" if ref is None else stats.format_sig(ref)
            print(f"{k:>3} {n:>4} {row.formatted:>10} {shown:>10} {rel:>8}  {status}")
    print(f"\n{len(stats.GRID_K) * len(stats.GRID_N)} cells in {elapsed:.1f}s")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(table.to_csv())


if __name__ == "__main__":
    main()

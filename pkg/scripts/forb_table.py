"""Exact forb(m, F) for small m by exhaustive search, printed next to f(m,k).

    python3 scripts/forb_table.py --max-m 5 --families F_3 F_4 boundary:i=1,k=4
"""

import argparse
import time

from forbconf.cli import load_matrix
from forbconf.constructions import f, named, NAMED
from forbconf.solver import Budget, max_avoid_exact


def resolve(token):
    return named(token) if token in NAMED else load_matrix(token)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-m", type=int, default=5)
    p.add_argument("--families", nargs="+", default=["F_3", "F_4", "boundary:i=1,k=4", "boundary:i=3,k=4"])
    p.add_argument("--seconds", type=float, default=120.0, help="budget per cell")
    p.add_argument("--threads", type=int, default=1)
    args = p.parse_args()

    print(f"{'family':<20}{'m':>3}{'forb':>8}{'f(m,k)':>8}  status            time")
    for token in args.families:
        F = resolve(token)
        k = F.num_rows
        for m in range(2, args.max_m + 1):
            t0 = time.perf_counter()
            r = max_avoid_exact(m, [F], budget=Budget(seconds=args.seconds), threads=args.threads)
            ref = f(m, k) if k >= 2 else "-"
            print(f"{token:<20}{m:>3}{r.value:>8}{ref:>8}  {r.status:<17}{time.perf_counter() - t0:6.2f}s")


if __name__ == "__main__":
    main()

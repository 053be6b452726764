"""Compare the lower-bound constructions against f(m,k) over a range of m.

Columns: product of identities, low weight plus code, A_k, and f(m,k).
A_k matches f(m,k) by construction; the other two show how far the generic
constructions fall short.

    python3 scripts/bound_gap.py --k 4 5 --max-m 14
"""

import argparse

from forbconf.constructions import A_k, f, low_weight_plus_code, product_power_identity


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, nargs="+", default=[4, 5])
    p.add_argument("--max-m", type=int, default=12)
    args = p.parse_args()

    print(f"{'k':>2}{'m':>4}{'product':>9}{'code':>8}{'A_k':>8}{'f(m,k)':>9}")
    for k in args.k:
        for m in range(k, args.max_m + 1):
            pp = product_power_identity(m, k).num_cols
            code = low_weight_plus_code(m, k).num_cols
            print(f"{k:>2}{m:>4}{pp:>9}{code:>8}{A_k(m, k).num_cols:>8}{f(m, k):>9}")


if __name__ == "__main__":
    main()

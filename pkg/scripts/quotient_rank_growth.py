"""Rank of the truncated W quotient as the window grows.

    python3 scripts/quotient_rank_growth.py --rank 1 --max-bound 8
"""

import argparse
import time

from barbellcalc.lattice import Window, enumerate_pairs
from barbellcalc.selftest import dense_quotient_rank
from barbellcalc.wspace import build_relation_basis, quotient_rank


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rank", type=int, default=1)
    ap.add_argument("--max-bound", type=int, default=6)
    ap.add_argument("--oracle", action="store_true", help="also run the dense sympy rank")
    args = ap.parse_args()

    print(f"{'N':>3} {'pairs':>7} {'relations':>10} {'quotient':>9} {'oracle':>7} {'sec':>7}")
    prev = None
    for n in range(1, args.max_bound + 1):
        w = Window(args.rank, n)
        t = time.perf_counter()
        q = quotient_rank(w)
        dt = time.perf_counter() - t
        oracle = dense_quotient_rank(w) if args.oracle else "-"
        print(f"{n:>3} {len(enumerate_pairs(w)):>7} {build_relation_basis(w).rank:>10} "
              f"{q:>9} {oracle!s:>7} {dt:>7.2f}")
        if prev is not None and q <= prev:
            print("  (not increasing)")
        prev = q


if __name__ == "__main__":
    main()

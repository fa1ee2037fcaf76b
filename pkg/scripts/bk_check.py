"""Compare span{theta, zeta differences} modulo the coface images with the
four-term quotient on a grid of windows.

    python3 scripts/bk_check.py --windows 1:1 1:2 1:3 1:4 2:1 2:2
"""

import argparse
import time

from barbellcalc.confpair import bk_quotient_check, coface_mismatches
from barbellcalc.lattice import Window


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--windows", nargs="+", default=["1:1", "1:2", "1:3", "2:1"],
                    help="rank:bound pairs")
    args = ap.parse_args()
    for item in args.windows:
        rank, bound = (int(x) for x in item.split(":"))
        w = Window(rank, bound)
        t = time.perf_counter()
        r = bk_quotient_check(w)
        bad = coface_mismatches(w)
        print(f"b={rank} N={bound}: rank_bk={r.rank_bk} rank_w={r.rank_w} "
              f"injective={r.injective} surjective={r.surjective} "
              f"coface_mismatches={len(bad)} ({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()

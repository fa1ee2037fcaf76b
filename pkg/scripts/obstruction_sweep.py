"""Sweep coefficient vectors c and factor orders through the reducible
certificate and tabulate the obstruction sums found at (alpha2 alpha1)^k.

    python3 scripts/obstruction_sweep.py --max-k 3 --max-c 2 --orders 0:0 0:3 2:3
"""

import argparse
import itertools
from collections import Counter

from barbellcalc.certify import Kind, PreconditionError, Scenario, Verdict, reducible_certificate
from barbellcalc.groupword import GroupPresentation
from barbellcalc.lattice import Window


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--max-c", type=int, default=2)
    ap.add_argument("--orders", nargs="+", default=["0:0", "0:3", "0:4", "2:3", "3:4", "0:2"],
                    help="alpha1_order:alpha2_order, 0 meaning infinite")
    args = ap.parse_args()
    values = range(-args.max_c, args.max_c + 1)
    for item in args.orders:
        orders = tuple(int(x) for x in item.split(":"))
        pres = GroupPresentation(orders)
        a1, a2 = pres.gen(0), pres.gen(1)
        tally = Counter()
        for c in itertools.product(values, repeat=args.max_k):
            if not any(c):
                continue
            s = Scenario(Kind.REDUCIBLE, Window(1, 1), presentation=pres,
                         alpha1=a1, alpha2=a2, coefficients=c)
            try:
                cert = reducible_certificate(s)
            except PreconditionError as err:
                tally[f"precondition: {err}"] += 1
                continue
            tally[cert.verdict.value] += 1
            if cert.verdict is Verdict.CERTIFIED:
                lem = cert.evidence["expected_orbit_sums"]
                tally["coefficient matches"] += all(e["found"] == e["expected"] for e in lem)
        print(f"{pres}: " + ", ".join(f"{k}={v}" for k, v in sorted(tally.items())))


if __name__ == "__main__":
    main()

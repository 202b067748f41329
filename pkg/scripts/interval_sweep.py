#!/usr/bin/env python3
"""Sweep the uniform big-discriminant ratio intervals.

For each Delta' = 1 mod 8 in the range, compute the certified m/n
enclosures from rows (1,2,3) and (1,3,4) of the leading-coefficient
census and check them against the displayed bounds [0.279, 0.294] and
[0.392, 0.409].  Intervals shrink monotonically as |Delta'| grows, so
the first discriminant of the range is the binding one.
"""

import argparse
import sys

from mpmath import workprec

from smforge.elimination import big_disc_linear
from smforge.forms import class_number, discriminants_in_range


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min", type=int, default=1024, help="smallest |disc'|")
    ap.add_argument("--max", type=int, default=5000, help="largest |disc'|")
    ap.add_argument("--step", type=int, default=10,
                    help="keep every step-th admissible discriminant")
    ap.add_argument("--prec", type=int, default=256)
    args = ap.parse_args()

    discs = [
        d for d in discriminants_in_range(args.min, args.max)
        if d % 8 == 1 and class_number(d) >= 3
    ][:: args.step]
    print(f"{len(discs)} discriminants, rows (1,2,3) and (1,3,4)")

    bad = 0
    with workprec(args.prec):
        for d in discs:
            rep = big_disc_linear(disc_prime=d)
            i123 = rep.constants["interval_123"]
            i134 = rep.constants["interval_134"]
            ok = rep.outcome == "eliminated"
            bad += not ok
            print(
                f"{d:6d}  h={class_number(d)}  "
                f"[{float(i123[0]):.6f}, {float(i123[1]):.6f}]  "
                f"[{float(i134[0]):.6f}, {float(i134[1]):.6f}]  "
                f"{'ok' if ok else rep.outcome}"
            )
    print("all contained and disjoint" if not bad else f"{bad} FAILURES")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Run the full elimination pipelines and persist the transcripts.

`--case linear` reproduces the linear sweep (uniform tail + all small
discriminants + distinct-field pairs); `--case mult` the multiplicative
one; `--case all` both plus the survivor cross-check.
"""

import argparse
import sys
import time

from mpmath import workprec

from smforge.cli import RunConfig, _emit_all
from smforge.elimination import (
    EXPECTED_LINEAR_SURVIVORS,
    eliminate_linear,
    eliminate_mult,
)


def run(case: str, config: RunConfig, progress) -> int:
    t0 = time.time()
    reports = []
    with workprec(config.precision_bits):
        if case in ("linear", "all"):
            reports += eliminate_linear(progress)
        if case in ("mult", "all"):
            reports += eliminate_mult(progress)
    _emit_all(reports, config)
    dt = time.time() - t0

    survivors = [tuple(r.discs) for r in reports if r.outcome == "survivor"]
    bad = [tuple(r.discs) for r in reports if r.outcome == "inconclusive"]
    print(f"{len(reports)} reports in {dt:.0f}s -> {config.out_dir}/")
    print("survivors:", survivors or "none")
    if bad:
        print("INCONCLUSIVE:", bad)
        return 1
    if case != "mult" and tuple(sorted(survivors)) != EXPECTED_LINEAR_SURVIVORS:
        print("unexpected survivor set")
        return 1
    return 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", choices=["linear", "mult", "all"], default="all")
    ap.add_argument("--outdir", default="reports")
    ap.add_argument("--prec", type=int, default=256)
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args()

    config = RunConfig(precision_bits=args.prec, out_dir=args.outdir)
    progress = None if args.quiet else (
        lambda m: print(f"  .. {m}", file=sys.stderr, flush=True)
    )
    return run(args.case, config, progress)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Growth calibration for the recurrence-constant families.

Prints the normalized exponents and forward differences of log2 along the
R-family rows, in particular the second differences of log2 R_6(d), whose
limit of 1 is the quantity frozen into the regression suite.

Usage: python scripts/calibrate_growth.py [--family R] [--s 6] [--start 10]
       [--stop 42]
"""

import argparse

from dsseq.bounds import growth_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", default="R", choices=["P", "Q", "R", "mu"])
    ap.add_argument("--s", type=int, default=6)
    ap.add_argument("--start", type=int, default=10)
    ap.add_argument("--stop", type=int, default=42)
    args = ap.parse_args()

    rep = growth_check(args.family, args.s, range(args.start, args.stop + 1))
    print(rep.render())
    tail = [(r.index, r.diff2) for r in rep.rows
            if r.diff2 is not None and r.index >= args.start + 10]
    if tail:
        worst = max(abs(d2 - 1) for _, d2 in tail)
        print(f"\nmax |diff2 - 1| over idx >= {args.start + 10}: {worst:.3e}")
        print("frozen regression band: 1e-4 (expected analytic band ~1e-2)")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Measure the empirical constants the bound evaluator relies on.

* c_s: the max deviation between the plain inverse hierarchy and its
  recurrence-friendly variant (which is parameterized by the threshold
  m0(s)), over 2 <= k <= 4 and x <= 10^6.
* The additive constants in the special-block/Ackermann sandwich:
  smallest c0 with S_d(m) <= A_d(m + c0) and smallest c with
  N_d(m) <= A_d(m + c), over every materializable cell.
"""

import argparse

from dsseq.ackermann import ackermann_level_val, compare_towers, tower
from dsseq.bounds import empirical_c, m0
from dsseq.constructions import z_stats
from dsseq.errors import BudgetExceeded


def a_reaches(d, m, target):
    v = ackermann_level_val(d, m)
    if isinstance(v, int):
        return v >= target
    return compare_towers(v.lower, tower(0, target)) >= 0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--x-max", type=int, default=10**6)
    ap.add_argument("--s-values", type=int, nargs="+", default=[3, 4, 5])
    args = ap.parse_args()

    for s in args.s_values:
        c = empirical_c(s, x_max=args.x_max)
        print(f"s={s}: m0={m0(s)}, measured c_s={c} (k<=4, x<={args.x_max})")

    worst_c0, worst_c, cells = 0, 0, 0
    for d in range(2, 8):
        for m in range(1, 65):
            try:
                st = z_stats(d, m)
            except BudgetExceeded:
                break
            cells += 1
            c0 = 0
            while not a_reaches(d, m + c0, st.special_blocks):
                c0 += 1
            worst_c0 = max(worst_c0, c0)
            if d >= 3 and m >= 2:
                c = 0
                while not a_reaches(d, m + c, st.symbols):
                    c += 1
                worst_c = max(worst_c, c)
    print(f"over {cells} materializable cells: "
          f"S_d(m) <= A_d(m+{worst_c0}); N_d(m) <= A_d(m+{worst_c}) "
          f"(d >= 3, m >= 2 for the symbol count)")


if __name__ == "__main__":
    main()

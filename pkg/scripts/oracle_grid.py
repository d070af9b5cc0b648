#!/usr/bin/env python3
"""Compute (and cache) the desk-scale oracle grid used by the bridge checks.

Prints a table of exact extremal values with node counts.  With --cache the
certificates are persisted, making later suite runs instant.
"""

import argparse

from dsseq.core import seq
from dsseq.oracles import (OracleCache, SearchBudget, UNBOUNDED,
                           oracle_ads_symbols, oracle_aff_symbols, oracle_ex,
                           oracle_f, oracle_lambda, oracle_psi)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cache", default=None)
    ap.add_argument("--max-nodes", type=int, default=200_000_000)
    args = ap.parse_args()
    cache = OracleCache(args.cache) if args.cache else None
    budget = SearchBudget(max_nodes=args.max_nodes)

    def show(res):
        val = "inf" if res.value is UNBOUNDED else res.value
        tag = "" if res.exact else "  (lower bound)"
        print(f"{res.fn}{res.params} = {val:>4}   nodes={res.nodes}{tag}")

    for s in (1, 2, 3):
        for n in range(1, 7 if s < 3 else 4):
            show(oracle_lambda(s, n, budget, cache))
    for m in (2, 4, 6):
        for n in (2, 3):
            show(oracle_psi(3, m, n, budget, cache))
    for m in range(2, 9):
        show(oracle_ads_symbols(1, 2, m, budget, cache))
    for m in range(3, 8):
        show(oracle_ads_symbols(2, 3, m, budget, cache))
    for m in range(4, 8):
        show(oracle_ads_symbols(3, 4, m, budget, cache))
    for r in (2, 3):
        for m in range(2, 6):
            show(oracle_aff_symbols(r, 2, 2, m, budget, cache))
    for pattern in ("aba", "abab"):
        for n in (2, 3):
            show(oracle_ex(seq(pattern), n, budget, cache))
    for (r, s, n) in ((2, 2, 3), (2, 3, 3), (3, 2, 3)):
        show(oracle_f(r, s, n, budget, cache))


if __name__ == "__main__":
    main()

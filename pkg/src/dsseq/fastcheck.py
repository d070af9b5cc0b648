"""Verification-scale check that a sequence has no two-symbol alternation of length 5.

The desk-scale ``core.max_alternation`` enumerates symbol pairs, which is
quadratic in the alphabet and useless on construction outputs with 10^5+
symbols.  This module decides "max alternation <= 4" in O(L log L):

An alternation a b a b a exists iff some symbol b has two consecutive
occurrences (j1, j2) and some position p in the open gap (j1, j2) whose
symbol has an occurrence before j1 and another after j2.  Writing F[p], L[p]
for the first/last occurrence of the symbol at position p, that is

    exists gap (j1, j2):  exists p in (j1, j2):  F[p] < j1  and  L[p] > j2.

Processing gaps in increasing j1 while activating positions in increasing
F[p] turns this into max-in-range queries over activated L values, answered
by a segment tree.  The kernel is JIT-compiled with numba when available.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional, Sequence as Seq

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def _find_ababa_kernel(first, last, prev):  # pragma: no cover - jitted
    n = first.shape[0]
    size = 1
    while size < n:
        size *= 2
    # Segment tree over positions; tree[v] = max last-occurrence among
    # activated positions in v's range, -1 when none.
    tree = np.full(2 * size, -1, dtype=np.int64)

    gap_idx = np.nonzero(prev >= 0)[0]
    gap_order = np.argsort(prev[gap_idx])
    pos_order = np.argsort(first)

    pi = 0
    for gi in range(gap_idx.shape[0]):
        j2 = gap_idx[gap_order[gi]]
        j1 = prev[j2]
        # Activate every position whose symbol first occurs before j1.
        while pi < n and first[pos_order[pi]] < j1:
            p = pos_order[pi]
            v = size + p
            val = last[p]
            while v >= 1 and tree[v] < val:
                tree[v] = val
                v //= 2
            pi += 1
        lo = j1 + 1
        hi = j2 - 1
        if lo > hi:
            continue
        best = np.int64(-1)
        l = size + lo
        r = size + hi + 1
        while l < r:
            if l & 1:
                if tree[l] > best:
                    best = tree[l]
                l += 1
            if r & 1:
                r -= 1
                if tree[r] > best:
                    best = tree[r]
            l //= 2
            r //= 2
        if best > j2:
            # Violations are rare; recover a witness by direct scan.
            for p in range(lo, hi + 1):
                if last[p] > j2 and first[p] < j1:
                    return np.array([first[p], j1, p, j2, last[p]], dtype=np.int64)
    return np.empty(0, dtype=np.int64)


def _find_ababa_python(first, last, prev) -> Optional[tuple[int, ...]]:
    """Pure-Python mirror of the kernel, for environments without numba."""
    n = len(first)
    size = 1
    while size < n:
        size *= 2
    tree = [-1] * (2 * size)
    gap_list = sorted((prev[j], j) for j in range(n) if prev[j] >= 0)
    pos_order = sorted(range(n), key=lambda p: first[p])
    pi = 0
    for j1, j2 in gap_list:
        while pi < n and first[pos_order[pi]] < j1:
            p = pos_order[pi]
            v = size + p
            val = last[p]
            while v >= 1 and tree[v] < val:
                tree[v] = val
                v //= 2
            pi += 1
        lo, hi = j1 + 1, j2 - 1
        if lo > hi:
            continue
        best = -1
        l, r = size + lo, size + hi + 1
        while l < r:
            if l & 1:
                best = max(best, tree[l])
                l += 1
            if r & 1:
                r -= 1
                best = max(best, tree[r])
            l //= 2
            r //= 2
        if best > j2:
            for p in range(lo, hi + 1):
                if last[p] > j2 and first[p] < j1:
                    return (first[p], j1, p, j2, last[p])
    return None


def _occurrence_arrays(syms: np.ndarray):
    """Per-position first/last occurrence of the symbol, and previous occurrence."""
    n = syms.shape[0]
    nsym = int(syms.max()) + 1
    idx = np.arange(n, dtype=np.int64)
    first_of = np.full(nsym, n, dtype=np.int64)
    last_of = np.full(nsym, -1, dtype=np.int64)
    np.minimum.at(first_of, syms, idx)
    np.maximum.at(last_of, syms, idx)
    prev = np.full(n, -1, dtype=np.int64)
    order = np.argsort(syms, kind="stable")
    same = syms[order[1:]] == syms[order[:-1]]
    prev[order[1:][same]] = order[:-1][same]
    return first_of[syms], last_of[syms], prev


def find_alternation_of_5(symbols: Seq[int]) -> Optional[tuple[int, ...]]:
    """Positions (i1..i5) of an a b a b a subsequence, or None if alternation <= 4."""
    n = len(symbols)
    if n < 5:
        return None
    syms = np.asarray(symbols, dtype=np.int64)
    first, last, prev = _occurrence_arrays(syms)
    if _HAVE_NUMBA:
        hit = _find_ababa_kernel(first, last, prev)
        if hit.shape[0]:
            return tuple(int(x) for x in hit)
        return None
    return _find_ababa_python(list(first), list(last), list(prev))


def alternation_at_most(symbols: Seq[int], limit: int) -> bool:
    """True iff no two symbols alternate with length > limit.

    Fast paths: if every symbol occurs at most limit//2 times, no pair can
    alternate longer than limit; limit == 4 uses the sweep above.  Other
    limits fall back to the pairwise reference (fine at the sizes where they
    arise).
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    counts = Counter(symbols)
    if not counts:
        return True
    if 2 * max(counts.values()) <= limit:
        return True
    if limit == 4:
        return find_alternation_of_5(symbols) is None

    from .core import Sequence, max_alternation

    return max_alternation(Sequence(tuple(symbols))).length <= limit

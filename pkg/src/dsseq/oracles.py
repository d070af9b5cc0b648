"""Exact brute-force computation of the extremal functions at desk scale.

All searches walk canonical prefixes (a new symbol always gets the next
unused id, killing renaming symmetry) with incremental per-pair alternation
automata, and report a certificate: value, witness, visited-node count, and
whether the search ran to completion.  Values proven infinite are reported
with the UNBOUNDED sentinel by rule, never by search.

Certificates can be persisted to a line-delimited JSON cache keyed by
(function, parameters) so acceptance suites re-run without recomputation.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from math import comb
from typing import Optional, Union

from .core import AdsParameters, BlockedSequence, Sequence
from .errors import InvalidInput


class _Unbounded:
    __slots__ = ()

    def __repr__(self):
        return "UNBOUNDED"


UNBOUNDED = _Unbounded()

DEFAULT_MAX_NODES = 50_000_000


@dataclass(frozen=True)
class SearchBudget:
    """Search limits.  A result truncated by any limit is marked inexact.

    ``time_limit`` (seconds) makes node counts timing-dependent, so it is
    never set by the deterministic acceptance suite.
    """

    max_nodes: int = DEFAULT_MAX_NODES
    max_length: Optional[int] = None
    time_limit: Optional[float] = None

    def __post_init__(self):
        if self.max_nodes < 1:
            raise InvalidInput("node budget must be positive")
        if self.max_length is not None and self.max_length < 0:
            raise InvalidInput("length budget must be nonnegative")


@dataclass(frozen=True)
class OracleResult:
    fn: str
    params: tuple
    value: Union[int, _Unbounded]
    witness: Optional[BlockedSequence]
    exact: bool
    nodes: int

    def __repr__(self):
        tag = "exact" if self.exact else "lower-bound"
        return (f"OracleResult({self.fn}{self.params} = {self.value} "
                f"[{tag}, {self.nodes} nodes])")


class _Stop(Exception):
    pass


class _Counter:
    __slots__ = ("nodes", "limit", "deadline")

    def __init__(self, limit: int, time_limit: Optional[float] = None):
        self.nodes = 0
        self.limit = limit
        self.deadline = None if time_limit is None else time.monotonic() + time_limit

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise _Stop
        if self.deadline is not None and self.nodes % 4096 == 0 \
                and time.monotonic() > self.deadline:
            raise _Stop


# ---------------------------------------------------------------------------
# Maximum-length search for order-s sequences (lambda and psi)
# ---------------------------------------------------------------------------

def _ds_length_search(s: int, n: int, m_blocks: Optional[int],
                      budget: SearchBudget):
    """Longest 2-sparse sequence on <= n symbols with no alternation of
    length s+2; with m_blocks set, additionally partitionable into that many
    distinct-symbol blocks (the left-to-right forced partition is minimal,
    so only it is explored)."""
    limit = s + 1
    alt_len = [[0] * n for _ in range(n)]
    alt_last = [[-1] * n for _ in range(n)]
    seq: list[int] = []
    block_fill: set[int] = set()
    counter = _Counter(budget.max_nodes, budget.time_limit)
    best: list = [0, ()]
    length_cap = budget.max_length
    cap_was_hit = [False]

    def rec(last: int, used: int, blocks_used: int, fill: set):
        counter.tick()
        if len(seq) > best[0]:
            best[0] = len(seq)
            best[1] = tuple(seq)
        if length_cap is not None and len(seq) >= length_cap:
            cap_was_hit[0] = True
            return
        top = used + 1 if used < n else n
        for x in range(top):
            if x == last:
                continue
            # Alternation legality against all present symbols.  A pair's
            # stored state is its true alternation length (first contact
            # jumps to 2: the partner already contributes one run).
            ok = True
            for y in range(used):
                if y == x:
                    continue
                la = alt_last[x][y]
                prospective = 2 if la == -1 else (alt_len[x][y] + 1 if la != x else alt_len[x][y])
                if prospective > limit:
                    ok = False
                    break
            if not ok:
                continue
            nb = blocks_used
            new_fill = fill
            if m_blocks is not None:
                if x in fill:
                    if blocks_used + 1 > m_blocks:
                        continue
                    nb = blocks_used + 1
                    new_fill = {x}
                else:
                    new_fill = fill | {x}
            undo = []
            for y in range(used):
                if y == x:
                    continue
                la = alt_last[x][y]
                if la != x:
                    undo.append((y, alt_len[x][y], la))
                    nl = 2 if la == -1 else alt_len[x][y] + 1
                    alt_len[x][y] = nl
                    alt_len[y][x] = nl
                    alt_last[x][y] = x
                    alt_last[y][x] = x
            seq.append(x)
            rec(x, max(used, x + 1), nb, new_fill)
            seq.pop()
            for y, ln, la in undo:
                alt_len[x][y] = ln
                alt_len[y][x] = ln
                alt_last[x][y] = la
                alt_last[y][x] = la

    exact = True
    try:
        rec(-1, 0, 1, block_fill)
    except _Stop:
        exact = False
    if cap_was_hit[0]:
        exact = False  # a user length cap may have hidden longer sequences
    return best[0], best[1], exact, counter.nodes


def oracle_lambda(s: int, n: int, budget: SearchBudget = SearchBudget(),
                  cache: "OracleCache | None" = None) -> OracleResult:
    """Maximum length of an order-s sequence on n distinct symbols.

    Exhaustive over canonical prefixes; no analytic length cap, so a
    completed search certifies optimality on its own.
    """
    if s < 1 or n < 0:
        raise InvalidInput("oracle_lambda requires s >= 1, n >= 0")
    params = (s, n)
    hit = cache.get("lambda", params) if cache else None
    if hit:
        return hit
    value, wit, exact, nodes = _ds_length_search(s, n, None, budget)
    result = OracleResult("lambda", params, value,
                          BlockedSequence.of([wit]), exact, nodes)
    if cache:
        cache.put(result)
    return result


def oracle_psi(s: int, m: int, n: int, budget: SearchBudget = SearchBudget(),
               cache: "OracleCache | None" = None) -> OracleResult:
    """Maximum length of an order-s sequence on n symbols splittable into at
    most m distinct-symbol blocks."""
    if s < 1 or m < 1 or n < 0:
        raise InvalidInput("oracle_psi requires s >= 1, m >= 1, n >= 0")
    params = (s, m, n)
    hit = cache.get("psi", params) if cache else None
    if hit:
        return hit
    value, wit, exact, nodes = _ds_length_search(s, n, m, budget)
    witness = _greedy_distinct_blocks(wit)
    result = OracleResult("psi", params, value, witness, exact, nodes)
    if cache:
        cache.put(result)
    return result


def _greedy_distinct_blocks(symbols) -> BlockedSequence:
    blocks: list[list[int]] = []
    cur: list[int] = []
    fill: set[int] = set()
    for x in symbols:
        if x in fill:
            blocks.append(cur)
            cur = [x]
            fill = {x}
        else:
            cur.append(x)
            fill.add(x)
    blocks.append(cur)
    return BlockedSequence.of(blocks)


# ---------------------------------------------------------------------------
# Maximum-symbols search for almost-DS sequences
# ---------------------------------------------------------------------------

def _ads_symbol_cap(s: int, k: int, m: int) -> int:
    """A proven upper bound on the alphabet, used to bound the search.

    s = 1: symbols' spans are pairwise disjoint (any overlap yields an aba),
    consecutive spans share at most one block, and each span meets k blocks,
    so n*k - (n-1) <= m.  s >= 2 (with k >= s+1): two symbols whose s-1
    interior occurrences meet the same s-1 interior blocks alternate with
    length s+2, so symbols inject into (s-1)-subsets of m-2 blocks.
    """
    if m < k:
        return 0
    if s == 1:
        return (m - 1) // (k - 1)
    return comb(m - 2, s - 1)


def _ads_search(s: int, k: int, m: int, cap: int, budget: SearchBudget,
                seed: int = 0):
    """Maximize distinct symbols: <= m distinct-symbol blocks, every symbol
    exactly k occurrences (trimming extra occurrences of a symbol never
    invalidates a sequence, so "at least k" and "exactly k" have the same
    maximum), no alternation of length s+2; interface repeats allowed.

    For k == s+1 the interior pigeonhole is applied as a prune: two symbols
    whose interior occurrences (all but first and last) land in the same
    s-1 blocks alternate with length s+2 no matter how blocks are ordered,
    so interior block sets must be distinct.
    """
    limit = s + 1
    size = cap + 1  # ids 0..cap-1 may appear; one slot of slack
    alt_len = [[0] * size for _ in range(size)]
    alt_last = [[-1] * size for _ in range(size)]
    counts = [0] * size
    occ_blocks: list[list[int]] = [[] for _ in range(size)]
    interior_used: set = set()
    pigeonhole = k == s + 1 and k >= 3
    blocks: list[list[int]] = [[]]
    counter = _Counter(budget.max_nodes, budget.time_limit)
    best: list = [seed, None]

    def interior_capacity(bi: int) -> int:
        """Unused interior keys whose last block can still be placed."""
        if k == 3:
            return sum(1 for b in range(max(bi, 1), m - 1)
                       if (b,) not in interior_used)
        free = 0
        for b in range(max(bi, 1), m - 1):
            for a in range(1, b + 1):
                if a != b and (a, b) not in interior_used:
                    free += 1
        return free

    def rec(used: int, open_syms: int, pending: int):
        counter.tick()
        bi = len(blocks) - 1
        fill = blocks[-1]
        if open_syms == 0 and used > best[0]:
            best[0] = used
            best[1] = [list(b) for b in blocks]
        can_new = used < cap and (m - bi) >= k
        if pigeonhole:
            # Every symbol whose interior block set is not yet committed
            # still needs a distinct unused key with a future block.
            room = interior_capacity(bi)
            if pending > room:
                return
            potential = min(cap, used - pending + room) if can_new else used
        else:
            potential = used + (cap - used if can_new else 0)
        if potential <= best[0]:
            return
        # Children: append an existing or new symbol, or close the block.
        top = used + 1 if can_new else used
        for x in range(top):
            is_new = x == used
            if not is_new:
                if counts[x] >= k or x in fill:
                    continue
            interior_key = None
            if pigeonhole and not is_new and counts[x] == k - 2:
                # This is x's (k-1)-th occurrence: its interior block set
                # is now determined.
                interior_key = tuple(occ_blocks[x][1:]) + (bi,)
                if interior_key in interior_used:
                    continue
            ok = True
            for y in range(used):
                if y == x:
                    continue
                la = alt_last[x][y]
                prospective = 2 if la == -1 else (alt_len[x][y] + 1 if la != x else alt_len[x][y])
                if prospective > limit:
                    ok = False
                    break
            if not ok:
                continue
            undo = []
            for y in range(used):
                if y == x:
                    continue
                la = alt_last[x][y]
                if la != x:
                    undo.append((y, alt_len[x][y], la))
                    nl = 2 if la == -1 else alt_len[x][y] + 1
                    alt_len[x][y] = nl
                    alt_len[y][x] = nl
                    alt_last[x][y] = x
                    alt_last[y][x] = x
            counts[x] += 1
            fill.append(x)
            occ_blocks[x].append(bi)
            if interior_key is not None:
                interior_used.add(interior_key)
            dpend = (1 if is_new and k > 2 else 0) \
                - (1 if not is_new and counts[x] == k - 1 else 0)
            rec(used + (1 if is_new else 0),
                open_syms + (1 if is_new else 0) - (1 if counts[x] == k else 0),
                pending + dpend)
            if interior_key is not None:
                interior_used.discard(interior_key)
            occ_blocks[x].pop()
            fill.pop()
            counts[x] -= 1
            for y, ln, la in undo:
                alt_len[x][y] = ln
                alt_len[y][x] = ln
                alt_last[x][y] = la
                alt_last[y][x] = la
        if fill and bi + 1 < m:
            # Closing must leave every open symbol enough future blocks.
            avail = m - bi - 1
            for y in range(used):
                if counts[y] < k and k - counts[y] > avail:
                    return
            blocks.append([])
            rec(used, open_syms, pending)
            blocks.pop()

    exact = True
    try:
        rec(0, 0, 0)
    except _Stop:
        exact = False
    witness = None
    if best[1] is not None:
        witness = BlockedSequence.of(best[1])
    return best[0], witness, exact, counter.nodes


def oracle_ads_symbols(s: int, k: int, m: int,
                       budget: SearchBudget = SearchBudget(),
                       cache: "OracleCache | None" = None,
                       warm_start: bool = True) -> OracleResult:
    """Maximum alphabet of an order-s, multiplicity-k, m-block almost-DS
    sequence.  Zero below m = k; infinite by rule when k <= s (k blocks of
    arbitrarily many symbols, descending then ascending, alternate at most
    k+1 <= s+1 times)."""
    ads = AdsParameters(s, k, m)  # validates positivity
    params = (s, k, m)
    hit = cache.get("ads", params) if cache else None
    if hit:
        return hit
    if not ads.feasible:  # m < k leaves no room for any symbol
        result = OracleResult("ads", params, 0, None, True, 0)
    elif k <= s:
        result = OracleResult("ads", params, UNBOUNDED, None, True, 0)
    else:
        cap = _ads_symbol_cap(s, k, m)
        seed_value, seed_witness = 0, None
        if warm_start and m > k:
            # Any (m-1)-block witness is an m-block witness, so the previous
            # cell's value soundly pre-loads the incumbent.
            prev = oracle_ads_symbols(s, k, m - 1, budget, cache,
                                      warm_start=True)
            if isinstance(prev.value, int) and prev.exact:
                seed_value, seed_witness = prev.value, prev.witness
        value, wit, exact, nodes = _dispatch_ads(s, k, m, cap, budget,
                                                 seed_value)
        if wit is None and value == seed_value:
            wit = seed_witness
        result = OracleResult("ads", params, value, wit, exact, nodes)
    if cache:
        cache.put(result)
    return result


def _dispatch_ads(s: int, k: int, m: int, cap: int, budget: SearchBudget,
                  seed: int = 0):
    """Use the JIT kernel on the pigeonhole cells it supports (identical
    tree and node accounting); fall back to the Python engine elsewhere."""
    from . import _adskernel

    if (_adskernel.HAVE_NUMBA and budget.time_limit is None
            and k == s + 1 and s in (2, 3) and cap >= 1):
        value, complete, nodes, moves = _adskernel.ads_search_kernel(
            s, k, m, cap, budget.max_nodes, seed)
        witness = None
        if value > seed:
            witness = BlockedSequence.of(_adskernel.decode_moves(moves))
        return int(value), witness, bool(complete), int(nodes)
    return _ads_search(s, k, m, cap, budget, seed)


# ---------------------------------------------------------------------------
# Maximum-symbols search for almost-formation-free sequences
# ---------------------------------------------------------------------------

class _FormationAutomaton:
    """Greedy window states for every r-subset of the used alphabet."""

    __slots__ = ("r", "s", "state")

    def __init__(self, r: int, s: int):
        self.r = r
        self.s = s
        self.state = {}  # sorted tuple -> [windows, seen_bitmask]

    def introduce(self, x: int, used: int):
        """Register subsets containing the new symbol x (ids 0..used-1 exist).

        Every existing symbol has occurred already, so for each subset the
        pre-x greedy scan saw exactly the other r-1 members."""
        from itertools import combinations

        created = []
        for sub in combinations(range(used), self.r - 1):
            key = tuple(sorted(sub + (x,)))
            mask = 0
            for y in sub:
                mask |= 1 << y
            self.state[key] = [0, mask]
            created.append(key)
        return created

    def forget(self, keys):
        for key in keys:
            del self.state[key]

    def would_complete_too_many(self, x: int) -> bool:
        bit = 1 << x
        for key, st in self.state.items():
            if x not in key:
                continue
            if st[1] | bit == self._full(key) and st[0] + 1 >= self.s:
                return True
        return False

    def _full(self, key) -> int:
        mask = 0
        for y in key:
            mask |= 1 << y
        return mask

    def push(self, x: int):
        bit = 1 << x
        undo = []
        for key, st in self.state.items():
            if x not in key:
                continue
            undo.append((key, st[0], st[1]))
            if st[1] | bit == self._full(key):
                st[0] += 1
                st[1] = 0
            else:
                st[1] |= bit
        return undo

    def pop(self, undo):
        for key, w, m in undo:
            st = self.state[key]
            st[0] = w
            st[1] = m


def _aff_symbol_cap(r: int, s: int, k: int, m: int) -> int:
    """Proven alphabet bounds: (r-1)(m-1) + 1 at s = k = 2 (one above the
    separator-counting optimum, so exhaustion certifies it); the interior
    pigeonhole (r-1)*C(m-2, s-2) for k >= s >= 3."""
    if m < k:
        return 0
    if s == 2:
        return (r - 1) * (m - 1) + 1
    return (r - 1) * comb(m - 2, s - 2)


def _aff_search(r: int, s: int, k: int, m: int, cap: int, budget: SearchBudget,
                seed: int = 0):
    counts = [0] * (cap + 1)
    blocks: list[list[int]] = [[]]
    auto = _FormationAutomaton(r, s)
    counter = _Counter(budget.max_nodes, budget.time_limit)
    best: list = [seed, None]

    def rec(used: int, open_syms: int):
        counter.tick()
        bi = len(blocks) - 1
        fill = blocks[-1]
        if open_syms == 0 and used > best[0]:
            best[0] = used
            best[1] = [list(b) for b in blocks]
        can_new = used < cap and (m - bi) >= k
        potential = used + (cap - used if can_new else 0)
        if potential <= best[0]:
            return
        top = used + 1 if can_new else used
        for x in range(top):
            is_new = x == used
            if not is_new and (counts[x] >= k or x in fill):
                continue
            created = auto.introduce(x, used) if is_new else None
            if auto.would_complete_too_many(x):
                if created:
                    auto.forget(created)
                continue
            undo = auto.push(x)
            counts[x] += 1
            fill.append(x)
            rec(used + (1 if is_new else 0),
                open_syms + (1 if is_new else 0) - (1 if counts[x] == k else 0))
            fill.pop()
            counts[x] -= 1
            auto.pop(undo)
            if created:
                auto.forget(created)
        if fill and bi + 1 < m:
            if s == 2 and open_syms >= r:
                # Every open symbol straddles the separator being created;
                # once they complete, r straddlers make an (r, 2)-formation,
                # so no completion of this branch is formation-free.
                return
            avail = m - bi - 1
            for y in range(used):
                if counts[y] < k and k - counts[y] > avail:
                    return
            blocks.append([])
            rec(used, open_syms)
            blocks.pop()

    exact = True
    try:
        rec(0, 0)
    except _Stop:
        exact = False
    witness = BlockedSequence.of(best[1]) if best[1] is not None else None
    return best[0], witness, exact, counter.nodes


def oracle_aff_symbols(r: int, s: int, k: int, m: int,
                       budget: SearchBudget = SearchBudget(),
                       cache: "OracleCache | None" = None,
                       warm_start: bool = True) -> OracleResult:
    """Maximum alphabet of an (r, s)-formation-free blocked sequence with
    every symbol in at least k blocks.  Infinite by rule when k < s (k
    identical blocks admit only k disjoint windows); for r = 1 a symbol with
    s occurrences is itself a formation, so k >= s forces an empty alphabet."""
    if r < 1 or s < 1 or k < 1 or m < 1:
        raise InvalidInput("oracle_aff_symbols requires positive parameters")
    params = (r, s, k, m)
    hit = cache.get("aff", params) if cache else None
    if hit:
        return hit
    if m < k:
        result = OracleResult("aff", params, 0, None, True, 0)
    elif k < s:
        result = OracleResult("aff", params, UNBOUNDED, None, True, 0)
    elif r == 1:
        result = OracleResult("aff", params, 0, None, True, 0)
    else:
        cap = _aff_symbol_cap(r, s, k, m)
        seed_value, seed_witness = 0, None
        if warm_start and s == 2 and k == 2:
            # The doubled-groups construction is validated and then used as
            # the incumbent, so the search only has to certify optimality.
            seed_witness = _validated_aff_extremal(r, m)
            if seed_witness is not None:
                seed_value = seed_witness.sequence.alphabet_size
        value, wit, exact, nodes = _aff_search(r, s, k, m, cap, budget,
                                               seed_value)
        if wit is None and value == seed_value:
            wit = seed_witness
        result = OracleResult("aff", params, value, wit, exact, nodes)
    if cache:
        cache.put(result)
    return result


def _validated_aff_extremal(r: int, m: int) -> Optional[BlockedSequence]:
    """Build the extremal (r, 2, 2) witness and verify it from scratch."""
    from .formations import build_aff_extremal, contains_formation

    b = build_aff_extremal(r, m)
    if not b.blocks_have_distinct_symbols() or b.block_count > m:
        return None
    counts: dict = {}
    for block in b.blocks:
        for x in block:
            counts[x] = counts.get(x, 0) + 1
    if counts and min(counts.values()) < 2:
        return None
    try:
        if contains_formation(b.sequence, r, 2) is not None:
            return None
    except Exception:
        return None
    return b


# ---------------------------------------------------------------------------
# Maximum-length searches under sparsity (Ex and F)
# ---------------------------------------------------------------------------

def _sparse_length_search(r: int, n: int, length_cap: int,
                          budget: SearchBudget,
                          pattern: Optional[Sequence] = None,
                          formation: Optional[tuple[int, int]] = None):
    """Longest r-sparse sequence on <= n symbols avoiding the given pattern
    (as a subsequence up to renaming) or (r', s')-formation.

    ``length_cap`` must be a proven upper bound on the value, so stopping
    there does not cost exactness."""
    seq: list[int] = []
    counter = _Counter(budget.max_nodes, budget.time_limit)
    best: list = [0, ()]

    auto = None
    if formation is not None:
        fr, fs = formation
        auto = _FormationAutomaton(fr, fs)

    # Pattern NFA: states (matched_len, mapping) with mapping an r_u-tuple,
    # -1 for unbound; reaching matched_len == |u| means containment.
    u = pattern
    if u is not None:
        r_u = u.alphabet_size
        init_state = (0, (-1,) * r_u)

    def pattern_ok_and_next(states, y):
        out = set(states)
        target_full = len(u)
        for mlen, mp in states:
            t = u[mlen]
            if mp[t] == y:
                nxt = (mlen + 1, mp)
            elif mp[t] == -1 and y not in mp:
                nmp = list(mp)
                nmp[t] = y
                nxt = (mlen + 1, tuple(nmp))
            else:
                continue
            if nxt[0] == target_full:
                return None
            out.add(nxt)
        return out

    def rec(used: int, states):
        counter.tick()
        if len(seq) > best[0]:
            best[0] = len(seq)
            best[1] = tuple(seq)
        if len(seq) >= length_cap:
            return
        recent = seq[-(r - 1):] if r > 1 else ()
        top = used + 1 if used < n else n
        for x in range(top):
            if x in recent:
                continue
            is_new = x == used
            created = None
            if auto is not None:
                if is_new:
                    created = auto.introduce(x, used)
                if auto.would_complete_too_many(x):
                    if created:
                        auto.forget(created)
                    continue
            nstates = states
            if u is not None:
                nstates = pattern_ok_and_next(states, x)
                if nstates is None:
                    if created:
                        auto.forget(created)
                    continue
            undo = auto.push(x) if auto is not None else None
            seq.append(x)
            rec(used + (1 if is_new else 0), nstates)
            seq.pop()
            if undo is not None:
                auto.pop(undo)
            if created:
                auto.forget(created)

    exact = True
    try:
        rec(0, frozenset([init_state]) if u is not None else None)
    except _Stop:
        exact = False
    return best[0], best[1], exact, counter.nodes


def oracle_ex(u: Sequence, n: int, budget: SearchBudget = SearchBudget(),
              cache: "OracleCache | None" = None) -> OracleResult:
    """Maximum length of a ||u||-sparse, u-free sequence on n symbols."""
    from .core import canonicalize

    if len(u) == 0:
        raise InvalidInput("the forbidden pattern must be nonempty")
    u = canonicalize(u)
    r = u.alphabet_size
    params = (tuple(u.symbols), n)
    hit = cache.get("ex", params) if cache else None
    if hit:
        return hit
    if n < r:
        # u-freeness is vacuous and r-sparsity caps the length at n.
        wit = BlockedSequence.of([list(range(n))])
        result = OracleResult("ex", params, n, wit, True, 0)
    else:
        proven_cap = len(u) * n**r  # finiteness bound via formation containment
        cap = proven_cap
        if budget.max_length is not None:
            cap = min(cap, budget.max_length)
        value, wit, exact, nodes = _sparse_length_search(
            r, n, cap, budget, pattern=u)
        if value >= cap and cap < proven_cap:
            exact = False  # truncated by the user length budget
        result = OracleResult("ex", params, value,
                              BlockedSequence.of([wit]), exact, nodes)
    if cache:
        cache.put(result)
    return result


def oracle_f(r: int, s: int, n: int, budget: SearchBudget = SearchBudget(),
             cache: "OracleCache | None" = None) -> OracleResult:
    """Maximum length of an r-sparse, (r, s)-formation-free sequence."""
    if r < 1 or s < 1 or n < 0:
        raise InvalidInput("oracle_f requires r >= 1, s >= 1, n >= 0")
    params = (r, s, n)
    hit = cache.get("f", params) if cache else None
    if hit:
        return hit
    if n < r:
        wit = BlockedSequence.of([list(range(n))])
        result = OracleResult("f", params, n, wit, True, 0)
    else:
        proven_cap = s * n**r  # pigeonhole finiteness bound
        cap = proven_cap
        if budget.max_length is not None:
            cap = min(cap, budget.max_length)
        value, wit, exact, nodes = _sparse_length_search(
            r, n, cap, budget, formation=(r, s))
        if value >= cap and cap < proven_cap:
            exact = False  # truncated by the user length budget
        result = OracleResult("f", params, value,
                              BlockedSequence.of([wit]), exact, nodes)
    if cache:
        cache.put(result)
    return result


# ---------------------------------------------------------------------------
# Certificate cache
# ---------------------------------------------------------------------------

class OracleCache:
    """Line-delimited JSON store of oracle certificates, keyed by params.

    Writes are single appends; concurrent writers must serialize externally
    (single-writer or atomic-append semantics).
    """

    def __init__(self, path: str):
        self.path = path
        self._mem: dict = {}
        if os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    rec = json.loads(line)
                    self._mem[(rec["fn"], tuple(rec["params"]))] = rec

    @staticmethod
    def _decode(rec: dict) -> OracleResult:
        value = UNBOUNDED if rec["value"] == "unbounded" else rec["value"]
        wit = None
        if rec.get("witness") is not None:
            from .core import from_json_obj

            wit = from_json_obj(rec["witness"])
        return OracleResult(rec["fn"], tuple(rec["params"]), value, wit,
                            rec["exact"], rec["nodes"])

    def get(self, fn: str, params: tuple) -> Optional[OracleResult]:
        rec = self._mem.get((fn, _flatten_params(params)))
        return self._decode(rec) if rec else None

    def put(self, result: OracleResult) -> None:
        from .core import to_json_obj

        rec = {
            "fn": result.fn,
            "params": list(_flatten_params(result.params)),
            "value": "unbounded" if result.value is UNBOUNDED else result.value,
            "exact": result.exact,
            "nodes": result.nodes,
            "witness": None if result.witness is None else to_json_obj(result.witness),
        }
        key = (result.fn, _flatten_params(result.params))
        if key in self._mem:
            return
        self._mem[key] = rec
        with open(self.path, "a") as fh:
            fh.write(json.dumps(rec, separators=(",", ":")) + "\n")


def _flatten_params(params: tuple) -> tuple:
    out = []
    for p in params:
        if isinstance(p, tuple):
            out.append("|".join(str(x) for x in p))
        else:
            out.append(p)
    return tuple(out)


def enumerate_ds_sequences(s: int, n_max: int, len_max: int):
    """Yield every canonical order-s sequence on <= n_max symbols with
    length in [1, len_max] (2-sparse, alternation <= s+1)."""
    if s < 1 or n_max < 1 or len_max < 1:
        raise InvalidInput("enumerate_ds_sequences requires positive parameters")
    limit = s + 1
    n = n_max
    alt_len = [[0] * n for _ in range(n)]
    alt_last = [[-1] * n for _ in range(n)]
    seq: list[int] = []

    def rec(last: int, used: int):
        if seq:
            yield Sequence(tuple(seq))
        if len(seq) >= len_max:
            return
        top = used + 1 if used < n else n
        for x in range(top):
            if x == last:
                continue
            ok = True
            for y in range(used):
                if y == x:
                    continue
                la = alt_last[x][y]
                prospective = 2 if la == -1 else (alt_len[x][y] + 1 if la != x else alt_len[x][y])
                if prospective > limit:
                    ok = False
                    break
            if not ok:
                continue
            undo = []
            for y in range(used):
                if y == x:
                    continue
                la = alt_last[x][y]
                if la != x:
                    undo.append((y, alt_len[x][y], la))
                    nl = 2 if la == -1 else alt_len[x][y] + 1
                    alt_len[x][y] = nl
                    alt_len[y][x] = nl
                    alt_last[x][y] = x
                    alt_last[y][x] = x
            seq.append(x)
            yield from rec(x, max(used, x + 1))
            seq.pop()
            for y, ln, la in undo:
                alt_len[x][y] = ln
                alt_len[y][x] = ln
                alt_last[x][y] = la
                alt_last[y][x] = la

    yield from rec(-1, 0)

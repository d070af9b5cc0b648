"""JIT-compiled inner loop for the almost-DS alphabet search.

Mirrors ``oracles._ads_search`` move for move (same child order, same node
accounting) for the pigeonhole cases k == s+1 with s in {2, 3}, where the
interior block set of a symbol is a single block or a pair and fits in a
small integer key.  The pure-Python engine remains the reference; tests
compare the two on every cell they can both afford.
"""

from __future__ import annotations

import numpy as np

try:  # pragma: no cover
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def ads_search_kernel(s, k, m, cap, max_nodes, seed):  # pragma: no cover - jitted
    """Returns (value, complete, nodes, best_moves) where best_moves encodes
    the witness as applied moves (symbol id, or -2 for block close), -3
    terminated.  ``seed`` pre-loads the incumbent value (sound when a valid
    witness of that size is known, e.g. from the m-1 cell)."""
    limit = s + 1
    n = cap
    maxd = k * cap + m + 2

    alt_len = np.zeros((n + 1, n + 1), np.int8)
    alt_last = np.full((n + 1, n + 1), -1, np.int8)
    counts = np.zeros(n + 1, np.int8)
    occ_blk = np.full((n + 1, k + 1), -1, np.int8)
    fill = np.zeros((m + 1, n + 1), np.uint8)         # fill[bi][x]
    interior_used = np.zeros(128 * 128 + 128, np.uint8)

    used = np.zeros(maxd, np.int16)
    open_syms = np.zeros(maxd, np.int16)
    bi_arr = np.zeros(maxd, np.int16)
    try_next = np.zeros(maxd, np.int16)
    moves = np.full(maxd, -3, np.int16)
    undo_cnt = np.zeros(maxd, np.int16)
    undo_y = np.zeros((maxd, n + 1), np.int16)
    undo_len = np.zeros((maxd, n + 1), np.int8)
    undo_last = np.zeros((maxd, n + 1), np.int8)
    interior_added = np.full(maxd, -1, np.int32)

    pending = np.zeros(maxd, np.int16)

    best = seed
    best_moves = np.full(maxd, -3, np.int16)
    nodes = 0
    complete = True

    lvl = 0
    used[0] = 0
    open_syms[0] = 0
    bi_arr[0] = 0
    try_next[0] = 0
    pending[0] = 0
    entering = True

    while lvl >= 0:
        u = used[lvl]
        op = open_syms[lvl]
        bi = bi_arr[lvl]
        if entering:
            nodes += 1
            if nodes > max_nodes:
                complete = False
                break
            if op == 0 and u > best:
                best = u
                for i in range(lvl):
                    best_moves[i] = moves[i]
                for i in range(lvl, maxd):
                    best_moves[i] = -3
            can_new = u < cap and (m - bi) >= k
            # Interior-key capacity: open symbols with uncommitted interiors
            # each need a distinct unused key with a future block.
            lo_b = bi if bi > 1 else 1
            room = 0
            if k == 3:
                for b in range(lo_b, m - 1):
                    if interior_used[128 * 128 + b] == 0:
                        room += 1
            else:  # k == 4
                for b in range(lo_b, m - 1):
                    for a in range(1, b):
                        if interior_used[a * 128 + b] == 0:
                            room += 1
            if pending[lvl] > room:
                entering = False
                try_next[lvl] = cap + 2
                lvl -= 1
                continue
            if can_new:
                potential = u - pending[lvl] + room
                if potential > cap:
                    potential = cap
            else:
                potential = u
            if potential <= best:
                entering = False
                try_next[lvl] = cap + 2  # nothing to try
                lvl -= 1
                continue
            try_next[lvl] = 0
            entering = False
            continue

        # Undo the child we just returned from (if any was applied).
        nxt = try_next[lvl]
        if nxt > 0:
            prev_code = moves[lvl]
            if prev_code >= 0:
                x = prev_code
                for j in range(undo_cnt[lvl]):
                    y = undo_y[lvl, j]
                    alt_len[x, y] = undo_len[lvl, j]
                    alt_len[y, x] = undo_len[lvl, j]
                    alt_last[x, y] = undo_last[lvl, j]
                    alt_last[y, x] = undo_last[lvl, j]
                counts[x] -= 1
                occ_blk[x, counts[x]] = -1
                fill[bi, x] = 0
                if interior_added[lvl] >= 0:
                    interior_used[interior_added[lvl]] = 0
                    interior_added[lvl] = -1
            elif prev_code == -2:
                pass  # block close needs no state undo beyond bi bookkeeping

        can_new = used[lvl] < cap and (m - bi) >= k
        top = u + 1 if can_new else u
        advanced = False
        code = nxt
        while code <= cap:
            if code < top:
                x = code
                is_new = x == u
                if not is_new and (counts[x] >= k or fill[bi, x] == 1):
                    code += 1
                    continue
                ikey = -1
                if k == s + 1 and not is_new and counts[x] == k - 2:
                    if k == 3:
                        ikey = 128 * 128 + bi
                    else:  # k == 4
                        ikey = int(occ_blk[x, 1]) * 128 + bi
                    if interior_used[ikey] == 1:
                        code += 1
                        continue
                ok = True
                for y in range(u):
                    if y == x:
                        continue
                    la = alt_last[x, y]
                    if la == -1:
                        prospective = 2
                    elif la != x:
                        prospective = alt_len[x, y] + 1
                    else:
                        prospective = alt_len[x, y]
                    if prospective > limit:
                        ok = False
                        break
                if not ok:
                    code += 1
                    continue
                # Apply.
                cnt = 0
                for y in range(u):
                    if y == x:
                        continue
                    la = alt_last[x, y]
                    if la != x:
                        undo_y[lvl, cnt] = y
                        undo_len[lvl, cnt] = alt_len[x, y]
                        undo_last[lvl, cnt] = la
                        cnt += 1
                        nl = 2 if la == -1 else alt_len[x, y] + 1
                        alt_len[x, y] = nl
                        alt_len[y, x] = nl
                        alt_last[x, y] = x
                        alt_last[y, x] = x
                undo_cnt[lvl] = cnt
                occ_blk[x, counts[x]] = bi
                counts[x] += 1
                fill[bi, x] = 1
                if ikey >= 0:
                    interior_used[ikey] = 1
                    interior_added[lvl] = ikey
                else:
                    interior_added[lvl] = -1
                moves[lvl] = x
                try_next[lvl] = code + 1
                nu = u + 1 if is_new else u
                nop = op + (1 if is_new else 0) - (1 if counts[x] == k else 0)
                dpend = 0
                if is_new and k > 2:
                    dpend += 1
                if not is_new and counts[x] == k - 1:
                    dpend -= 1
                lvl += 1
                used[lvl] = nu
                open_syms[lvl] = nop
                bi_arr[lvl] = bi
                pending[lvl] = pending[lvl - 1] + dpend
                entering = True
                advanced = True
                break
            elif code == cap:
                # Close the current block.
                has_fill = False
                for x in range(u):
                    if fill[bi, x] == 1:
                        has_fill = True
                        break
                if not has_fill or bi + 1 >= m:
                    code += 1
                    continue
                feasible = True
                avail = m - bi - 1
                for y in range(u):
                    if counts[y] < k and k - counts[y] > avail:
                        feasible = False
                        break
                if not feasible:
                    code += 1
                    continue
                for x in range(u + 1):
                    fill[bi + 1, x] = 0
                moves[lvl] = -2
                try_next[lvl] = code + 1
                lvl += 1
                used[lvl] = u
                open_syms[lvl] = op
                bi_arr[lvl] = bi + 1
                pending[lvl] = pending[lvl - 1]
                entering = True
                advanced = True
                break
            code += 1
        if advanced:
            continue
        try_next[lvl] = cap + 2
        moves[lvl] = -3
        lvl -= 1

    return best, complete, nodes, best_moves


def decode_moves(moves) -> list:
    """Rebuild witness blocks from the applied-move encoding."""
    blocks: list[list[int]] = [[]]
    for code in moves:
        if code == -3:
            break
        if code == -2:
            blocks.append([])
        else:
            blocks[-1].append(int(code))
    return blocks

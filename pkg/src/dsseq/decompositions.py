"""Executable forms of the structural decompositions used in the bounds.

Contents: the greedy partition of a sequence into blocks of bounded
alternation order, the layer decomposition with local/global symbol
classification, the terminal-occurrence partition for order-3 sequences,
greedy r-sparsification, and the multiplicity-clustering transform that turns
a blocked sequence into one where every symbol occurs exactly k times.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Optional

from .core import (
    BlockedSequence,
    Sequence,
    Symbol,
    is_ds,
    is_r_sparse,
    max_alternation,
    remove_adjacent_repeats,
)
from .errors import InvalidInput


# ---------------------------------------------------------------------------
# Greedy partition into blocks of bounded order
# ---------------------------------------------------------------------------

def greedy_order_partition(s: Sequence, r: int) -> BlockedSequence:
    """Partition greedily left to right into maximal blocks of order r.

    Each block is a maximal contiguous run containing no two-symbol
    alternation of length r + 2; appending the next symbol to any non-final
    block would create one.  This greedy left-to-right split is optimal: it
    minimizes the number of order-r blocks (see tests for the brute-force
    cross-check).
    """
    if r < 1:
        raise InvalidInput("block order must be >= 1")
    if not is_r_sparse(s, 2):
        raise InvalidInput("greedy_order_partition requires a 2-sparse input")
    blocks: list[list[Symbol]] = []
    cur: list[Symbol] = []
    # Incremental alternation automaton for the current block: (a, b) ->
    # [length, last], with a < b.
    state: dict[tuple[Symbol, Symbol], list] = {}
    cur_syms: set[Symbol] = set()

    def would_violate(x: Symbol) -> bool:
        for y in cur_syms:
            if y == x:
                continue
            st = state.get((min(x, y), max(x, y)))
            # A first encounter starts from the partner's standing length 1.
            length, last = st if st else (1, y)
            if last != x and length + 1 >= r + 2:
                return True
        return False

    def push(x: Symbol) -> None:
        for y in cur_syms:
            if y == x:
                continue
            key = (min(x, y), max(x, y))
            st = state.get(key)
            if st is None:
                state[key] = [2, x]
            elif st[1] != x:
                st[0] += 1
                st[1] = x
        cur.append(x)
        cur_syms.add(x)

    for x in s:
        if cur and would_violate(x):
            blocks.append(cur)
            cur = []
            cur_syms = set()
            state = {}
        push(x)
    if cur:
        blocks.append(cur)
    return BlockedSequence.of(blocks)


def minimal_order_partition_size(s: Sequence, r: int) -> int:
    """Brute-force minimum number of contiguous order-r blocks (test oracle)."""
    n = len(s)
    ok = [[False] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        for j in range(i + 1, n + 1):
            sub = Sequence(s.symbols[i:j])
            ok[i][j] = max_alternation(sub).length <= r + 1
    INF = n + 1
    best = [INF] * (n + 1)
    best[0] = 0
    for j in range(1, n + 1):
        for i in range(j):
            if ok[i][j] and best[i] + 1 < best[j]:
                best[j] = best[i] + 1
    return best[n]


# ---------------------------------------------------------------------------
# Layer decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LayerDecomposition:
    """Blocks grouped into layers, symbols classified local/global.

    ``symbol_classes`` maps each symbol to ("local", layer) or ("global",
    None).  ``occurrence_classes`` maps (global symbol, layer) to one of
    "starting", "middle", "ending".  The extracted parts carry the
    occurrences of, respectively: local symbols (t1), starting occurrences
    (t2), middle occurrences (t3), ending occurrences (t4); each inherits the
    block structure of the input.
    """

    source: BlockedSequence
    layer_sizes: tuple[int, ...]
    symbol_classes: dict
    occurrence_classes: dict
    t1: BlockedSequence
    t2: BlockedSequence
    t3: BlockedSequence
    t4: BlockedSequence

    @property
    def layer_of_block(self) -> tuple[int, ...]:
        out = []
        for layer, size in enumerate(self.layer_sizes):
            out.extend([layer] * size)
        return tuple(out)

    def layer_blocks(self, part: BlockedSequence, layer: int) -> BlockedSequence:
        lob = self.layer_of_block
        return BlockedSequence.of(
            [b for b, l in zip(part.blocks, lob) if l == layer])


def layer_decompose(b: BlockedSequence, layer_sizes: list[int]) -> LayerDecomposition:
    """Group blocks into layers and split occurrences into the four parts."""
    if any(x < 1 for x in layer_sizes):
        raise InvalidInput("layer sizes must be positive")
    if sum(layer_sizes) != b.block_count:
        raise InvalidInput(
            f"layer sizes sum to {sum(layer_sizes)}, block count is {b.block_count}")
    layer_of_block: list[int] = []
    for layer, size in enumerate(layer_sizes):
        layer_of_block.extend([layer] * size)

    layers_of_sym: dict[Symbol, set[int]] = {}
    for bi, block in enumerate(b.blocks):
        for x in block:
            layers_of_sym.setdefault(x, set()).add(layer_of_block[bi])

    symbol_classes: dict[Symbol, tuple] = {}
    occurrence_classes: dict[tuple[Symbol, int], str] = {}
    for x, layers in layers_of_sym.items():
        if len(layers) == 1:
            symbol_classes[x] = ("local", next(iter(layers)))
        else:
            symbol_classes[x] = ("global", None)
            lo, hi = min(layers), max(layers)
            for layer in layers:
                if layer == lo:
                    occurrence_classes[(x, layer)] = "starting"
                elif layer == hi:
                    occurrence_classes[(x, layer)] = "ending"
                else:
                    occurrence_classes[(x, layer)] = "middle"

    parts: list[list[list[Symbol]]] = [[[] for _ in b.blocks] for _ in range(4)]
    for bi, block in enumerate(b.blocks):
        layer = layer_of_block[bi]
        for x in block:
            if symbol_classes[x][0] == "local":
                parts[0][bi].append(x)
            else:
                cls = occurrence_classes[(x, layer)]
                idx = {"starting": 1, "middle": 2, "ending": 3}[cls]
                parts[idx][bi].append(x)

    t1, t2, t3, t4 = (BlockedSequence.of(p) for p in parts)
    return LayerDecomposition(b, tuple(layer_sizes), symbol_classes,
                              occurrence_classes, t1, t2, t3, t4)


def verify_layer_claims(dec: LayerDecomposition, order: int) -> list[tuple[str, bool]]:
    """Check the structural claims the decomposition is meant to satisfy.

    For an input of order s: lengths add up; after repeat removal the
    starting part and the ending part are sequences of order s-1, and every
    single layer of the middle part is a sequence of order s-2.
    """
    checks: list[tuple[str, bool]] = []
    total = sum(len(t) for t in (dec.t1, dec.t2, dec.t3, dec.t4))
    checks.append(("lengths-sum", total == len(dec.source)))
    for name, part in (("t2-order", dec.t2), ("t4-order", dec.t4)):
        stripped = remove_adjacent_repeats(part)
        checks.append((name, len(stripped) == 0 or is_ds(stripped, max(order - 1, 1))))
    ok_mid = True
    for layer in range(len(dec.layer_sizes)):
        blk = dec.layer_blocks(dec.t3, layer)
        stripped = remove_adjacent_repeats(blk)
        if len(stripped) and not is_ds(stripped, max(order - 2, 1)):
            ok_mid = False
    checks.append(("t3-layers-order", ok_mid))
    return checks


# ---------------------------------------------------------------------------
# Terminal-occurrence partition (order-3 sequences)
# ---------------------------------------------------------------------------

def klazar_partition(s: Sequence, ell: int) -> BlockedSequence:
    """Segment an order-3 sequence by terminal-occurrence quota.

    A terminal occurrence is the first or last occurrence of a symbol; a
    position holding a symbol's only occurrence counts twice.  Each segment
    starts with a terminal occurrence and closes once it holds at least ell
    terminal units (a twice-counting position is never split, so a segment
    can exceed the quota by one unit).  With 2 * alphabet terminal units in
    total, the segment count is ceil(2n/ell), or less when a double unit
    straddles a quota boundary.
    """
    n = s.alphabet_size
    if ell < 1 or ell > 2 * n:
        raise InvalidInput(
            "terminal quota must satisfy 1 <= ell <= 2 * alphabet size")
    if not is_ds(s, 3):
        raise InvalidInput("klazar_partition requires a sequence of order 3")
    first: dict[Symbol, int] = {}
    last: dict[Symbol, int] = {}
    for i, x in enumerate(s):
        first.setdefault(x, i)
        last[x] = i
    weight = [0] * len(s)
    for x in first:
        weight[first[x]] += 1
        weight[last[x]] += 1

    blocks: list[list[Symbol]] = []
    cur: list[Symbol] = []
    acc = 0
    for i, x in enumerate(s):
        if cur and weight[i] > 0 and acc >= ell:
            blocks.append(cur)
            cur = []
            acc = 0
        cur.append(x)
        acc += weight[i]
    if cur:
        blocks.append(cur)
    return BlockedSequence.of(blocks)


def verify_klazar_claims(s: Sequence, ell: int,
                         partition: Optional[BlockedSequence] = None) -> list[tuple[str, bool]]:
    """Per-segment claims: every symbol occurs <= ell times in a segment and
    |segment| <= (distinct symbols in it) + ell^2 - 1; segment count is at
    most ceil(2n/ell)."""
    if partition is None:
        partition = klazar_partition(s, ell)
    n = s.alphabet_size
    checks: list[tuple[str, bool]] = []
    checks.append(("segment-count",
                   partition.block_count <= ceil(2 * n / ell)))
    per_symbol_ok = True
    size_ok = True
    for block in partition.blocks:
        counts: dict[Symbol, int] = {}
        for x in block:
            counts[x] = counts.get(x, 0) + 1
        if counts and max(counts.values()) > ell:
            per_symbol_ok = False
        if len(block) > len(counts) + ell * ell - 1:
            size_ok = False
    checks.append(("per-symbol-quota", per_symbol_ok))
    checks.append(("segment-size", size_ok))
    return checks


# ---------------------------------------------------------------------------
# Sparsification and multiplicity clustering
# ---------------------------------------------------------------------------

def sparsify(b: BlockedSequence, r: int) -> Sequence:
    """Greedy left-to-right r-sparsification.

    Keeps a symbol only if it differs from the last r - 1 kept symbols;
    deletes at most (r - 1) * (block_count - 1) symbols and keeps the first
    block entirely.
    """
    if r < 1:
        raise InvalidInput("sparsity parameter must be >= 1")
    b.require_distinct_blocks("sparsify")
    kept: list[Symbol] = []
    for block in b.blocks:
        for x in block:
            if r == 1 or x not in kept[-(r - 1):]:
                kept.append(x)
    return Sequence(tuple(kept))


def cluster_multiplicity(b: BlockedSequence, k: int) -> BlockedSequence:
    """Group each symbol's occurrences into runs of exactly k fresh symbols.

    Occurrences are grouped left to right; the trailing < k occurrences of
    each symbol are deleted and each full run is renamed to a fresh symbol,
    so every output symbol occurs exactly k times.  Fresh ids start after all
    original ids (symbols in ascending id order, runs left to right), keeping
    the original/derived distinction inspectable.  Block structure and
    special flags are preserved.  Distinct runs of one symbol are disjoint,
    so no alternation grows beyond the trivial length-2 floor.
    """
    if k < 1:
        raise InvalidInput("multiplicity must be >= 1")
    b.require_distinct_blocks("cluster_multiplicity")
    counts: dict[Symbol, int] = {}
    for block in b.blocks:
        for x in block:
            counts[x] = counts.get(x, 0) + 1
    if not counts:
        return b
    next_id = max(counts) + 1
    fresh: dict[tuple[Symbol, int], Symbol] = {}
    for x in sorted(counts):
        for c in range(counts[x] // k):
            fresh[(x, c)] = next_id
            next_id += 1
    seen: dict[Symbol, int] = {}
    blocks: list[list[Symbol]] = []
    for block in b.blocks:
        out = []
        for x in block:
            c = seen.get(x, 0)
            seen[x] = c + 1
            new = fresh.get((x, c // k))
            if new is not None:
                out.append(new)
        blocks.append(out)
    return BlockedSequence.of(blocks, b.special)

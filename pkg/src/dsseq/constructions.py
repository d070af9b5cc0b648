"""Generators for the extremal lower-bound constructions and their statistics.

Two families:

* ``Z(d, m)`` — order-3 blocked sequences in which every symbol occurs
  exactly 2d+1 times, no two symbols alternate with length 5, and every
  symbol makes its first and last occurrence inside a length-m "special"
  block.  Statistics (special blocks S, symbols N, length L, blocks M, plus
  the ratios X = M/S and V = L/M) are computed exactly from recurrences
  without materializing.

* ``S(s, k, m)`` for even s — blocked sequences with uniform block length m,
  uniform symbol multiplicity mu(s, k), and no two-symbol alternation of
  length s+2; for s >= 4 every symbol sits at a fixed depth within its
  blocks and no two symbols share more than one block.

Fresh symbols are allocated deterministically (preorder of the recursion
tree), so outputs are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .ackermann import DEFAULT_BIT_BUDGET, TowerBounds, _lift_lower, tower
from .core import BlockedSequence, Sequence, Symbol, remove_adjacent_repeats
from .errors import BudgetExceeded, InternalError, InvalidInput


# ---------------------------------------------------------------------------
# Statistics for Z(d, m)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZStats:
    special_blocks: int          # S
    symbols: int                 # N = m*S/2
    length: int                  # L = (2d+1)*N
    blocks: int                  # M
    special_ratio: Fraction      # X = M/S
    mean_block_length: Fraction  # V = L/M


@lru_cache(maxsize=None)
def _z_special(d: int, m: int, bit_budget: int) -> int:
    if d == 1 or m == 1:
        return 2
    f = _z_special(d, m - 1, bit_budget)
    return f * _z_special_at(d - 1, f, bit_budget)


def _z_special_at(d: int, m: int, bit_budget: int) -> int:
    """S(d, m) for possibly huge m, guarding the exponential rows."""
    if d == 1:
        return 2
    if m == 1:
        return 2
    if d == 2:
        # S(2, m) = 2^m.
        if m > bit_budget:
            raise BudgetExceeded(
                f"S(2, {m}) exceeds {bit_budget} bits",
                bound=TowerBounds(tower(1, m), tower(1, m), True))
        return 1 << m
    if m > 64:  # S(d, m) >= 2^m: the chain cannot stay within any sane budget
        raise BudgetExceeded(
            f"S({d}, {m}) exceeds {bit_budget} bits",
            bound=TowerBounds(_lift_lower(tower(1, m)), None, False))
    return _z_special(d, m, bit_budget)


@lru_cache(maxsize=None)
def _z_blocks_count(d: int, m: int, bit_budget: int) -> int:
    if d == 1:
        return 3
    if m == 1:
        return 2 * d + 3
    f = _z_special(d, m - 1, bit_budget)
    g = _z_special_at(d - 1, f, bit_budget)
    return g * (_z_blocks_count(d, m - 1, bit_budget) - 1) + _z_blocks_count_at(d - 1, f, bit_budget)


def _z_blocks_count_at(d: int, m: int, bit_budget: int) -> int:
    if d == 1:
        return 3
    if m == 1:
        return 2 * d + 3
    if d == 2:
        # M(2, m) = 2^(m+2) - 1.
        if m + 2 > bit_budget:
            raise BudgetExceeded(f"M(2, {m}) exceeds {bit_budget} bits",
                                 bound=TowerBounds(tower(1, m + 2), None, False))
        return (1 << (m + 2)) - 1
    if m > 64:
        raise BudgetExceeded(f"M({d}, {m}) exceeds {bit_budget} bits",
                             bound=TowerBounds(_lift_lower(tower(1, m)), None, False))
    return _z_blocks_count(d, m, bit_budget)


def z_stats(d: int, m: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> ZStats:
    """Exact statistics of Z(d, m) from the recurrences, no materialization."""
    if d < 1 or m < 1:
        raise InvalidInput("z_stats requires d >= 1, m >= 1")
    # Warm the memo tables iteratively to keep recursion depth flat.
    for mm in range(1, m + 1):
        _z_special(d, mm, bit_budget)
        _z_blocks_count(d, mm, bit_budget)
    s = _z_special(d, m, bit_budget)
    n2 = m * s
    if n2 % 2:
        raise InternalError("N = m*S/2 must be an integer")
    n = n2 // 2
    length = (2 * d + 1) * n
    blocks = _z_blocks_count(d, m, bit_budget)
    return ZStats(s, n, length, blocks, Fraction(blocks, s), Fraction(length, blocks))


# ---------------------------------------------------------------------------
# Materializing Z(d, m)
# ---------------------------------------------------------------------------

class _ZPiece:
    """Mutable build product: blocks, special flags, symbol count."""

    __slots__ = ("blocks", "special", "nsym")

    def __init__(self, blocks, special, nsym):
        self.blocks = blocks     # list[list[int]]
        self.special = special   # list[int], ordinals in block order
        self.nsym = nsym


def _z_build(d: int, m: int, base: int, bit_budget: int) -> _ZPiece:
    if d == 1:
        ascending = list(range(base, base + m))
        return _ZPiece([ascending[:], ascending[::-1], ascending[:]], [0, 2], m)
    if m == 1:
        blocks = [[]] + [[base] for _ in range(2 * d + 1)] + [[]]
        return _ZPiece(blocks, [1, 2 * d + 1], 1)

    f = _z_special(d, m - 1, bit_budget)
    star = _z_build(d - 1, f, base, bit_budget)
    g = len(star.special)

    # First/last special-block ordinal for every symbol of the core piece.
    special_ordinal = {bi: i for i, bi in enumerate(star.special)}
    first_special: dict[Symbol, int] = {}
    last_special: dict[Symbol, int] = {}
    for bi, block in enumerate(star.blocks):
        ordinal = special_ordinal.get(bi)
        for x in block:
            if ordinal is not None:
                first_special.setdefault(x, ordinal)
                last_special[x] = ordinal

    template = _z_build(d, m - 1, 0, bit_budget)
    copy_base = base + star.nsym
    n_copy = template.nsym

    out_blocks: list[list[int]] = []
    out_special: list[int] = []
    for bi, block in enumerate(star.blocks):
        ordinal = special_ordinal.get(bi)
        if ordinal is None:
            out_blocks.append(block)
            continue
        offset = copy_base + ordinal * n_copy
        copy_blocks = [[x + offset for x in b] for b in template.blocks]
        for ell, a in enumerate(block):
            spec_bi = template.special[ell]
            if first_special[a] == ordinal:
                # First occurrence: a closes this special block, its twin
                # opens the following regular block.
                copy_blocks[spec_bi].append(a)
                copy_blocks[spec_bi + 1].insert(0, a)
            else:
                copy_blocks[spec_bi - 1].append(a)
                copy_blocks[spec_bi].insert(0, a)
        for j, b in enumerate(copy_blocks):
            if j in template.special:
                out_special.append(len(out_blocks))
            out_blocks.append(b)
    return _ZPiece(out_blocks, out_special, star.nsym + g * n_copy)


def build_z(d: int, m: int, length_budget: int = 10**6,
            bit_budget: int = DEFAULT_BIT_BUDGET) -> BlockedSequence:
    """Materialize Z(d, m).  Length is predicted first; never partially built."""
    stats = z_stats(d, m, bit_budget)
    if stats.length > length_budget:
        raise BudgetExceeded(
            f"Z({d},{m}) has length {stats.length} > budget {length_budget}",
            bound=stats.length)
    piece = _z_build(d, m, 0, bit_budget)
    return BlockedSequence.of(piece.blocks, piece.special)


def build_z_interpolated(n: int, length_budget: int = 10**6,
                         bit_budget: int = DEFAULT_BIT_BUDGET) -> Sequence:
    """A genuine order-3 sequence on <= n symbols: disjoint copies of a
    repeat-stripped diagonal piece Z(d, d).

    d is the largest value whose diagonal symbol count N(d, d) both fits in
    n and stays materializable; t = n // N(d, d) copies are concatenated.
    """
    if n < 1:
        raise InvalidInput("n must be positive")
    chosen = None
    d = 1
    while True:
        try:
            st = z_stats(d, d, bit_budget)
        except BudgetExceeded:
            break
        if st.symbols > n or st.length > length_budget:
            break
        chosen = (d, st)
        d += 1
    if chosen is None:
        raise BudgetExceeded(f"no diagonal piece fits within n={n}", bound=None)
    d, st = chosen
    t = n // st.symbols
    stripped = remove_adjacent_repeats(build_z(d, d, length_budget, bit_budget))
    if t * len(stripped) > length_budget:
        t = length_budget // len(stripped)
        if t < 1:
            raise BudgetExceeded("length budget too small for one copy", bound=None)
    out: list[int] = []
    for i in range(t):
        off = i * st.symbols
        out.extend(x + off for x in stripped)
    return Sequence(tuple(out))


# ---------------------------------------------------------------------------
# Statistics for the even-order family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EvenStats:
    multiplicity: int  # mu(s, k)
    symbols: int       # N(s, k, m)
    blocks: int        # F(s, k, m)
    length: int        # = mu*N = m*F


def _check_even(s: int) -> None:
    if s < 2 or s % 2:
        raise InvalidInput("the family is defined for even s >= 2")


@lru_cache(maxsize=None)
def mu_even(s: int, k: int) -> int:
    """Uniform symbol multiplicity mu(s, k); equals 2^C(k, s/2 - 1)."""
    _check_even(s)
    if k < 0:
        raise InvalidInput("k must be nonnegative")
    if s == 2:
        return 2
    if k == 0:
        return 1
    return mu_even(s - 2, k - 1) * mu_even(s, k - 1)


def mu_even_closed_form(s: int, k: int) -> int:
    _check_even(s)
    return 1 << comb(k, s // 2 - 1)


@lru_cache(maxsize=None)
def _even_symbols(s: int, k: int, m: int, bit_budget: int) -> int:
    _check_even(s)
    if s == 2 or k == 0:
        return m
    if m == 1:
        return 1
    f = _even_blocks(s, k, m - 1, bit_budget)
    g = _even_symbols_at(s - 2, k - 1, f, bit_budget)
    inner = _even_symbols_at(s, k - 1, g, bit_budget)
    out = m * inner
    if out.bit_length() > bit_budget:
        raise BudgetExceeded(f"N({s},{k},{m}) exceeds {bit_budget} bits",
                             bound=TowerBounds(_lift_lower(tower(0, out)), None, False))
    return out


def _even_symbols_at(s: int, k: int, m: int, bit_budget: int) -> int:
    """N(s, k, m) for possibly huge m (the closed-form rows never recurse)."""
    if s == 2 or k == 0:
        return m
    if s >= 6 and mu_even(s, k) == 1:
        return m  # mu = 1: the family degenerates to a single block
    if s == 4 and k == 1:
        # Closed row: N = m * 2^(m-1), F = 2^m.
        if m + m.bit_length() > bit_budget:
            raise BudgetExceeded(f"N(4,1,{m}) exceeds {bit_budget} bits",
                                 bound=TowerBounds(tower(1, m - 1), None, False))
        return m << (m - 1)
    if m.bit_length() > bit_budget // 4:
        raise BudgetExceeded(f"N({s},{k},{m}) argument too large",
                             bound=TowerBounds(_lift_lower(tower(0, m)), None, False))
    for mm in range(2, m):
        _even_symbols(s, k, mm, bit_budget)
    return _even_symbols(s, k, m, bit_budget)


def _even_blocks(s: int, k: int, m: int, bit_budget: int) -> int:
    n = _even_symbols(s, k, m, bit_budget)
    total = mu_even(s, k) * n
    if total % m:
        raise InternalError("mu*N must be divisible by m")
    return total // m


def even_stats(s: int, k: int, m: int,
               bit_budget: int = DEFAULT_BIT_BUDGET) -> EvenStats:
    """Exact mu, N, F and length for the even-order construction."""
    _check_even(s)
    if k < 0 or m < 1:
        raise InvalidInput("even_stats requires k >= 0, m >= 1")
    for mm in range(1, m + 1):
        _even_symbols(s, k, mm, bit_budget)
    mu = mu_even(s, k)
    n = _even_symbols(s, k, m, bit_budget)
    return EvenStats(mu, n, _even_blocks(s, k, m, bit_budget), mu * n)


# ---------------------------------------------------------------------------
# Materializing the even-order family
# ---------------------------------------------------------------------------

def _first_appearance_order(blocks: list[list[int]]) -> list[int]:
    seen: set[int] = set()
    order: list[int] = []
    for b in blocks:
        for x in b:
            if x not in seen:
                seen.add(x)
                order.append(x)
    return order


@lru_cache(maxsize=None)
def _even_template(s: int, k: int, m: int, bit_budget: int) -> tuple:
    """Blocks of S(s, k, m) with symbols 0..N-1; returned as nested tuples."""
    _check_even(s)
    if s == 2:
        return (tuple(range(m)), tuple(range(m - 1, -1, -1)))
    if k == 0 or mu_even(s, k) == 1:
        # Multiplicity-one rows degenerate to a single ascending block.
        return (tuple(range(m)),)
    if m == 1:
        return ((0,),) * mu_even(s, k)

    prev = _even_template(s, k, m - 1, bit_budget)
    f = len(prev)
    bar = _even_template(s - 2, k - 1, f, bit_budget)
    g = _even_symbols(s - 2, k - 1, f, bit_budget)
    star = _even_template(s, k - 1, g, bit_budget)

    # Replace each block of the outer piece by a copy of the middle piece on
    # the same symbols, first appearances following the block order.
    bar_order = _first_appearance_order([list(b) for b in bar])
    hat_flat: list[int] = []
    h = 0
    for block in star:
        rename = {old: new for old, new in zip(bar_order, block)}
        for bar_block in bar:
            hat_flat.extend(rename[x] for x in bar_block)
            h += 1

    n_prev = _even_symbols(s, k, m - 1, bit_budget)
    blocks: list[tuple[int, ...]] = []
    pos = 0
    hat_base = h * n_prev
    for c in range(h):
        off = c * n_prev
        for b in prev:
            blocks.append(tuple(x + off for x in b) + (hat_flat[pos] + hat_base,))
            pos += 1
    if pos != len(hat_flat):
        raise InternalError("insertion count mismatch")
    return tuple(blocks)


def build_s_even(s: int, k: int, m: int, length_budget: int = 10**6,
                 bit_budget: int = DEFAULT_BIT_BUDGET) -> BlockedSequence:
    """Materialize S(s, k, m) (even s).  Length is predicted first."""
    if m < 1 or k < 0:
        raise InvalidInput("build_s_even requires k >= 0, m >= 1")
    stats = even_stats(s, k, m, bit_budget)
    if stats.length > length_budget:
        raise BudgetExceeded(
            f"S({s},{k},{m}) has length {stats.length} > budget {length_budget}",
            bound=stats.length)
    return BlockedSequence.of(_even_template(s, k, m, bit_budget))


# ---------------------------------------------------------------------------
# Full invariant verification of materialized constructions
# ---------------------------------------------------------------------------

def verify_z(b: BlockedSequence, d: int, m: int,
             bit_budget: int = DEFAULT_BIT_BUDGET) -> list:
    """Check every structural property of a claimed Z(d, m) materialization.

    Returns (name, ok, detail) triples: exact agreement with z_stats,
    uniform multiplicity 2d+1, no two-symbol alternation of length 5,
    distinct-symbol blocks, special blocks of length m holding only first or
    last occurrences, and the flanking rules.
    """
    from collections import Counter

    from .fastcheck import alternation_at_most

    checks = []
    st = z_stats(d, m, bit_budget)
    flat = b.sequence
    counts = Counter(flat.symbols)
    checks.append(("counts-match-stats",
                   len(flat) == st.length and len(counts) == st.symbols
                   and b.block_count == st.blocks
                   and len(b.special) == st.special_blocks,
                   f"L={len(flat)} N={len(counts)} M={b.block_count} S={len(b.special)}"))
    mult_ok = all(v == 2 * d + 1 for v in counts.values())
    checks.append(("uniform-multiplicity", mult_ok, f"expected {2 * d + 1}"))
    checks.append(("alternation-at-most-4",
                   alternation_at_most(flat.symbols, 4), ""))
    checks.append(("distinct-blocks", b.blocks_have_distinct_symbols(), ""))

    first: dict = {}
    last: dict = {}
    for i, x in enumerate(flat.symbols):
        first.setdefault(x, i)
        last[x] = i
    special_ok = True
    pos = 0
    for bi, block in enumerate(b.blocks):
        if bi in b.special:
            if len(block) != m:
                special_ok = False
            for j, x in enumerate(block):
                p = pos + j
                if p != first[x] and p != last[x]:
                    special_ok = False
        pos += len(block)
    terminal_in_special = True
    block_of = []
    for bi, block in enumerate(b.blocks):
        block_of.extend([bi] * len(block))
    for x in counts:
        if block_of[first[x]] not in b.special or block_of[last[x]] not in b.special:
            terminal_in_special = False
    checks.append(("special-blocks-length-and-terminal", special_ok, ""))
    checks.append(("terminals-in-special-blocks", terminal_in_special, ""))

    flank_ok = True
    if d >= 2:
        for bi in b.special:
            if bi == 0 or bi == b.block_count - 1:
                flank_ok = False
            elif bi - 1 in b.special or bi + 1 in b.special:
                flank_ok = False
        for bi in range(1, b.block_count - 1):
            if bi not in b.special and bi - 1 in b.special and bi + 1 in b.special:
                flank_ok = False
    else:
        flank_ok = b.special == frozenset({0, b.block_count - 1})
    checks.append(("flanking-rules", flank_ok, ""))
    return checks


def verify_even(b: BlockedSequence, s: int, k: int, m: int,
                bit_budget: int = DEFAULT_BIT_BUDGET) -> list:
    """Check every structural property of a claimed S(s, k, m) output."""
    from collections import Counter

    from .core import is_r_sparse
    from .fastcheck import alternation_at_most

    checks = []
    st = even_stats(s, k, m, bit_budget)
    flat = b.sequence
    counts = Counter(flat.symbols)
    checks.append(("counts-match-stats",
                   len(flat) == st.length and len(counts) == st.symbols
                   and b.block_count == st.blocks,
                   f"L={len(flat)} N={len(counts)} F={b.block_count}"))
    checks.append(("identity-mu-n-equals-m-f",
                   st.multiplicity * len(counts) == m * b.block_count, ""))
    checks.append(("uniform-block-length",
                   all(len(blk) == m for blk in b.blocks), ""))
    checks.append(("uniform-multiplicity",
                   all(v == st.multiplicity for v in counts.values()),
                   f"expected {st.multiplicity}"))
    checks.append(("distinct-blocks", b.blocks_have_distinct_symbols(), ""))
    checks.append((f"alternation-at-most-{s + 1}",
                   alternation_at_most(flat.symbols, s + 1), ""))
    if s >= 4 and m >= 2:
        checks.append(("two-sparse", is_r_sparse(flat, 2), ""))
    if s >= 4:
        depth_ok = True
        depth: dict = {}
        for blk in b.blocks:
            for j, x in enumerate(blk):
                if depth.setdefault(x, j) != j:
                    depth_ok = False
        checks.append(("fixed-depth", depth_ok, ""))
        seen_pairs: set = set()
        co_ok = True
        for blk in b.blocks:
            for i in range(len(blk)):
                for j in range(i + 1, len(blk)):
                    key = (blk[i], blk[j]) if blk[i] < blk[j] else (blk[j], blk[i])
                    if key in seen_pairs:
                        co_ok = False
                    seen_pairs.add(key)
        checks.append(("co-block-at-most-once", co_ok, ""))
    return checks

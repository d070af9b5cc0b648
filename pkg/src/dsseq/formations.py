"""(r, s)-formations: detection, freeness, embeddings, and extremal AFF shapes.

An (r, s)-formation is a concatenation of s permutations of the same r
symbols.  A sequence contains one iff, for some r-subset of its alphabet, a
left-to-right greedy scan completes s disjoint windows each holding all r
symbols; greedy earliest-completion window packing is optimal, so detection
is exact.

``embed_pattern`` realizes the constructive guarantee that a canonical
pattern u with r distinct symbols embeds into every (r, |u| - r + 1)
formation: blocks of u (merging each symbol's first occurrence leftwards)
are matched right to left, assigning images greedily from the right end of
the corresponding permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import (BlockedSequence, PatternWitness, Sequence, Symbol,
                   canonicalize, is_r_sparse)
from .errors import CapExceeded, InternalError, InvalidInput

FORMATION_R_CAP = 4
FORMATION_S_CAP = 8
FORMATION_ALPHABET_CAP = 24


@dataclass(frozen=True)
class Formation:
    """s permutations of {1..r}, stored 1-based as in standard notation."""

    r: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        base = tuple(range(1, self.r + 1))
        for p in self.perms:
            if tuple(sorted(p)) != base:
                raise InvalidInput(f"{p} is not a permutation of 1..{self.r}")

    @property
    def s(self) -> int:
        return len(self.perms)

    def flatten(self) -> Sequence:
        return Sequence(tuple(x for p in self.perms for x in p))

    @staticmethod
    def of(perms) -> "Formation":
        perms = tuple(tuple(p) for p in perms)
        if not perms:
            raise InvalidInput("a formation needs at least one permutation")
        return Formation(len(perms[0]), perms)


@dataclass(frozen=True)
class FormationWitness:
    symbols: tuple[Symbol, ...]          # the r chosen symbols
    windows: tuple[tuple[int, ...], ...]  # s disjoint index windows


def contains_formation(s_seq: Sequence, r: int, s: int,
                       r_cap: int = FORMATION_R_CAP,
                       s_cap: int = FORMATION_S_CAP,
                       alphabet_cap: int = FORMATION_ALPHABET_CAP):
    """Witness that the sequence contains an (r, s)-formation, or None."""
    if r < 1 or s < 1:
        raise InvalidInput("formation parameters must be positive")
    if r > r_cap:
        raise CapExceeded(f"formation width {r} exceeds cap {r_cap}")
    if s > s_cap:
        raise CapExceeded(f"formation length {s} exceeds cap {s_cap}")
    alphabet = sorted(set(s_seq.symbols))
    if len(alphabet) > alphabet_cap:
        raise CapExceeded(f"alphabet {len(alphabet)} exceeds cap {alphabet_cap}")
    if len(alphabet) < r:
        return None
    occ_count = {a: 0 for a in alphabet}
    for x in s_seq:
        occ_count[x] += 1
    for chosen in combinations(alphabet, r):
        if min(occ_count[a] for a in chosen) < s:
            continue  # each window needs one occurrence of every chosen symbol
        chosen_set = set(chosen)
        windows: list[tuple[int, ...]] = []
        seen: dict[Symbol, int] = {}
        for i, x in enumerate(s_seq):
            if x in chosen_set and x not in seen:
                seen[x] = i
                if len(seen) == r:
                    windows.append(tuple(sorted(seen.values())))
                    seen = {}
                    if len(windows) == s:
                        return FormationWitness(chosen, tuple(windows))
    return None


def is_formation_free(s_seq: Sequence, r: int, s: int) -> bool:
    """r-sparse and containing no (r, s)-formation."""
    return is_r_sparse(s_seq, r) and contains_formation(s_seq, r, s) is None


# ---------------------------------------------------------------------------
# Pattern blocks and the embedding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PatternBlocks:
    """Partition of a canonical pattern into |u| - ||u|| + 1 increasing blocks.

    Starting from singleton blocks, the block holding each symbol's first
    occurrence is merged with the block of the immediately preceding symbol.
    """

    pattern: Sequence
    blocks: tuple[tuple[Symbol, ...], ...]


def pattern_blocks(u: Sequence) -> PatternBlocks:
    if canonicalize(u) != u:
        raise InvalidInput("pattern_blocks expects a canonical pattern")
    n = len(u)
    if n == 0:
        return PatternBlocks(u, ())
    first_pos: dict[Symbol, int] = {}
    for i, x in enumerate(u):
        first_pos.setdefault(x, i)
    # Union positions into blocks: merge first occurrences leftwards.
    start_of_block = [True] * n
    for x, i in first_pos.items():
        if i > 0:
            start_of_block[i] = False
    blocks: list[tuple[Symbol, ...]] = []
    cur: list[Symbol] = []
    for i, x in enumerate(u):
        if start_of_block[i] and cur:
            blocks.append(tuple(cur))
            cur = []
        cur.append(x)
    blocks.append(tuple(cur))
    expected = len(u) - u.alphabet_size + 1
    if len(blocks) != expected:
        raise InternalError(f"expected {expected} blocks, got {len(blocks)}")
    for b in blocks:
        if any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
            raise InternalError(f"block {b} is not strictly increasing")
    return PatternBlocks(u, tuple(blocks))


def embed_pattern(u: Sequence, formation: Formation) -> dict[int, int]:
    """A permutation sigma of {1..r} with sigma(u) a subsequence of the
    flattened formation.

    The pattern is canonicalized first (sigma is relative to the canonical
    numbering shifted to 1..r).  Blocks are scanned right to left; within a
    block, the trailing "new" symbols receive the rightmost still-free
    symbols of the matching permutation, scanning right to left; the first
    symbol of the alphabet takes the last remaining free symbol.
    """
    u = canonicalize(u)
    r = u.alphabet_size
    if r != formation.r:
        raise InvalidInput(f"pattern has {r} distinct symbols, formation has {formation.r}")
    pb = pattern_blocks(u)
    s_prime = len(pb.blocks)
    if s_prime != formation.s:
        raise InvalidInput(
            f"pattern needs {s_prime} permutations, formation has {formation.s}")

    sigma: dict[int, int] = {}  # 1-based pattern symbol -> formation symbol
    assigned: set[int] = set()
    for j in range(s_prime - 1, -1, -1):
        block = pb.blocks[j]
        if len(block) < 2:
            continue
        new_symbols = [x + 1 for x in block[1:]]  # shift canonical 0-based to 1-based
        perm = formation.perms[j]
        targets = iter(reversed(new_symbols))  # assign sigma(k), sigma(k-1), ...
        want = next(targets)
        for y in reversed(perm):
            if y in assigned:
                continue
            sigma[want] = y
            assigned.add(y)
            want = next(targets, None)
            if want is None:
                break
        if want is not None:
            raise InternalError("ran out of free symbols during embedding")
    free = [y for y in range(1, r + 1) if y not in assigned]
    if len(free) != 1:
        # Every symbol except the alphabet's first is "new" in exactly one block.
        raise InternalError(f"expected exactly one unassigned symbol, got {free}")
    sigma[1] = free[0]
    return sigma


def apply_embedding(u: Sequence, sigma: dict[int, int]) -> Sequence:
    """sigma(u) over the 1-based alphabet (u is canonicalized first)."""
    u = canonicalize(u)
    return Sequence(tuple(sigma[x + 1] for x in u))


def is_plain_subsequence(u: Sequence, s_seq: Sequence) -> bool:
    """Subsequence test with fixed symbols (no renaming)."""
    it = iter(s_seq)
    return all(x in it for x in u)


def verify_embedding(u: Sequence, formation: Formation) -> PatternWitness:
    """Run the embedding and confirm sigma(u) embeds with fixed symbols."""
    sigma = embed_pattern(u, formation)
    image = apply_embedding(u, sigma)
    flat = formation.flatten()
    positions = []
    j = 0
    for x in image:
        while j < len(flat) and flat[j] != x:
            j += 1
        if j == len(flat):
            raise InternalError("embedding verification failed")
        positions.append(j)
        j += 1
    return PatternWitness({i: sigma[i] for i in sorted(sigma)}, tuple(positions))


# ---------------------------------------------------------------------------
# Extremal almost-formation-free shapes (s = 2, k = 2)
# ---------------------------------------------------------------------------

def build_aff_extremal(r: int, m: int) -> BlockedSequence:
    """m blocks on (r-1)(m-1) symbols, each twice, with no (r, 2)-formation.

    Symbols come in m-1 groups of r-1; group i sits at the end of block i
    and again at the start of block i+1, so no separator between blocks is
    crossed by r symbols' initial gaps.
    """
    if r < 2 or m < 1:
        raise InvalidInput("build_aff_extremal requires r >= 2, m >= 1")
    groups = [[(r - 1) * i + j for j in range(r - 1)] for i in range(m - 1)]
    blocks: list[list[int]] = [[] for _ in range(m)]
    for i, grp in enumerate(groups):
        blocks[i].extend(grp)
        blocks[i + 1] = grp + blocks[i + 1]
    return BlockedSequence.of(blocks)

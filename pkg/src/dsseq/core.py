"""Sequence data model and per-sequence predicates.

Symbols are dense nonnegative integers.  A sequence is *canonical* when its
symbols are numbered 0, 1, 2, ... in order of first appearance, which turns
isomorphism checks into plain equality.  A blocked sequence adds a partition
into contiguous blocks, some of which may be flagged "special"; blocks of
length zero are legal.

The predicates here are the exact, desk-scale reference implementations.
``max_alternation`` enumerates symbol pairs; the verification-scale check for
"no two-symbol alternation longer than 4" on sequences with hundreds of
thousands of symbols lives in :mod:`dsseq.fastcheck`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence as Seq

from .errors import CapExceeded, InvalidInput

Symbol = int

# Default cap on the pattern alphabet for containment searches; the general
# problem is exponential in the number of distinct pattern symbols.
PATTERN_ALPHABET_CAP = 6


@dataclass(frozen=True)
class Sequence:
    """An immutable sequence of integer symbols."""

    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        for x in self.symbols:
            if not isinstance(x, int) or x < 0:
                raise InvalidInput(f"symbols must be nonnegative integers, got {x!r}")

    @staticmethod
    def of(items: Iterable[Symbol]) -> "Sequence":
        return Sequence(tuple(items))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    @property
    def alphabet(self) -> frozenset[Symbol]:
        return frozenset(self.symbols)

    @property
    def alphabet_size(self) -> int:
        return len(set(self.symbols))

    def render(self) -> str:
        return " ".join(str(x) for x in self.symbols)


def seq(spec: "str | Iterable[int]") -> Sequence:
    """Build a Sequence from letters ("abab"), tokens ("0 1 0 1"), or ints.

    Letters are renamed to 0, 1, 2, ... by first appearance, so ``seq("abab")``
    is already canonical.
    """
    if isinstance(spec, str):
        tokens = spec.split() if any(c.isspace() for c in spec) else list(spec)
        if tokens and all(t.lstrip("-").isdigit() for t in tokens):
            return Sequence(tuple(int(t) for t in tokens))
        names: dict[str, int] = {}
        out = []
        for t in tokens:
            if t not in names:
                names[t] = len(names)
            out.append(names[t])
        return Sequence(tuple(out))
    return Sequence(tuple(spec))


@dataclass(frozen=True)
class BlockedSequence:
    """A sequence partitioned into contiguous blocks with optional special flags.

    Distinctness of symbols within each block is *testable* via
    :meth:`blocks_have_distinct_symbols` but not enforced at construction:
    some partitions produced here (greedy order partitions, terminal-occurrence
    segments) legitimately repeat symbols inside a block.
    """

    blocks: tuple[tuple[Symbol, ...], ...]
    special: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        for i in self.special:
            if not 0 <= i < len(self.blocks):
                raise InvalidInput(f"special flag {i} out of range for {len(self.blocks)} blocks")

    @staticmethod
    def of(blocks: Iterable[Iterable[Symbol]], special: Iterable[int] = ()) -> "BlockedSequence":
        return BlockedSequence(tuple(tuple(b) for b in blocks), frozenset(special))

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def sequence(self) -> Sequence:
        return Sequence(tuple(x for b in self.blocks for x in b))

    @property
    def boundaries(self) -> tuple[int, ...]:
        """Split positions between consecutive blocks."""
        out = []
        pos = 0
        for b in self.blocks[:-1]:
            pos += len(b)
            out.append(pos)
        return tuple(out)

    def __len__(self) -> int:
        return sum(len(b) for b in self.blocks)

    def blocks_have_distinct_symbols(self) -> bool:
        return all(len(set(b)) == len(b) for b in self.blocks)

    def require_distinct_blocks(self, op: str) -> None:
        if not self.blocks_have_distinct_symbols():
            raise InvalidInput(f"{op}: every block must contain distinct symbols")

    def render(self) -> str:
        """Human rendering: special blocks in [ ], regular in ( ), joined by |."""
        parts = []
        for i, b in enumerate(self.blocks):
            inner = " ".join(str(x) for x in b)
            parts.append(f"[{inner}]" if i in self.special else f"({inner})")
        return " | ".join(parts)


@dataclass(frozen=True)
class AdsParameters:
    """Order / multiplicity / block-count triple for almost-DS sequences."""

    s: int
    k: int
    m: int

    def __post_init__(self):
        if self.s < 1 or self.k < 1 or self.m < 1:
            raise InvalidInput("order, multiplicity and block count must be positive")

    @property
    def feasible(self) -> bool:
        """m >= k is required for the sequence to contain any symbol at all."""
        return self.m >= self.k


# ---------------------------------------------------------------------------
# JSON interchange ({"blocks": [[int,...],...], "special": [int,...]})
# ---------------------------------------------------------------------------

def to_json_obj(value: "Sequence | BlockedSequence") -> dict:
    if isinstance(value, Sequence):
        return {"blocks": [list(value.symbols)], "special": []}
    return {"blocks": [list(b) for b in value.blocks], "special": sorted(value.special)}


def from_json_obj(obj: dict) -> BlockedSequence:
    try:
        blocks = [[int(x) for x in b] for b in obj["blocks"]]
        special = [int(i) for i in obj.get("special", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed sequence object: {exc}") from exc
    return BlockedSequence.of(blocks, special)


# ---------------------------------------------------------------------------
# Predicates and transforms
# ---------------------------------------------------------------------------

def canonicalize(s: Sequence) -> Sequence:
    """Rename symbols to 0, 1, 2, ... in order of first appearance."""
    names: dict[Symbol, int] = {}
    out = []
    for x in s:
        if x not in names:
            names[x] = len(names)
        out.append(names[x])
    return Sequence(tuple(out))


def is_r_sparse(s: "Sequence | Seq[int]", r: int) -> bool:
    """True iff every window of length <= r contains distinct symbols."""
    if r < 1:
        raise InvalidInput("sparsity parameter must be >= 1")
    xs = s.symbols if isinstance(s, Sequence) else s
    # Equivalent formulation: any two occurrences within distance r-1 differ.
    last_seen: dict[int, int] = {}
    for i, x in enumerate(xs):
        j = last_seen.get(x)
        if j is not None and i - j <= r - 1:
            return False
        last_seen[x] = i
    return True


class AlternationResult(NamedTuple):
    length: int
    pair: Optional[tuple[Symbol, Symbol]]


def alternation_of_pair(s: "Sequence | Seq[int]", a: Symbol, b: Symbol) -> int:
    """Longest subsequence alternating strictly between a and b.

    Direct two-symbol automaton scan; used as the independent self-check for
    :func:`max_alternation`.
    """
    xs = s.symbols if isinstance(s, Sequence) else s
    length = 0
    last = None
    for x in xs:
        if (x == a or x == b) and x != last:
            length += 1
            last = x
    return length


def max_alternation(s: Sequence) -> AlternationResult:
    """Maximum two-symbol alternation length, with a witnessing pair.

    For alphabets of size < 2 there is no pair; the alternation length is
    defined as the alphabet size (0 or 1) to keep the function total.
    """
    occ: dict[Symbol, list[int]] = {}
    for i, x in enumerate(s):
        occ.setdefault(x, []).append(i)
    n = len(occ)
    if n < 2:
        return AlternationResult(n, None)

    # Any two distinct symbols alternate with length at least 2; only pairs
    # with overlapping occurrence spans can do better.
    spans = sorted((p[0], p[-1], sym) for sym, p in occ.items())
    a0, b0 = sorted((spans[0][2], spans[1][2]))
    best = AlternationResult(2, (a0, b0))
    for i in range(n):
        fi, li, a = spans[i]
        for j in range(i + 1, n):
            fj, lj, b = spans[j]
            if fj > li:
                break  # spans sorted by first occurrence: no further overlap
            length = _merged_alternation(occ[a], occ[b], a, b)
            if length > best.length:
                best = AlternationResult(length, (min(a, b), max(a, b)))
    return best


def _merged_alternation(pa: list[int], pb: list[int], a: Symbol, b: Symbol) -> int:
    """Alternation length of the pair from their sorted occurrence lists."""
    i = j = 0
    length = 0
    last = None
    while i < len(pa) or j < len(pb):
        if j >= len(pb) or (i < len(pa) and pa[i] < pb[j]):
            x = a
            i += 1
        else:
            x = b
            j += 1
        if x != last:
            length += 1
            last = x
    return length


def is_ds(s: Sequence, order: int) -> bool:
    """2-sparse with no two-symbol alternation of length order+2."""
    if order < 1:
        raise InvalidInput("order must be >= 1")
    if not is_r_sparse(s, 2):
        return False
    return max_alternation(s).length <= order + 1


class PatternWitness(NamedTuple):
    """Injective renaming of the pattern alphabet plus matched positions."""

    mapping: dict[Symbol, Symbol]
    positions: tuple[int, ...]


def contains_pattern(u: Sequence, s: Sequence,
                     cap: int = PATTERN_ALPHABET_CAP) -> Optional[PatternWitness]:
    """Witness that s contains a subsequence isomorphic to u, or None.

    Backtracks over injective partial renamings of u's alphabet into s's;
    for a fixed renaming, matching greedily left to right is complete.
    """
    u_alpha: list[Symbol] = []
    for x in u:
        if x not in u_alpha:
            u_alpha.append(x)
    if len(u_alpha) > cap:
        raise CapExceeded(f"pattern alphabet {len(u_alpha)} exceeds cap {cap}")
    if len(u) == 0:
        return PatternWitness({}, ())
    if len(u) > len(s):
        return None

    xs = s.symbols
    occ: dict[Symbol, list[int]] = {}
    for i, x in enumerate(xs):
        occ.setdefault(x, []).append(i)

    mapping: dict[Symbol, Symbol] = {}
    used: set[Symbol] = set()
    positions: list[int] = []

    def next_at(sym: Symbol, j: int) -> Optional[int]:
        import bisect
        ps = occ.get(sym)
        if not ps:
            return None
        k = bisect.bisect_left(ps, j)
        return ps[k] if k < len(ps) else None

    def rec(i: int, j: int) -> bool:
        if i == len(u):
            return True
        target = u[i]
        if target in mapping:
            pos = next_at(mapping[target], j)
            if pos is None:
                return False
            positions.append(pos)
            if rec(i + 1, pos + 1):
                return True
            positions.pop()
            return False
        tried: set[Symbol] = set()
        for pos in range(j, len(xs)):
            y = xs[pos]
            if y in used or y in tried:
                continue
            tried.add(y)
            mapping[target] = y
            used.add(y)
            positions.append(pos)
            if rec(i + 1, pos + 1):
                return True
            positions.pop()
            used.discard(y)
            del mapping[target]
        return False

    if rec(0, 0):
        return PatternWitness(dict(mapping), tuple(positions))
    return None


def remove_adjacent_repeats(b: BlockedSequence) -> Sequence:
    """Delete the leading symbol of a block when it repeats the last kept symbol.

    Requires distinct symbols within each block, so repeats can only sit at
    block interfaces; at most block_count - 1 symbols are removed.
    """
    b.require_distinct_blocks("remove_adjacent_repeats")
    out: list[Symbol] = []
    for block in b.blocks:
        start = 1 if (block and out and block[0] == out[-1]) else 0
        out.extend(block[start:])
    return Sequence(tuple(out))

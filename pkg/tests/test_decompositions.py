import random
from math import ceil

import pytest
from hypothesis import given, strategies as st

from dsseq.core import BlockedSequence, Sequence, is_ds, is_r_sparse, max_alternation, seq
from dsseq.decompositions import (
    cluster_multiplicity,
    greedy_order_partition,
    klazar_partition,
    layer_decompose,
    minimal_order_partition_size,
    sparsify,
    verify_klazar_claims,
    verify_layer_claims,
)
from dsseq.errors import InvalidInput
from dsseq.oracles import enumerate_ds_sequences

CORPUS_3 = [s for s in enumerate_ds_sequences(3, 4, 12)]


def test_greedy_partition_examples():
    assert greedy_order_partition(seq("abab"), 1).blocks == ((0, 1), (0, 1))
    assert greedy_order_partition(seq("abab"), 2).blocks == ((0, 1, 0), (1,))
    assert greedy_order_partition(seq("abcabc"), 5).block_count == 1
    with pytest.raises(InvalidInput):
        greedy_order_partition(seq("aab"), 2)


def test_greedy_partition_block_count_bound():
    # On an order-s input with r = s - 2, at most 2 * alphabet blocks.
    for s in CORPUS_3:
        g = greedy_order_partition(s, 1)
        assert g.block_count <= 2 * s.alphabet_size
        assert g.sequence == s


def test_greedy_partition_is_minimal():
    rng = random.Random(3)
    cases = [s for s in CORPUS_3 if len(s) <= 9][:120]
    for s in cases:
        for r in (1, 2, 3):
            g = greedy_order_partition(s, r)
            assert g.block_count == minimal_order_partition_size(s, r), (s, r)
    for _ in range(60):
        xs = []
        for _ in range(rng.randint(1, 12)):
            c = rng.randrange(4)
            if xs and xs[-1] == c:
                continue
            xs.append(c)
        if not xs:
            continue
        s = Sequence(tuple(xs))
        for r in (1, 2):
            assert greedy_order_partition(s, r).block_count == \
                minimal_order_partition_size(s, r)


def test_greedy_partition_blocks_are_maximal():
    s = seq("abcacbabc")
    for r in (1, 2):
        g = greedy_order_partition(s, r)
        pos = 0
        for bi, block in enumerate(g.blocks):
            assert max_alternation(Sequence(block)).length <= r + 1
            pos += len(block)
            if bi + 1 < g.block_count:
                extended = Sequence(block + (s[pos],))
                assert max_alternation(extended).length == r + 2


def test_layer_decompose_trivial():
    b = BlockedSequence.of([[0, 1], [1, 2]])
    dec = layer_decompose(b, [2])
    assert all(cls[0] == "local" for cls in dec.symbol_classes.values())
    assert len(dec.t2) == len(dec.t3) == len(dec.t4) == 0
    assert len(dec.t1) == len(b)


def test_layer_decompose_two_layers():
    b = BlockedSequence.of([[0, 1], [1, 0]])
    dec = layer_decompose(b, [1, 1])
    assert dec.symbol_classes[0] == ("global", None)
    assert dec.occurrence_classes[(0, 0)] == "starting"
    assert dec.occurrence_classes[(0, 1)] == "ending"
    assert len(dec.t3) == 0
    assert len(dec.t2) == 2 and len(dec.t4) == 2
    assert all(ok for _, ok in verify_layer_claims(dec, 3))


def test_layer_decompose_validation():
    b = BlockedSequence.of([[0], [1]])
    with pytest.raises(InvalidInput):
        layer_decompose(b, [1])
    with pytest.raises(InvalidInput):
        layer_decompose(b, [0, 2])


def test_layer_decompose_on_construction():
    from dsseq.constructions import build_z, z_stats

    b = build_z(2, 3)
    st_ = z_stats(2, 3)
    half = b.block_count // 2
    dec = layer_decompose(b, [half, b.block_count - half])
    total = sum(len(t) for t in (dec.t1, dec.t2, dec.t3, dec.t4))
    assert total == st_.length
    assert all(ok for name, ok in verify_layer_claims(dec, 3)), \
        verify_layer_claims(dec, 3)


def test_layer_claims_on_enumerated_sequences():
    rng = random.Random(5)
    cases = [s for s in CORPUS_3 if len(s) >= 4][:150]
    for s in cases:
        b = greedy_order_partition(s, 1)
        if b.block_count < 2:
            continue
        cut = rng.randint(1, b.block_count - 1)
        dec = layer_decompose(b, [cut, b.block_count - cut])
        assert all(ok for _, ok in verify_layer_claims(dec, 3)), (s, cut)


def test_klazar_examples():
    assert klazar_partition(seq("abab"), 4).block_count == 1
    assert klazar_partition(seq("abab"), 2).block_count == 2
    s = seq("abcacb")
    assert klazar_partition(s, 2 * s.alphabet_size).block_count == 1
    with pytest.raises(InvalidInput):
        klazar_partition(seq("ababa"), 1)  # not order 3
    with pytest.raises(InvalidInput):
        klazar_partition(seq("abab"), 5)  # quota above the terminal count


def test_klazar_segments_start_with_terminals():
    for s in CORPUS_3[:200]:
        n = s.alphabet_size
        first = {}
        last = {}
        for i, x in enumerate(s):
            first.setdefault(x, i)
            last[x] = i
        for ell in range(1, n + 1):
            part = klazar_partition(s, ell)
            pos = 0
            for block in part.blocks:
                assert pos in set(first.values()) | set(last.values())
                pos += len(block)


def test_klazar_claims_on_enumerated_and_constructed():
    from dsseq.constructions import build_z
    from dsseq.core import remove_adjacent_repeats

    for s in CORPUS_3:
        for ell in (1, 2):
            if ell > s.alphabet_size:
                continue
            assert all(ok for _, ok in verify_klazar_claims(s, ell)), (s, ell)
    for d, m in [(1, 4), (1, 9), (2, 2), (2, 3)]:
        z = remove_adjacent_repeats(build_z(d, m))
        for ell in (1, 2, 3):
            assert all(ok for _, ok in verify_klazar_claims(z, ell)), (d, m, ell)


def test_klazar_segment_count_formula():
    # With every symbol appearing at least twice, no position carries both
    # terminals, so the count is exactly ceil(2n/ell).
    for s in CORPUS_3:
        counts = {}
        for x in s:
            counts[x] = counts.get(x, 0) + 1
        if min(counts.values()) < 2:
            continue
        n = s.alphabet_size
        for ell in (1, 2):
            part = klazar_partition(s, ell) if ell <= n else None
            if part is not None:
                assert part.block_count == ceil(2 * n / ell), (s, ell)


def test_sparsify_examples():
    assert sparsify(BlockedSequence.of([[0, 1], [1, 0]]), 2).symbols == (0, 1, 0)
    assert sparsify(BlockedSequence.of([[0, 1, 2]]), 3).symbols == (0, 1, 2)
    b = BlockedSequence.of([[0, 1], [1, 0]])
    assert sparsify(b, 1).symbols == (0, 1, 1, 0)


@given(st.lists(st.lists(st.integers(0, 5), max_size=5), min_size=1, max_size=5),
       st.integers(1, 4))
def test_sparsify_properties(blocks, r):
    blocks = [list(dict.fromkeys(b)) for b in blocks]
    b = BlockedSequence.of(blocks)
    out = sparsify(b, r)
    assert is_r_sparse(out, r)
    assert len(b) - len(out) <= (r - 1) * max(b.block_count - 1, 0)
    if blocks and blocks[0]:
        assert out.symbols[:len(blocks[0])] == tuple(blocks[0])


def test_cluster_examples():
    assert cluster_multiplicity(BlockedSequence.of([[0]] * 4), 2).blocks == \
        ((1,), (1,), (2,), (2,))
    assert cluster_multiplicity(BlockedSequence.of([[0], [1], [0]]), 2).blocks == \
        ((2,), (), (2,))
    b = BlockedSequence.of([[0, 1], [1, 0]])
    out = cluster_multiplicity(b, 2)
    from dsseq.core import canonicalize

    assert canonicalize(out.sequence) == canonicalize(b.sequence)


@given(st.lists(st.lists(st.integers(0, 4), max_size=4), min_size=1, max_size=6),
       st.integers(1, 3))
def test_cluster_properties(blocks, k):
    blocks = [list(dict.fromkeys(b)) for b in blocks]
    b = BlockedSequence.of(blocks)
    out = cluster_multiplicity(b, k)
    counts = {}
    for x in out.sequence:
        counts[x] = counts.get(x, 0) + 1
    assert all(v == k for v in counts.values())
    assert out.block_count == b.block_count
    assert len(out) >= len(b) - k * b.sequence.alphabet_size
    # Distinct clusters of one symbol are disjoint, so they alternate with
    # length exactly 2; beyond that floor nothing increases.
    assert max_alternation(out.sequence).length <= max(
        max_alternation(b.sequence).length, 2 if len(counts) >= 2 else 1)
    # Fresh ids sit above every original id.
    if counts and b.sequence.alphabet:
        assert min(counts) > max(b.sequence.alphabet)

import random
from itertools import combinations, permutations, product

import pytest

from dsseq.core import Sequence, contains_pattern, seq
from dsseq.errors import CapExceeded, InvalidInput
from dsseq.formations import (
    Formation,
    apply_embedding,
    build_aff_extremal,
    contains_formation,
    embed_pattern,
    is_formation_free,
    pattern_blocks,
    verify_embedding,
)


def test_formation_type():
    f = Formation.of([(1, 2), (2, 1)])
    assert f.r == 2 and f.s == 2
    assert f.flatten().symbols == (1, 2, 2, 1)
    with pytest.raises(InvalidInput):
        Formation.of([(1, 1)])
    with pytest.raises(InvalidInput):
        Formation.of([])


def test_contains_formation_examples():
    f = Formation.of([(1, 2, 3, 4), (4, 3, 1, 2), (4, 3, 1, 2),
                      (3, 4, 2, 1), (4, 1, 2, 3)])
    w = contains_formation(f.flatten(), 4, 5)
    assert w is not None and len(w.windows) == 5
    assert contains_formation(seq("ab"), 2, 2) is None
    assert contains_formation(seq("aaa"), 1, 3) is not None
    with pytest.raises(CapExceeded):
        contains_formation(seq("abcde"), 5, 1)


def test_contains_formation_matches_bruteforce():
    rng = random.Random(2)

    def brute(s_seq, r, s):
        alphabet = sorted(set(s_seq.symbols))
        for chosen in combinations(alphabet, r):
            pool = [x for x in s_seq if x in chosen]
            windows = 0
            need = set(chosen)
            for x in pool:
                need.discard(x)
                if not need:
                    windows += 1
                    need = set(chosen)
            if windows >= s:
                return True
        return False

    for _ in range(250):
        n = rng.randint(1, 4)
        xs = [rng.randrange(n) for _ in range(rng.randint(0, 14))]
        s_seq = Sequence(tuple(xs))
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                got = contains_formation(s_seq, r, s) is not None
                assert got == brute(s_seq, r, s), (xs, r, s)


def test_formation_witness_windows_are_disjoint_and_complete():
    s_seq = seq("abcbcacab")
    w = contains_formation(s_seq, 3, 2)
    assert w is not None
    prev_end = -1
    for window in w.windows:
        assert min(window) > prev_end
        assert {s_seq[i] for i in window} == set(w.symbols)
        prev_end = max(window)


def test_is_formation_free_examples():
    assert is_formation_free(seq("abab"), 2, 4)   # only 2 disjoint windows
    assert not is_formation_free(seq("abab"), 2, 2)
    assert is_formation_free(seq("abcd"), 2, 2)
    assert not is_formation_free(seq("aa"), 2, 2)  # not 2-sparse


def test_pattern_blocks_worked_example():
    u = Sequence(tuple(x - 1 for x in (1, 1, 1, 2, 1, 3, 4, 2, 4, 1, 2, 5, 5)))
    pb = pattern_blocks(u)
    got = tuple(tuple(x + 1 for x in b) for b in pb.blocks)
    assert got == ((1,), (1,), (1, 2), (1, 3, 4), (2,), (4,), (1,), (2, 5), (5,))


def test_pattern_blocks_simple():
    assert pattern_blocks(seq("abc")).blocks == ((0, 1, 2),)
    assert pattern_blocks(seq("aa")).blocks == ((0,), (0,))
    pb = pattern_blocks(seq("abacbc"))
    assert len(pb.blocks) == 6 - 3 + 1
    with pytest.raises(InvalidInput):
        pattern_blocks(Sequence((1, 0)))  # not canonical


def test_embedding_worked_example():
    u = Sequence(tuple(x - 1 for x in (1, 1, 1, 2, 1, 3, 4, 2, 4, 1, 2, 5, 5)))
    perms = [(1, 2, 3, 4, 5)] * 9
    perms[2] = (3, 2, 5, 1, 4)
    perms[3] = (3, 5, 4, 2, 1)
    perms[7] = (3, 5, 1, 4, 2)
    formation = Formation.of(perms)
    sigma = embed_pattern(u, formation)
    assert sigma == {5: 2, 4: 1, 3: 4, 2: 5, 1: 3}
    image = apply_embedding(u, sigma)
    assert image.symbols[:4] == (3, 3, 3, 5)
    verify_embedding(u, formation)


def test_embedding_trivial():
    sigma = embed_pattern(seq("ab"), Formation.of([(1, 2)]))
    assert sigma == {1: 1, 2: 2}
    with pytest.raises(InvalidInput):
        embed_pattern(seq("ab"), Formation.of([(1, 2), (2, 1)]))


def test_embedding_randomized():
    rng = random.Random(9)
    for _ in range(300):
        r = rng.randint(1, 4)
        length = rng.randint(max(r, 2), 8)
        while True:
            out = []
            nxt = 0
            for i in range(length):
                must = (r - nxt) > (length - i - 1)
                if nxt < r and (must or nxt == 0 or rng.random() < 0.5):
                    out.append(nxt)
                    nxt += 1
                else:
                    out.append(rng.randrange(nxt))
            if nxt == r:
                break
        u = Sequence(tuple(out))
        perms = []
        for _ in range(length - r + 1):
            p = list(range(1, r + 1))
            rng.shuffle(p)
            perms.append(tuple(p))
        verify_embedding(u, Formation.of(perms))


def test_containment_bridge_small():
    # A pattern with r distinct symbols and length s embeds in every
    # (r, s - r + 1)-formation.
    rng = random.Random(4)
    for _ in range(120):
        r = rng.randint(1, 3)
        length = rng.randint(max(r, 2), 7)
        while True:
            out = []
            nxt = 0
            for i in range(length):
                must = (r - nxt) > (length - i - 1)
                if nxt < r and (must or nxt == 0 or rng.random() < 0.5):
                    out.append(nxt)
                    nxt += 1
                else:
                    out.append(rng.randrange(nxt))
            if nxt == r:
                break
        u = Sequence(tuple(out))
        perms = []
        for _ in range(length - r + 1):
            p = list(range(1, r + 1))
            rng.shuffle(p)
            perms.append(tuple(p))
        flat = Formation.of(perms).flatten()
        assert contains_pattern(u, flat) is not None


def test_remark_abcabca_in_every_34_formation():
    u = seq("abcabca")
    for combo in product(list(permutations((1, 2, 3))), repeat=4):
        flat = Formation.of(combo).flatten()
        assert contains_pattern(u, flat) is not None, combo


def test_aff_extremal_shapes():
    assert build_aff_extremal(2, 3).blocks == ((0,), (0, 1), (1,))
    assert build_aff_extremal(3, 2).blocks == ((0, 1), (0, 1))
    assert build_aff_extremal(2, 1).blocks == ((),)
    with pytest.raises(InvalidInput):
        build_aff_extremal(1, 3)


def test_aff_extremal_properties():
    from collections import Counter

    for r in (2, 3, 4):
        for m in (1, 2, 3, 4, 5):
            b = build_aff_extremal(r, m)
            counts = Counter(b.sequence.symbols)
            assert len(counts) == (r - 1) * (m - 1)
            assert all(v == 2 for v in counts.values())
            assert b.block_count == m
            assert b.blocks_have_distinct_symbols()
            assert contains_formation(b.sequence, r, 2) is None


def test_clustering_never_creates_formations():
    # Disjoint symbols cannot join one formation, so the multiplicity
    # clustering transform preserves formation-freeness for s >= 2.
    from dsseq.core import BlockedSequence
    from dsseq.decompositions import cluster_multiplicity

    rng = random.Random(6)
    for _ in range(150):
        blocks = []
        for _ in range(rng.randint(1, 5)):
            blocks.append(list(dict.fromkeys(
                rng.randrange(4) for _ in range(rng.randint(0, 4)))))
        b = BlockedSequence.of(blocks)
        base = b.sequence
        for r in (2, 3):
            for s in (2, 3):
                if contains_formation(base, r, s) is None:
                    out = cluster_multiplicity(b, 2)
                    assert contains_formation(out.sequence, r, s) is None

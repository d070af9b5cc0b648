import json

import pytest
from hypothesis import given, strategies as st

from dsseq.core import (
    BlockedSequence,
    Sequence,
    alternation_of_pair,
    canonicalize,
    contains_pattern,
    from_json_obj,
    is_ds,
    is_r_sparse,
    max_alternation,
    remove_adjacent_repeats,
    seq,
    to_json_obj,
)
from dsseq.errors import CapExceeded, InvalidInput

sequences = st.lists(st.integers(0, 5), max_size=14).map(lambda xs: Sequence(tuple(xs)))
small_patterns = st.lists(st.integers(0, 2), min_size=1, max_size=5).map(
    lambda xs: Sequence(tuple(xs)))


def test_canonicalize_examples():
    assert canonicalize(seq("b a b a")).symbols == (0, 1, 0, 1)
    assert canonicalize(seq("")).symbols == ()
    assert canonicalize(seq("7 7 3")).symbols == (0, 0, 1)


def test_sparsity_examples():
    assert is_r_sparse(seq("abab"), 2)
    assert not is_r_sparse(seq("abab"), 3)
    assert is_r_sparse(seq("aa"), 1)  # r = 1 is vacuous
    assert is_r_sparse(seq(""), 4)


def test_max_alternation_examples():
    assert max_alternation(seq("abab")) == (4, (0, 1))
    assert max_alternation(seq("abba")).length == 3
    # Materialized Z(1, 2) flattens to 1 2 2 1 1 2.
    assert max_alternation(seq("abbaab")).length == 4
    assert max_alternation(seq("")) == (0, None)
    assert max_alternation(seq("aaa")) == (1, None)


def test_is_ds_examples():
    assert not is_ds(seq("abab"), 2)
    assert is_ds(seq("abab"), 3)
    assert not is_ds(seq("aab"), 5)
    with pytest.raises(InvalidInput):
        is_ds(seq("ab"), 0)


def test_contains_pattern_examples():
    w = contains_pattern(seq("abab"), seq("abcdbc"))
    assert w is not None
    # Verify the witness actually embeds.
    u, s = seq("abab"), seq("abcdbc")
    assert [s[i] for i in w.positions] == [w.mapping[x] for x in u]
    assert contains_pattern(seq("abba"), seq("abcdbc")) is None
    assert contains_pattern(seq("a"), seq("x")) is not None
    assert contains_pattern(seq(""), seq("abc")).positions == ()


def test_contains_pattern_cap():
    u = Sequence(tuple(range(7)))
    with pytest.raises(CapExceeded):
        contains_pattern(u, Sequence(tuple(range(10))))
    assert contains_pattern(u, Sequence(tuple(range(10))), cap=7) is not None


def test_remove_adjacent_repeats_examples():
    assert remove_adjacent_repeats(BlockedSequence.of([[0, 1], [1, 0]])).symbols == (0, 1, 0)
    assert remove_adjacent_repeats(BlockedSequence.of([[0, 1, 2]])).symbols == (0, 1, 2)
    assert remove_adjacent_repeats(BlockedSequence.of([[0], [0], [0]])).symbols == (0,)
    with pytest.raises(InvalidInput):
        remove_adjacent_repeats(BlockedSequence.of([[0, 0]]))


def test_blocked_sequence_shape():
    b = BlockedSequence.of([[0, 1], [], [1]], special=[0])
    assert b.block_count == 3
    assert len(b) == 3
    assert b.boundaries == (2, 2)
    assert b.render() == "[0 1] | () | (1)"
    with pytest.raises(InvalidInput):
        BlockedSequence.of([[0]], special=[1])


def test_json_roundtrip():
    b = BlockedSequence.of([[0, 1], [2], []], special=[2])
    assert from_json_obj(json.loads(json.dumps(to_json_obj(b)))) == b
    s = seq("abab")
    assert from_json_obj(to_json_obj(s)).sequence == s
    with pytest.raises(InvalidInput):
        from_json_obj({"nope": 1})


@given(sequences)
def test_canonicalize_idempotent_and_preserving(s):
    c = canonicalize(s)
    assert canonicalize(c) == c
    assert len(c) == len(s)
    assert c.alphabet_size == s.alphabet_size
    assert max_alternation(c).length == max_alternation(s).length


@given(small_patterns, sequences)
def test_canonicalize_preserves_containment(u, s):
    direct = contains_pattern(u, s) is not None
    assert (contains_pattern(canonicalize(u), canonicalize(s)) is not None) == direct


@given(sequences, st.integers(1, 5))
def test_is_ds_monotone_in_order(s, order):
    if is_ds(s, order):
        assert is_ds(s, order + 1)
        assert is_ds(s, order + 3)


@given(small_patterns)
def test_containment_reflexive(u):
    assert contains_pattern(u, u) is not None


@given(small_patterns, small_patterns, sequences)
def test_containment_transitive(u, v, s):
    if contains_pattern(u, v) is not None and contains_pattern(v, s) is not None:
        assert contains_pattern(u, s) is not None


@given(sequences)
def test_max_alternation_matches_pair_automaton(s):
    # Independent re-implementation: direct two-symbol scans over all pairs.
    alphabet = sorted(s.alphabet)
    best = len(alphabet) if len(alphabet) < 2 else 0
    for i in range(len(alphabet)):
        for j in range(i + 1, len(alphabet)):
            best = max(best, alternation_of_pair(s, alphabet[i], alphabet[j]))
    assert max_alternation(s).length == best


@given(st.lists(st.lists(st.integers(0, 6), max_size=4), max_size=6))
def test_remove_adjacent_repeats_properties(blocks):
    blocks = [list(dict.fromkeys(b)) for b in blocks]  # make blocks distinct
    b = BlockedSequence.of(blocks)
    out = remove_adjacent_repeats(b)
    assert is_r_sparse(out, 2)
    assert len(b) - len(out) <= max(b.block_count - 1, 0)
    # Subsequence of the input.
    it = iter(b.sequence.symbols)
    assert all(x in it for x in out.symbols)

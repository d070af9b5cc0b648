import random

from dsseq.core import Sequence, max_alternation
from dsseq.fastcheck import (_find_ababa_python, _occurrence_arrays,
                             alternation_at_most, find_alternation_of_5)


def _dumb_has_5(xs):
    return max_alternation(Sequence(tuple(xs))).length >= 5


def test_known_cases():
    assert find_alternation_of_5([0, 1, 0, 1, 0]) is not None
    assert find_alternation_of_5([0, 1, 0, 1]) is None
    assert find_alternation_of_5([]) is None
    hit = find_alternation_of_5([2, 0, 1, 0, 3, 1, 0, 4, 1])
    if hit is not None:
        i1, j1, p, j2, i5 = hit
        assert i1 < j1 < p < j2 < i5


def test_witness_positions_form_alternation():
    xs = [5, 0, 1, 0, 2, 1, 3, 0, 4, 1, 0]
    hit = find_alternation_of_5(xs)
    assert hit is not None
    i1, j1, p, j2, i5 = hit
    assert xs[i1] == xs[p] == xs[i5]
    assert xs[j1] == xs[j2] != xs[p]
    assert i1 < j1 < p < j2 < i5


def test_randomized_equivalence_with_reference():
    rng = random.Random(7)
    for _ in range(400):
        n = rng.randint(1, 6)
        xs = [rng.randrange(n) for _ in range(rng.randint(0, 30))]
        assert (find_alternation_of_5(xs) is None) == (not _dumb_has_5(xs)), xs


def test_python_fallback_matches_kernel_path():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 5)
        xs = [rng.randrange(n) for _ in range(rng.randint(5, 25))]
        import numpy as np

        syms = np.asarray(xs, dtype=np.int64)
        first, last, prev = _occurrence_arrays(syms)
        py = _find_ababa_python(list(first), list(last), list(prev))
        assert (py is None) == (find_alternation_of_5(xs) is None)


def test_alternation_at_most_fast_paths():
    # Multiplicity shortcut: every symbol at most twice cannot exceed 4.
    assert alternation_at_most([0, 1, 0, 1, 2, 2], 4)
    assert alternation_at_most([0, 1, 0, 1, 0], 5)
    assert not alternation_at_most([0, 1, 0, 1, 0], 4)
    assert not alternation_at_most([0, 1, 0, 1, 0, 1], 5)
    assert alternation_at_most([], 3)


def test_scales_to_construction_output():
    from dsseq.constructions import build_z

    b = build_z(2, 10)
    assert alternation_at_most(b.sequence.symbols, 4)
    # Damaging the sequence is detected: append an out-of-place alternation.
    xs = list(b.sequence.symbols)
    a, c = xs[0], None
    for y in xs:
        if y != a:
            c = y
            break
    xs.extend([a, c, a, c, a])
    assert not alternation_at_most(xs, 4)

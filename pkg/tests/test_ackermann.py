import random
from fractions import Fraction

import pytest

from dsseq import ackermann as ack
from dsseq.errors import BudgetExceeded, Incomparable, InvalidInput


def test_hierarchy_values():
    assert ack.ackermann_level(1, 7) == 14
    assert ack.ackermann_level(2, 10) == 1024
    assert ack.ackermann_level(3, 3) == 16
    assert ack.ackermann_level(3, 4) == 65536
    for k in range(1, 11):
        assert ack.ackermann_level(k, 1) == 2
        assert ack.ackermann_level(k, 2) == 4
    for k in range(2, 6):
        assert ack.ackermann_level(k, 0) == 1


def test_diagonal_values_and_recurrence():
    assert [ack.ackermann(n) for n in (1, 2, 3, 4)] == [6, 8, 16, 65536]
    # The alternative recurrence A(n) = A_{n-2}(A(n-1)) for n >= 3.
    assert ack.ackermann(3) == ack.ackermann_level(1, ack.ackermann(2))
    assert ack.ackermann(4) == ack.ackermann_level(2, ack.ackermann(3))


def test_diagonal_budget_exceeded_carries_tower():
    with pytest.raises(BudgetExceeded) as e:
        ack.ackermann(5)
    bound = e.value.bound
    assert bound.exact
    # A(5) is a tower of 65536 twos; the top 65536 itself is a 4-tower.
    assert bound.lower.height + 4 == 65536
    assert bound.lower.top == 65536


def test_hierarchy_monotonicity():
    # Strictly increasing in n; nondecreasing in k for n >= 3 (while
    # materializable).
    for k in (1, 2, 3):
        vals = [ack.ackermann_level(k, n) for n in range(1, 8 if k < 3 else 5)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
    assert ack.ackermann_level(1, 3) <= ack.ackermann_level(2, 3) \
        <= ack.ackermann_level(3, 3) <= ack.ackermann_level(4, 3)


def test_alpha_examples():
    assert ack.alpha_level(2, 1024) == 10
    assert ack.alpha_level(3, 65536) == 4
    assert all(ack.alpha_level(k, 1) == 0 for k in range(2, 7))
    assert ack.alpha_level(1, 9) == 5
    assert ack.alpha(65536) == 4
    assert ack.alpha(17) == 4
    assert ack.alpha(6) == 1
    assert ack.alpha(0) == 1


def test_alpha_definitions_agree_small():
    for k in (1, 2, 3, 4, 5):
        for x in list(range(0, 200)) + [10**3, 10**4 + 7, 10**6]:
            assert ack.alpha_level(k, x) == ack.alpha_level_by_inversion(k, x), (k, x)
    for x in (1, 5, 6, 7, 16, 17, 65536, 65537):
        assert ack.alpha(x) == ack.alpha_by_inversion(x)
    for n in (1, 2, 3, 4):
        assert ack.alpha(ack.ackermann(n)) == n


def test_alpha_tables_match_pointwise():
    for k in (1, 2, 3, 4, 5):
        table = ack.alpha_table(k, 3000)
        for x in (0, 1, 2, 3, 17, 100, 2999):
            assert table[x] == ack.alpha_level(k, x)


def test_tower_compare_materializable_agrees_with_exact():
    rng = random.Random(0)
    pool = []
    for _ in range(120):
        h = rng.randint(0, 3)
        top = rng.randint(1, 40)
        t = ack.tower(h, top)
        v = t.materialize(10**5)
        if v is not None:
            pool.append((t, v))
    for i in range(len(pool)):
        for j in range(len(pool)):
            ti, vi = pool[i]
            tj, vj = pool[j]
            assert ack.compare_towers(ti, tj) == (vi > vj) - (vi < vj)


def test_tower_normalization():
    t = ack.tower(0, 1 << 80)
    assert t.height == 1 and t.top == 80
    t = ack.tower(1, 1 << 128)
    assert t.height == 2 and t.top == 128
    # Non-powers of two stay put (comparison handles them exactly).
    t = ack.tower(0, (1 << 70) + 1)
    assert t.height == 0


def test_tower_fraction_tops():
    a = ack.tower(0, Fraction(7, 2))
    b = ack.tower(1, 2)
    assert ack.compare_towers(a, b) == -1
    assert ack.compare_towers(b, a) == 1
    c = ack.tower(1, Fraction(3, 2))  # 2^1.5, between 2 and 4
    assert ack.compare_towers(ack.tower(0, 2), c) == -1
    assert ack.compare_towers(ack.tower(0, 4), c) == 1
    with pytest.raises(Incomparable):
        ack.compare_towers(ack.tower(0, 3), c)


def test_a_hat_values():
    assert ack.a_hat(0, 9) == 9
    assert ack.a_hat(1, 3) == 96
    assert ack.a_hat(1, 5) == (1 << 8) * 120
    for m in range(1, 11):
        assert ack.a_hat(1, m) == ack.a_hat_closed_form_level1(m)
    assert ack.a_hat(3, 1) == 1
    v = ack.a_hat(2, 2)
    assert isinstance(v, ack.TowerBounds) and not v.exact
    assert ack.le_val(ack.a_hat_closed_form_level1(16), v) is True


def test_val_arithmetic_soundness():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(1, 10**6)
        v = ack.exp2_val(n, bit_budget=64)
        if isinstance(v, int):
            assert v == 2**n
        else:
            assert v.exact
            assert v.lower.materialize(10**7) in (2**n, None)
        w = ack.mul_pow2_val(ack.TowerBounds.from_int(n), 5)
        assert w.exact and w.lower.materialize(10**7) == n * 32


def test_sandwich_reflexivity_and_ranges():
    spec = ack.a_level_spec(2)
    rep = ack.hierarchy_sandwich_check(spec, spec, 1, 0, range(1, 12))
    assert rep.holds_everywhere
    rep = ack.hierarchy_sandwich_check(
        ack.a_hat_spec(2), ack.a_level_spec(3), 2, 4, range(1, 4))
    assert rep.holds_everywhere
    assert "A_3" in rep.render()


def test_alpha_hat_variant_and_deviation():
    # Threshold 10 is the s = 3 threshold; the variant stays within a small
    # additive constant of the plain hierarchy.
    table = ack.alpha_hat_table(3, 3, 10, 2000)
    plain = ack.alpha_table(3, 2000)
    devs = [abs(a - b) for a, b in zip(table, plain)]
    assert max(devs) <= 2
    assert ack.alpha_hat_deviation(3, 10, k_max=4, x_max=2000) <= 2


def test_invalid_inputs():
    with pytest.raises(InvalidInput):
        ack.ackermann_level(0, 3)
    with pytest.raises(InvalidInput):
        ack.alpha_level(1, -1)
    with pytest.raises(InvalidInput):
        ack.ackermann(0)
    with pytest.raises(InvalidInput):
        ack.tower(-1, 2)
    with pytest.raises(InvalidInput):
        ack.tower(0, 0)

"""Ackermann hierarchy, its slow inverses, and tower-number arithmetic.

The hierarchy is A_1(n) = 2n and A_k(n) = A_{k-1}^{(n)}(1) for k >= 2, so
A_2(n) = 2^n and A_3(n) is a tower of n twos.  The diagonal function is
A(n) = A_n(3) = 6, 8, 16, 65536, ...  (An alternative diagonalization
A'(n) = A_n(n) exists in the literature; it differs from A only by a shift
of argument and is deliberately not implemented.)

The inverse hierarchy has two equivalent definitions: alpha_k(x) =
min{n : A_k(n) >= x}, or directly alpha_1(x) = ceil(x/2) and, for k >= 2,
alpha_k(x) = number of times alpha_{k-1} must be applied to x to reach a
value <= 1.  alpha(x) = min{k : alpha_k(x) <= 3}.

Values above the materialization budget (10^6 bits by default) degrade to
``TowerBounds``: a lower/upper pair of ``TowerNumber``s, where TowerNumber
(height, top) denotes the result of applying x -> 2^x ``height`` times to
``top``.  All arithmetic here rounds bounds outward, so comparisons made
through bounds are certified.

Everything is pure over immutable values; the memo tables behind the
evaluators are lru_cache-backed and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Optional, Union

from .errors import BudgetExceeded, Incomparable, InvalidInput

DEFAULT_BIT_BUDGET = 10**6
# Tops larger than this are lifted one level when that is exact (powers of 2).
NORMALIZATION_BOUND = 1 << 64
# Largest integer argument for which A_k / a_hat are evaluated by iteration.
_ITER_CAP = 1 << 20
_AHAT_ITER_CAP = 4096


# ---------------------------------------------------------------------------
# TowerNumber
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TowerNumber:
    """(height, top): apply x -> 2^x ``height`` times to ``top`` (top >= 1)."""

    height: int
    top: Union[int, Fraction]

    def __post_init__(self):
        if self.height < 0:
            raise InvalidInput("tower height must be nonnegative")
        if self.top < 1:
            raise InvalidInput("tower top must be >= 1")

    def __repr__(self):
        return f"TowerNumber(height={self.height}, top={self.top})"

    def materialize(self, bit_budget: int = DEFAULT_BIT_BUDGET) -> Optional[int]:
        """Exact integer value if it fits in the bit budget, else None."""
        v = self.top
        if isinstance(v, Fraction):
            if v.denominator != 1:
                return None if self.height else None
            v = v.numerator
        for _ in range(self.height):
            if v > bit_budget:
                return None
            v = 1 << v
        return v


def tower(height: int, top: Union[int, Fraction]) -> TowerNumber:
    """Normalizing constructor: lift integer power-of-two tops >= 2^64 exactly."""
    while isinstance(top, int) and top >= NORMALIZATION_BOUND and top & (top - 1) == 0:
        top = top.bit_length() - 1
        height += 1
    if isinstance(top, Fraction) and top.denominator == 1:
        top = top.numerator
    return TowerNumber(height, top)


def _exceeds(top: Union[int, Fraction], value: Union[int, Fraction]) -> bool:
    """True when 2^top is certainly > value (by bit-length comparison)."""
    if isinstance(value, Fraction):
        bits = (value.numerator // value.denominator + 1).bit_length() + 1
    else:
        bits = value.bit_length()
    return top >= bits + 1


def compare_towers(a: TowerNumber, b: TowerNumber) -> int:
    """Total comparison, consistent with exact values; -1 / 0 / 1.

    Raises Incomparable only when a fractional top prevents deciding (never
    the case for towers built by this package's arithmetic).
    """
    if a.height > b.height:
        return -compare_towers(b, a)
    if a.height == b.height:
        return (a.top > b.top) - (a.top < b.top)
    d = b.height - a.height
    at = a.top
    if isinstance(b.top, int) or b.top.denominator == 1:
        lo = int(b.top)
        hi: Optional[int] = lo
        exact = True
    else:
        lo = int(b.top)  # floor
        hi = lo + 1
        exact = False
    for _ in range(d):
        if _exceeds(lo, at):
            return -1  # the remaining exponentiations only grow further
        lo = 1 << lo
        if exact:
            hi = lo
        elif hi is not None:
            hi = (1 << hi) if hi.bit_length() < 24 else None
    if exact:
        return (at > lo) - (at < lo)
    # Fractional top: the floor/ceil bracket is strict on both sides.
    if at <= lo:
        return -1
    if hi is not None and at >= hi:
        return 1
    raise Incomparable(f"cannot order {a} against {b}")


# ---------------------------------------------------------------------------
# TowerBounds: certified lower/upper bracket, possibly exact
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TowerBounds:
    """Certified bracket lower <= value <= upper (upper may be unknown)."""

    lower: TowerNumber
    upper: Optional[TowerNumber]
    exact: bool

    @staticmethod
    def from_int(n: int) -> "TowerBounds":
        t = tower(0, n)
        return TowerBounds(t, t, True)

    def materialize(self, bit_budget: int = DEFAULT_BIT_BUDGET) -> Optional[int]:
        return self.lower.materialize(bit_budget) if self.exact else None

    def __repr__(self):
        if self.exact:
            return f"TowerBounds(exact {self.lower})"
        return f"TowerBounds({self.lower} .. {self.upper})"


Val = Union[int, TowerBounds]


def _bounds(v: Val) -> TowerBounds:
    return TowerBounds.from_int(v) if isinstance(v, int) else v


def _lift_lower(t: TowerNumber) -> TowerNumber:
    """Round a huge integer top DOWN one level to keep tops small."""
    while isinstance(t.top, int) and t.top >= NORMALIZATION_BOUND:
        t = TowerNumber(t.height + 1, t.top.bit_length() - 1)  # 2^floor(log2) <= top
    return t


def _lift_upper(t: TowerNumber) -> TowerNumber:
    """Round a huge integer top UP one level."""
    while isinstance(t.top, int) and t.top >= NORMALIZATION_BOUND:
        t = TowerNumber(t.height + 1, (t.top - 1).bit_length())  # 2^ceil(log2) >= top
    return t


def _bump_upper(t: TowerNumber, e: int = 1) -> TowerNumber:
    """An upper bound for t * 2^e (adds e to the top; exact at height <= 1)."""
    if t.height == 0:
        return _lift_upper(tower(0, t.top * (1 << e)))
    return _lift_upper(TowerNumber(t.height, t.top + e))


def exp2_val(v: Val, bit_budget: int = DEFAULT_BIT_BUDGET) -> Val:
    """2^v, exact as int when within budget, else an exact tower bracket."""
    if isinstance(v, int):
        if v <= bit_budget:
            return 1 << v
        t = tower(1, v)
        return TowerBounds(t, t, True)
    lo = tower(v.lower.height + 1, v.lower.top)
    hi = None if v.upper is None else tower(v.upper.height + 1, v.upper.top)
    return TowerBounds(lo, hi, v.exact)


def mul_pow2_val(v: Val, e: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> Val:
    """v * 2^e with outward rounding."""
    if e < 0:
        raise InvalidInput("exponent must be nonnegative")
    if isinstance(v, int):
        if v.bit_length() + e <= 4 * bit_budget:
            return v << e
        # Too large to shift in memory: bracket v in [2^(b-1), 2^b).
        b = v.bit_length()
        lo = tower(1, e + b - 1)
        if v & (v - 1) == 0:
            return TowerBounds(lo, lo, True)
        return TowerBounds(lo, tower(1, e + b), False)
    lo_t = v.lower
    if lo_t.height == 0:
        new_lo = tower(0, lo_t.top * (1 << e))
        lo_exact = True
    elif lo_t.height == 1 and isinstance(lo_t.top, int):
        new_lo = tower(1, lo_t.top + e)  # 2^t * 2^e exactly
        lo_exact = True
    else:
        new_lo = lo_t  # v * 2^e >= v
        lo_exact = False
    if v.exact and lo_exact:
        return TowerBounds(new_lo, new_lo, True)
    new_hi = None if v.upper is None else _bump_upper(v.upper, e)
    return TowerBounds(new_lo, new_hi, False)


def mul_int_val(v: Val, c: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> Val:
    """v * c for c >= 1 with outward rounding."""
    if c < 1:
        raise InvalidInput("multiplier must be >= 1")
    if isinstance(v, int):
        return v * c
    if c == 1:
        return v
    e = (c - 1).bit_length()  # c <= 2^e
    if v.lower.height == 0:
        new_lo = tower(0, v.lower.top * c)
        if v.exact:
            return TowerBounds(new_lo, new_lo, True)
    else:
        new_lo = v.lower
    new_hi = None if v.upper is None else _bump_upper(v.upper, e)
    return TowerBounds(new_lo, new_hi, False)


def mul_val(a: Val, b: Val, bit_budget: int = DEFAULT_BIT_BUDGET) -> Val:
    """a * b with outward rounding (both >= 1)."""
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    if isinstance(a, int):
        return mul_int_val(b, a, bit_budget)
    if isinstance(b, int):
        return mul_int_val(a, b, bit_budget)
    lo = a.lower if compare_towers(a.lower, b.lower) >= 0 else b.lower
    if a.upper is None or b.upper is None:
        return TowerBounds(lo, None, False)
    hu = a.upper if compare_towers(a.upper, b.upper) >= 0 else b.upper
    if hu.height == 0:
        hi = _lift_upper(tower(0, hu.top * hu.top))
    else:
        hi = _lift_upper(TowerNumber(hu.height, hu.top + 1))  # max^2 <= bump(max)
    return TowerBounds(lo, hi, False)


def le_val(a: Val, b: Val) -> Optional[bool]:
    """Certified a <= b; None when the brackets overlap undecidably."""
    if isinstance(a, int) and isinstance(b, int):
        return a <= b
    ab, bb = _bounds(a), _bounds(b)
    if ab.upper is not None and compare_towers(ab.upper, bb.lower) <= 0:
        return True
    if bb.upper is not None and compare_towers(ab.lower, bb.upper) > 0:
        return False
    if ab.exact and bb.exact:
        return compare_towers(ab.lower, bb.lower) <= 0
    return None


# ---------------------------------------------------------------------------
# Ackermann hierarchy
# ---------------------------------------------------------------------------

def _ack_apply(j: int, v: Val, bit_budget: int) -> Val:
    """A_j(v) over exact ints or tower brackets."""
    if j == 1:
        if isinstance(v, int):
            return 2 * v
        return mul_int_val(v, 2, bit_budget)
    if j == 2:
        return exp2_val(v, bit_budget)
    if isinstance(v, int):
        if v == 0:
            return 1
        if v <= _ITER_CAP:
            w: Val = 1
            for _ in range(v):
                w = _ack_apply(j - 1, w, bit_budget)
            return w
        # Too large to iterate; A_j(v) >= A_2(v) = 2^v for j >= 2, v >= 3.
        return TowerBounds(tower(1, v), None, False)
    lo = v.lower
    return TowerBounds(tower(lo.height + 1, lo.top), None, False)


@lru_cache(maxsize=None)
def _ack_value(k: int, n: int, bit_budget: int) -> Val:
    if k < 1 or n < 0:
        raise InvalidInput("ackermann_level requires k >= 1, n >= 0")
    if k == 1:
        return 2 * n
    if k == 2:
        return exp2_val(n, bit_budget)
    v: Val = 1
    for _ in range(n):
        v = _ack_apply(k - 1, v, bit_budget)
    return v


def ackermann_level(k: int, n: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    """Exact A_k(n); raises BudgetExceeded carrying a tower lower bound."""
    v = _ack_value(k, n, bit_budget)
    if isinstance(v, int):
        if v.bit_length() > bit_budget:
            raise BudgetExceeded(f"A_{k}({n}) exceeds {bit_budget} bits",
                                 bound=TowerBounds.from_int(v))
        return v
    raise BudgetExceeded(f"A_{k}({n}) exceeds {bit_budget} bits", bound=v)


def ackermann_level_val(k: int, n: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> Val:
    """A_k(n) as an int or tower bracket, without raising."""
    return _ack_value(k, n, bit_budget)


def ackermann(n: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    """The diagonal A(n) = A_n(3): 6, 8, 16, 65536, then past any budget."""
    if n < 1:
        raise InvalidInput("ackermann requires n >= 1")
    return ackermann_level(n, 3, bit_budget)


def ackermann_val(n: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> Val:
    if n < 1:
        raise InvalidInput("ackermann requires n >= 1")
    return _ack_value(n, 3, bit_budget)


# ---------------------------------------------------------------------------
# Inverse hierarchy (recursive definition) and the min-form cross-check
# ---------------------------------------------------------------------------

def alpha_level(k: int, x: int) -> int:
    """alpha_k(x) by the recursive definition (exact, nonnegative ints)."""
    if k < 1 or x < 0:
        raise InvalidInput("alpha_level requires k >= 1, x >= 0")
    if k == 1:
        return (x + 1) // 2
    count = 0
    while x > 1:
        x = alpha_level(k - 1, x)
        count += 1
    return count


def alpha_level_by_inversion(k: int, x: int,
                             bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    """min{n : A_k(n) >= x}, using certified lower bounds past the budget."""
    if x <= 1:
        # A_k(0) = 1 >= x for x <= 1 (and A_1(0) = 0 >= 0 only for x = 0).
        if k == 1:
            return 0 if x <= 0 else 1
        return 0
    n = 0
    while True:
        v = _ack_value(k, n, bit_budget)
        if isinstance(v, int):
            if v >= x:
                return n
        else:
            if compare_towers(v.lower, tower(0, x)) >= 0:
                return n
        n += 1


def alpha(x: int) -> int:
    """alpha(x) = min{k : alpha_k(x) <= 3}."""
    if x < 0:
        raise InvalidInput("alpha requires x >= 0")
    k = 1
    while alpha_level(k, x) > 3:
        k += 1
    return k


def alpha_by_inversion(x: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> int:
    """min{n : A(n) >= x} (agrees with alpha for x <= A(4))."""
    n = 1
    while True:
        v = ackermann_val(n, bit_budget)
        if isinstance(v, int):
            if v >= x:
                return n
        else:
            if compare_towers(v.lower, tower(0, x)) >= 0:
                return n
        n += 1


@lru_cache(maxsize=32)
def alpha_table(k: int, xmax: int) -> list:
    """alpha_k(x) for all 0 <= x <= xmax, computed by increasing-x recursion."""
    if k == 1:
        return [(x + 1) // 2 for x in range(xmax + 1)]
    prev = alpha_table(k - 1, xmax)
    out = [0] * (xmax + 1)
    for x in range(2, xmax + 1):
        out[x] = 1 + out[prev[x]]  # prev[x] < x for x >= 2
    return out


# ---------------------------------------------------------------------------
# The recurrence-friendly variant of the inverse hierarchy
# ---------------------------------------------------------------------------

def alpha_hat_table(k: int, s: int, m0_value: int, xmax: int) -> list:
    """Variant hierarchy: hat_2 = alpha_2; for k >= 3,
    hat_k(x) = 1 if x <= m0_value else 1 + hat_k(1 + 2*hat_{k-1}(x)^(s-2)).

    The m0_value threshold must make the inner argument strictly decrease;
    this is validated while filling the table.
    """
    if k < 2:
        raise InvalidInput("the variant hierarchy starts at level 2")
    if k == 2:
        return alpha_table(2, xmax)
    prev = alpha_hat_table(k - 1, s, m0_value, xmax)
    out = [1] * (xmax + 1)
    for x in range(m0_value + 1, xmax + 1):
        inner = 1 + 2 * prev[x] ** (s - 2)
        if inner >= x:
            raise InvalidInput(
                f"threshold {m0_value} too small: argument does not decrease at x={x}")
        out[x] = 1 + out[inner]
    return out


def alpha_hat_deviation(s: int, m0_value: int, k_max: int = 4,
                        x_max: int = 10**6) -> int:
    """Empirical max |hat_k(x) - alpha_k(x)| over 2 <= k <= k_max, x <= x_max."""
    worst = 0
    for k in range(2, k_max + 1):
        hat = alpha_hat_table(k, s, m0_value, x_max)
        plain = alpha_table(k, x_max)
        worst = max(worst, max(abs(h - p) for h, p in zip(hat, plain)))
    return worst


# ---------------------------------------------------------------------------
# The construction-side hierarchy
# ---------------------------------------------------------------------------

def _ahat_apply(j: int, v: Val, bit_budget: int) -> Val:
    """a_hat_j(v) over exact ints or tower brackets."""
    if j == 0:
        return v
    if isinstance(v, int):
        if v == 1:
            return 1
        if j == 1:
            # Closed form 2^(2v-2) * v!.
            if 2 * v + v * v.bit_length() <= bit_budget:
                return (1 << (2 * v - 2)) * factorial(v)
            lo = tower(1, 2 * v - 2)
            hi = tower(1, 2 * v - 2 + v * v.bit_length())  # v! <= v^v
            return TowerBounds(_lift_lower(lo), _lift_upper(hi), False)
        if v <= _AHAT_ITER_CAP:
            for mm in range(2, v):  # warm the memo to keep recursion shallow
                _a_hat_value(j, mm, bit_budget)
            return _a_hat_value(j, v, bit_budget)
        return TowerBounds(_lift_lower(tower(0, v)), None, False)  # a_hat_j(v) >= v
    if j == 1:
        lo = tower(v.lower.height + 1, v.lower.top)  # 2^(2v-2) >= 2^v for v >= 2
        if v.upper is None:
            return TowerBounds(lo, None, False)
        # a_hat_1(v) <= 2^(v^2 + 2v) <= 2^(2 v^2) for v >= 2.
        if v.upper.height == 0:
            e = _lift_upper(tower(0, 2 * int(v.upper.top) ** 2))
        else:
            e = _lift_upper(TowerNumber(v.upper.height, v.upper.top + 2))
        return TowerBounds(lo, tower(e.height + 1, e.top), False)
    return TowerBounds(v.lower, None, False)


@lru_cache(maxsize=None)
def _a_hat_value(k: int, m: int, bit_budget: int) -> Val:
    if k < 0 or m < 1:
        raise InvalidInput("a_hat requires k >= 0, m >= 1")
    if k == 0:
        return m
    if m == 1:
        return 1
    inner = mul_pow2_val(_a_hat_value(k, m - 1, bit_budget), 1 << k, bit_budget)
    w = _ahat_apply(k - 1, inner, bit_budget)
    u = _ahat_apply(k - 1, w, bit_budget)
    out = mul_int_val(u, m, bit_budget)
    if isinstance(out, int) and out.bit_length() > bit_budget:
        return _bounds_from_big_int(out)
    return out


def _bounds_from_big_int(n: int) -> TowerBounds:
    lo = _lift_lower(tower(0, n))
    hi = _lift_upper(tower(0, n))
    return TowerBounds(lo, hi, lo == hi)


def a_hat(k: int, m: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> Val:
    """a_hat_k(m): exact integer when materializable, else a tower bracket.

    a_hat_0(m) = m, a_hat_k(1) = 1, and
    a_hat_k(m) = m * a_hat_{k-1}(a_hat_{k-1}(2^(2^k) * a_hat_k(m-1))).
    """
    for mm in range(2, m):  # warm the memo to keep recursion shallow
        _a_hat_value(k, mm, bit_budget)
    return _a_hat_value(k, m, bit_budget)


def a_hat_closed_form_level1(m: int) -> int:
    """Closed form for level 1: 2^(2m-2) * m!."""
    if m < 1:
        raise InvalidInput("m >= 1 required")
    return (1 << (2 * m - 2)) * factorial(m)


# ---------------------------------------------------------------------------
# Hierarchy comparison reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HierarchySpec:
    """A named integer-argument hierarchy row with a materialization budget.

    ``value(n)`` must be nondecreasing in n and return an exact int or a
    TowerBounds bracket once past the budget.
    """

    name: str
    value: Callable[[int], Val]
    bit_budget: int = DEFAULT_BIT_BUDGET
    description: str = ""


@dataclass(frozen=True)
class SandwichReport:
    f_name: str
    g_name: str
    d: int
    c: int
    rows: tuple  # (n, verdict: bool)

    @property
    def holds_everywhere(self) -> bool:
        return all(v for _, v in self.rows)

    def render(self) -> str:
        lines = [f"check {self.f_name}(n) <= {self.g_name}({self.d}n+{self.c})"]
        for n, v in self.rows:
            lines.append(f"  n={n}: {'holds' if v else 'VIOLATED'}")
        return "\n".join(lines)


def hierarchy_sandwich_check(f: HierarchySpec, g: HierarchySpec, d: int, c: int,
                             test_range) -> SandwichReport:
    """Check f(n) <= g(d*n + c) over test_range under tower comparison.

    Raises Incomparable when a row cannot be decided from the stored bounds;
    the acceptance ranges are chosen so this never happens there.
    """
    rows = []
    for n in test_range:
        fv = f.value(n)
        gv = g.value(d * n + c)
        verdict = le_val(fv, gv)
        if verdict is None:
            raise Incomparable(
                f"{f.name}({n}) vs {g.name}({d * n + c}): bounds overlap")
        rows.append((n, verdict))
    return SandwichReport(f.name, g.name, d, c, tuple(rows))


def a_level_spec(k: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> HierarchySpec:
    return HierarchySpec(f"A_{k}", lambda n: _ack_value(k, n, bit_budget), bit_budget)


def a_hat_spec(k: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> HierarchySpec:
    return HierarchySpec(f"a_hat_{k}", lambda m: _a_hat_value(k, m, bit_budget),
                         bit_budget)

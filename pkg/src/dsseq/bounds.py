"""Exact evaluation of the recurrence-constant families in the upper bounds.

Families:

* ``m0(s)`` — the threshold from which m >= 2 + 2*ceil(log2 m)^(s-2) holds
  for every m.
* ``P(s, k), Q(s, k)`` — coefficients of the blocked-length bound
  psi_s(m, n) <= P * m * (alpha_k(m) + c_s)^(s-2) + Q * n.
* ``R(s, d)`` — multiplicity thresholds above which almost-DS alphabets obey
  an alpha_d-type bound.
* ``mu(s, k)`` — uniform multiplicities of the even-order construction
  (re-exported from constructions for the growth reports).

The tuning constants d_s and d'_s enter only the P recurrence and default
to 1; c_s is measured empirically (max deviation between the plain and the
recurrence-friendly inverse hierarchies) rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, log2
from typing import Optional

from .ackermann import alpha_hat_deviation, alpha_level
from .constructions import mu_even
from .errors import InvalidInput


# ---------------------------------------------------------------------------
# m0
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def m0(s: int) -> int:
    """Minimal M with m >= 2 + 2*ceil(log2 m)^(s-2) for all m >= M.

    Within a dyadic range (2^(j-1), 2^j] the right side is constant, so it
    suffices to scan dyadic blocks; the polynomial loses to 2^(j-1) for good
    once j is moderately large.
    """
    if s < 3:
        raise InvalidInput("m0 is defined for s >= 3")
    e = s - 2
    largest_failing = 1  # m = 1: rhs = 2 > 1 always fails
    j = 1
    while True:
        rhs = 2 + 2 * j ** e
        lo, hi = (1 << (j - 1)) + 1, 1 << j
        if rhs > lo:
            largest_failing = max(largest_failing, min(hi, rhs - 1))
        # Stop once the range start dominates the bound with a wide margin.
        if (1 << (j - 1)) + 1 > 2 + 2 * (j + 64) ** e:
            return largest_failing + 1
        j += 1


# ---------------------------------------------------------------------------
# P and Q
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def pq_constants(s: int, k: int, d_s: int = 1, dp_s: int = 1) -> tuple[int, int]:
    """(P(s, k), Q(s, k)) for s >= 1, k >= 2; exact integers."""
    if s < 1 or k < 2:
        raise InvalidInput("pq_constants requires s >= 1, k >= 2")
    if s == 1:
        return (0, 1)
    if s == 2:
        return (0, 2)
    if k == 2:
        p1, q1 = pq_constants(s - 1, 2, d_s, dp_s)
        p2, q2 = pq_constants(s - 2, 2, d_s, dp_s)
        p = 4 * p1 + 2 * p2 + 2 * q2 + 8
        q = max(m0(s), 2 * q1 + 2 * q2)
        return (p, q)
    p_s1, q_s1 = pq_constants(s - 1, k, d_s, dp_s)
    p_s2, q_s2 = pq_constants(s - 2, k, d_s, dp_s)
    p_k1, q_k1 = pq_constants(s, k - 1, d_s, dp_s)
    p = q_s2 * (1 + p_k1) + 2 * d_s * p_s1 + dp_s * p_s2 + 4
    q = q_s2 * q_k1 + 2 * q_s1
    return (p, q)


# ---------------------------------------------------------------------------
# R
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def r_constants(s: int, d: int) -> int:
    """R(s, d): R(1,.) = 2, R(2,.) = 3, R(s,2) = 2^(s-1) + 1, and
    R(s,d) = R(s,d-1)*R(s-2,d) + 2R(s-1,d) - 3R(s-2,d) - R(s,d-1) + 2."""
    if s < 1 or d < 2:
        raise InvalidInput("r_constants requires s >= 1, d >= 2")
    if s == 1:
        return 2
    if s == 2:
        return 3
    if d == 2:
        return (1 << (s - 1)) + 1
    rd1 = r_constants(s, d - 1)
    r1 = r_constants(s - 1, d)
    r2 = r_constants(s - 2, d)
    return rd1 * r2 + 2 * r1 - 3 * r2 - rd1 + 2


# ---------------------------------------------------------------------------
# Tuning constants and the blocked-length upper bound
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def empirical_c(s: int, k_max: int = 4, x_max: int = 10**6) -> int:
    """Measured max deviation between the plain inverse hierarchy and its
    recurrence-friendly variant (which depends on s through m0(s))."""
    return alpha_hat_deviation(s, m0(s), k_max=k_max, x_max=x_max)


@dataclass
class ConstantsTable:
    """Materialized constants over a parameter window, for reports and CLI."""

    p: dict = field(default_factory=dict)   # (s, k) -> int
    q: dict = field(default_factory=dict)   # (s, k) -> int
    r: dict = field(default_factory=dict)   # (s, d) -> int
    m0_values: dict = field(default_factory=dict)  # s -> int
    d_s: int = 1
    dp_s: int = 1
    c_s: dict = field(default_factory=dict)  # s -> measured constant

    @staticmethod
    def over(s_range, k_range, d_range, d_s: int = 1, dp_s: int = 1) -> "ConstantsTable":
        t = ConstantsTable(d_s=d_s, dp_s=dp_s)
        for s in s_range:
            if s >= 3:
                t.m0_values[s] = m0(s)
            for k in k_range:
                t.p[(s, k)], t.q[(s, k)] = pq_constants(s, k, d_s, dp_s)
            for d in d_range:
                t.r[(s, d)] = r_constants(s, d)
        return t

    def recheck(self) -> bool:
        """Re-evaluate every stored value from its recurrence."""
        ok = all(pq_constants(s, k, self.d_s, self.dp_s) == (self.p[(s, k)], self.q[(s, k)])
                 for (s, k) in self.p)
        ok = ok and all(r_constants(s, d) == v for (s, d), v in self.r.items())
        ok = ok and all(m0(s) == v for s, v in self.m0_values.items())
        return ok


def psi_upper_eval(s: int, k: int, m: int, n: int, c_s: Optional[int] = None,
                   d_s: int = 1, dp_s: int = 1) -> int:
    """Value of the bound P(s,k) * m * (alpha_k(m) + c_s)^(s-2) + Q(s,k) * n."""
    if s < 3:
        raise InvalidInput("the bound form applies for s >= 3")
    if c_s is None:
        c_s = empirical_c(s)
    p, q = pq_constants(s, k, d_s, dp_s)
    return p * m * (alpha_level(k, m) + c_s) ** (s - 2) + q * n


# ---------------------------------------------------------------------------
# Growth reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthRow:
    index: int
    log2_value: float
    normalized: float
    diff1: Optional[float]
    diff2: Optional[float]


@dataclass(frozen=True)
class GrowthReport:
    family: str
    s: int
    t: int
    rows: tuple

    def render(self) -> str:
        lines = [f"growth of {self.family} at s={self.s} (t={self.t})",
                 f"{'idx':>4} {'log2':>16} {'normalized':>12} {'diff1':>12} {'diff2':>12}"]
        for r in self.rows:
            d1 = "-" if r.diff1 is None else f"{r.diff1:.6f}"
            d2 = "-" if r.diff2 is None else f"{r.diff2:.6f}"
            lines.append(f"{r.index:>4} {r.log2_value:>16.6f} {r.normalized:>12.6f} "
                         f"{d1:>12} {d2:>12}")
        return "\n".join(lines)


def _log2_big(n: int) -> float:
    """log2 of a big positive integer at full double precision."""
    if n <= 0:
        raise InvalidInput("log2 of nonpositive value")
    b = n.bit_length()
    if b <= 53:
        return log2(n)
    return (b - 53) + log2(n >> (b - 53))


def growth_check(family: str, s: int, index_range) -> GrowthReport:
    """Normalized exponents and forward differences of log2 along one family.

    family: "P", "Q" or "mu" indexed by k; "R" indexed by d.  The normalizer
    is k^t/t! for even s and k^t*log2(k)/t! for odd s, with
    t = floor((s-2)/2); at t = 0 it degenerates to the raw log2 value.
    """
    family = family.upper() if family.upper() in ("P", "Q", "R") else family.lower()
    if family == "P":
        value = lambda i: pq_constants(s, i)[0]
    elif family == "Q":
        value = lambda i: pq_constants(s, i)[1]
    elif family == "R":
        value = lambda i: r_constants(s, i)
    elif family == "mu":
        value = lambda i: mu_even(s, i)
    else:
        raise InvalidInput(f"unknown family {family!r}")
    t = (s - 2) // 2
    indices = list(index_range)
    logs = [_log2_big(value(i)) for i in indices]
    rows = []
    for pos, i in enumerate(indices):
        if t == 0 or i <= 0:
            norm = logs[pos]
        elif s % 2 == 0:
            norm = logs[pos] / (i**t / factorial(t))
        else:
            norm = logs[pos] / (i**t * log2(i) / factorial(t)) if i >= 2 else logs[pos]
        d1 = logs[pos + 1] - logs[pos] if pos + 1 < len(logs) else None
        d2 = (logs[pos + 2] - 2 * logs[pos + 1] + logs[pos]
              if pos + 2 < len(logs) else None)
        rows.append(GrowthRow(i, logs[pos], norm, d1, d2))
    return GrowthReport(family, s, t, tuple(rows))

"""Batch acceptance suite: every release criterion as one deterministic check.

``run_suite(seed, cache_path)`` executes all checks and returns a report
whose rendering is byte-identical across runs with the same seed (values,
node counts, and digests only; no timing).  Oracle certificates are read
from and appended to the cache when a path is given, which makes re-runs
cheap without changing any reported value.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import comb
from typing import Optional

from . import ackermann as ack
from . import bounds, constructions, formations, oracles
from .core import Sequence, contains_pattern, seq
from .errors import BudgetExceeded, Incomparable

# Node budget for the one almost-DS cell known to exceed desk scale
# (order 3, multiplicity 4, 7 blocks); the search is reported as a certified
# lower bound there.
ADS_7_NODE_BUDGET = 150_000_000


@dataclass(frozen=True)
class CheckResult:
    cid: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class SuiteReport:
    seed: int
    results: tuple

    @property
    def all_passed(self) -> bool:
        return all(r.ok for r in self.results)

    def render(self) -> str:
        lines = [f"dsseq acceptance suite (seed={self.seed})"]
        for r in sorted(self.results, key=lambda r: r.cid):
            lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.cid}: {r.detail}")
        passed = sum(1 for r in self.results if r.ok)
        lines.append(f"summary: {passed}/{len(self.results)} checks passed")
        return "\n".join(lines) + "\n"


def _z_grid():
    grid = [(1, m) for m in range(1, 1001)]
    grid += [(2, m) for m in range(1, 15)]
    grid += [(3, m) for m in range(1, 4)]
    for d in (4, 5, 6):
        for m in (1, 2):
            grid.append((d, m))
    return [(d, m) for (d, m) in grid
            if constructions.z_stats(d, m).length <= 10**6]


def _check_c1(results: list) -> None:
    grid = _z_grid()
    bad = []
    total = 0
    for d, m in grid:
        b = constructions.build_z(d, m)
        total += len(b)
        for name, ok, detail in constructions.verify_z(b, d, m):
            if not ok:
                bad.append(f"Z({d},{m}):{name}")
    results.append(CheckResult(
        "C1-z-construction", not bad,
        f"cells={len(grid)} total-length={total}"
        + (f" failures={bad[:4]}" if bad else "")))


def _check_c2(results: list) -> None:
    ok = True
    notes = []
    for m in range(1, 65):
        st = constructions.z_stats(2, m)
        if (st.special_blocks != 2**m or st.blocks != 2**(m + 2) - 1
                or st.special_ratio != 4 - Fraction(1, 2**m)):
            ok = False
            notes.append(f"(2,{m})")
    for d in range(1, 65):
        st = constructions.z_stats(d, 2)
        if d >= 2 and (st.special_blocks != 2**d
                       or st.blocks != 2**(d + 1) * d - 1
                       or st.special_ratio != 2 * d - Fraction(1, 2**d)):
            ok = False
            notes.append(f"({d},2)")
    in_budget = 0
    for d in range(1, 65):
        for m in range(1, 65):
            try:
                st = constructions.z_stats(d, m)
            except BudgetExceeded:
                break
            in_budget += 1
            if st.special_ratio > 2 * d + 1 or st.mean_block_length < Fraction(m, 2):
                ok = False
                notes.append(f"lemma-ratios({d},{m})")
    results.append(CheckResult(
        "C2-z-closed-forms", ok,
        f"rows checked to 64; ratio inequalities on {in_budget} in-budget cells"
        + (f" failures={notes[:4]}" if notes else "")))


def _even_grid():
    grid = []
    for s in (4, 6):
        for k in range(0, 9):
            for m in range(1, 17):
                try:
                    st = constructions.even_stats(s, k, m)
                except BudgetExceeded:
                    continue
                if st.length <= 10**6:
                    grid.append((s, k, m))
    return grid


def _check_c3(results: list) -> None:
    grid = _even_grid()
    bad = []
    total = 0
    for s, k, m in grid:
        b = constructions.build_s_even(s, k, m)
        total += len(b)
        for name, ok, detail in constructions.verify_even(b, s, k, m):
            if not ok:
                bad.append(f"S({s},{k},{m}):{name}")
    mu_ok = all(constructions.mu_even(s, k)
                == constructions.mu_even_closed_form(s, k)
                for s in (2, 4, 6) for k in range(0, 41))
    if not mu_ok:
        bad.append("mu-closed-form")
    results.append(CheckResult(
        "C3-even-construction", not bad,
        f"cells={len(grid)} total-length={total} mu-closed-form-k<=40"
        + (f" failures={bad[:4]}" if bad else "")))


def _check_c4(results: list, cache) -> None:
    bad = []
    nodes = 0

    def run(res, expect=None, at_most=None, want_exact=True):
        nonlocal nodes
        nodes += res.nodes
        if want_exact and not res.exact:
            bad.append(f"{res.fn}{res.params}:inexact")
        if expect is not None and res.value != expect:
            bad.append(f"{res.fn}{res.params}={res.value}!={expect}")
        if at_most is not None and res.value is not oracles.UNBOUNDED \
                and res.value > at_most:
            bad.append(f"{res.fn}{res.params}={res.value}>{at_most}")
        return res

    for n in range(1, 7):
        run(oracles.oracle_lambda(1, n, cache=cache), expect=n)
        run(oracles.oracle_lambda(2, n, cache=cache), expect=2 * n - 1)
    run(oracles.oracle_lambda(3, 2, cache=cache), expect=4)
    for m in range(2, 9):
        run(oracles.oracle_ads_symbols(1, 2, m, cache=cache), expect=m - 1)
    for s, k, m in ((1, 1, 3), (2, 2, 4), (3, 3, 5), (3, 2, 6)):
        res = oracles.oracle_ads_symbols(s, k, m, cache=cache)
        if res.value is not oracles.UNBOUNDED:
            bad.append(f"ads({s},{k},{m}) should be unbounded")
    for m in range(3, 8):
        run(oracles.oracle_ads_symbols(2, 3, m, cache=cache),
            at_most=comb(m - 2, 1))
    truncated = []
    for m in range(4, 8):
        want_exact = m <= 6
        budget = oracles.SearchBudget(max_nodes=ADS_7_NODE_BUDGET)
        res = run(oracles.oracle_ads_symbols(3, 4, m, budget, cache=cache),
                  at_most=comb(m - 2, 2), want_exact=want_exact)
        if not res.exact:
            truncated.append(f"ads(3,4,{m})>= {res.value}")
    for r in (2, 3):
        for m in range(1, 6):
            res = run(oracles.oracle_aff_symbols(r, 2, 2, m, cache=cache),
                      expect=(r - 1) * (m - 1))
            built = formations.build_aff_extremal(r, m)
            if built.sequence.alphabet_size != (r - 1) * (m - 1):
                bad.append(f"aff-extremal({r},{m}) does not attain optimum")
    results.append(CheckResult(
        "C4-oracle-exactness", not bad,
        f"nodes={nodes}"
        + (f" certified-lower-bounds={truncated}" if truncated else "")
        + (f" failures={bad[:4]}" if bad else "")))


def _lambda_table(cache):
    table = {}
    for s in range(1, 5):
        for n in range(1, 4):
            table[(s, n)] = oracles.oracle_lambda(s, n, cache=cache).value
    for s in (5, 6):
        table[(s, 2)] = oracles.oracle_lambda(s, 2, cache=cache).value
    return table


def _check_c5(results: list, cache) -> None:
    bad = []
    lam = _lambda_table(cache)

    def phi(s, n):
        # A nondecreasing majorant of lambda_s(j)/j over j <= n.
        return max(Fraction(lam[(s, j)], j) for j in range(1, n + 1))

    # Block-partition bridge: lambda_s(n) <= phi_{s-2}(n) (psi_s(2n, n) + 2n).
    for s, n in [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3)]:
        psi = oracles.oracle_psi(s, 2 * n, n, cache=cache).value
        if lam[(s, n)] > phi(s - 2, n) * (psi + 2 * n):
            bad.append(f"partition-bridge(s={s},n={n})")

    # Clustering bridge: psi_s(m, n) <= k (N_s_k(m) + n) for finite cells.
    for s, k in [(2, 3), (2, 4), (3, 4), (3, 5)]:
        for m in range(1, 6):
            for n in range(1, 4):
                ads = oracles.oracle_ads_symbols(s, k, m, cache=cache)
                if ads.value is oracles.UNBOUNDED or not ads.exact:
                    continue
                psi = oracles.oracle_psi(s, m, n, cache=cache).value
                if psi > k * (ads.value + n):
                    bad.append(f"cluster-bridge(s={s},k={k},m={m},n={n})")

    # Terminal-quota bridge: lambda_3(n) <= psi_3(1 + 2n/l, n) + 3 n l.
    for ell in (1, 2):
        for n in (1, 2, 3):
            m = 1 + (2 * n) // ell
            psi = oracles.oracle_psi(3, m, n, cache=cache).value
            if lam[(3, n)] > psi + 3 * n * ell:
                bad.append(f"quota-bridge(l={ell},n={n})")

    # Pattern-to-formation bridge: Ex_u(n) <= F_{r, |u|-r+1}(n).
    for u_txt, n_max in [("aba", 3), ("abab", 3), ("abca", 3), ("abcab", 2)]:
        u = seq(u_txt)
        r = u.alphabet_size
        for n in range(1, n_max + 1):
            ex = oracles.oracle_ex(u, n, cache=cache).value
            f = oracles.oracle_f(r, len(u) - r + 1, n, cache=cache).value
            if ex > f:
                bad.append(f"pattern-bridge(u={u_txt},n={n})")

    # Halving recurrence at the smallest finite parameters (s=3, k=3):
    # N_3_5(2m) <= 2 N_3_5(m) + 2 N_2_3(m).
    for m in (2, 3):
        lhs = oracles.oracle_ads_symbols(3, 5, 2 * m, cache=cache).value
        a = oracles.oracle_ads_symbols(3, 5, m, cache=cache).value
        b = oracles.oracle_ads_symbols(2, 3, m, cache=cache).value
        if lhs > 2 * a + 2 * b:
            bad.append(f"halving-recurrence(m={m})")

    # Layered recurrence with t <= sqrt(m) (s=3, k=6 so k-2 stays finite):
    # N_3_6(m) <= (1 + m/t) N_3_6(t) + N_3_4(floor(1 + m/t)) + 3m.
    for m, t in [(4, 2), (6, 2)]:
        lhs = oracles.oracle_ads_symbols(3, 6, m, cache=cache).value
        a = oracles.oracle_ads_symbols(3, 6, t, cache=cache).value
        b = oracles.oracle_ads_symbols(3, 4, 1 + m // t, cache=cache).value
        if lhs > (1 + Fraction(m, t)) * a + b + 3 * m:
            bad.append(f"layer-recurrence(m={m},t={t})")

    # Four-parameter recurrence at k1=3, k2=2, k3=4 (so k = 6):
    # N_3_6(m) <= (1+m/t)(N_3_6(t) + 2 N_2_3(t) + N_1_2(t)) + N_3_4(floor(1+m/t)).
    k1, k2, k3 = 3, 2, 4
    k_combined = k2 * k3 + 2 * k1 - 3 * k2 - k3 + 2
    assert k_combined == 6
    for m, t in [(6, 2), (6, 3)]:
        lhs = oracles.oracle_ads_symbols(3, k_combined, m, cache=cache).value
        a = oracles.oracle_ads_symbols(3, 6, t, cache=cache).value
        b = oracles.oracle_ads_symbols(2, 3, t, cache=cache).value
        c = oracles.oracle_ads_symbols(1, 2, t, cache=cache).value
        d = oracles.oracle_ads_symbols(3, 4, 1 + m // t, cache=cache).value
        if lhs > (1 + Fraction(m, t)) * (a + 2 * b + c) + d:
            bad.append(f"four-param-recurrence(m={m},t={t})")

    # Construction consistency: stripped construction length fits under the
    # free-sequence maximum on the same alphabet.
    from .core import remove_adjacent_repeats

    for d, m in [(1, 1), (1, 2), (1, 3)]:
        z = constructions.build_z(d, m)
        stripped = remove_adjacent_repeats(z)
        if len(stripped) > lam[(3, constructions.z_stats(d, m).symbols)]:
            bad.append(f"z-vs-lambda({d},{m})")
    for s, k, m in [(2, 1, 2), (2, 1, 3), (4, 1, 1), (6, 1, 2)]:
        b = constructions.build_s_even(s, k, m)
        stripped = remove_adjacent_repeats(b)
        n_sym = constructions.even_stats(s, k, m).symbols
        if (s, n_sym) in lam and len(stripped) > lam[(s, n_sym)]:
            bad.append(f"even-vs-lambda({s},{k},{m})")

    results.append(CheckResult(
        "C5-bridge-inequalities", not bad,
        "partition, clustering, quota, pattern bridges and the three "
        "recurrences hold on every computed cell"
        + (f" failures={bad[:6]}" if bad else "")))


def _random_canonical_pattern(rng: random.Random, r: int, length: int) -> Sequence:
    while True:
        out = []
        next_new = 0
        for i in range(length):
            remaining = length - i - 1
            must_new = (r - next_new) > remaining
            if next_new < r and (must_new or rng.random() < 0.5):
                choice = next_new
            else:
                choice = rng.randrange(max(next_new, 1))
            if choice == next_new:
                next_new += 1
            out.append(choice)
        if next_new == r:
            return Sequence(tuple(out))


def _embedding_phase(seed: int) -> tuple[int, str]:
    rng = random.Random(seed)
    digest = hashlib.sha256()
    checked = 0
    while checked < 1000:
        r = rng.randint(1, 4)
        length = rng.randint(max(r, 2), 8)
        u = _random_canonical_pattern(rng, r, length)
        s_prime = length - r + 1
        perms = []
        for _ in range(s_prime):
            p = list(range(1, r + 1))
            rng.shuffle(p)
            perms.append(tuple(p))
        f = formations.Formation.of(perms)
        sigma = formations.embed_pattern(u, f)
        formations.verify_embedding(u, f)  # raises on failure
        digest.update(repr((tuple(u.symbols), perms,
                            sorted(sigma.items()))).encode())
        checked += 1
    return checked, digest.hexdigest()[:16]


def _check_c6(results: list, seed: int) -> None:
    bad = []
    u = Sequence(tuple(x - 1 for x in (1, 1, 1, 2, 1, 3, 4, 2, 4, 1, 2, 5, 5)))
    perms = [(1, 2, 3, 4, 5)] * 9
    perms[2] = (3, 2, 5, 1, 4)
    perms[3] = (3, 5, 4, 2, 1)
    perms[7] = (3, 5, 1, 4, 2)
    sigma = formations.embed_pattern(u, formations.Formation.of(perms))
    if sigma != {5: 2, 4: 1, 3: 4, 2: 5, 1: 3}:
        bad.append(f"worked-example sigma={sigma}")
    try:
        checked, digest = _embedding_phase(seed)
    except Exception as exc:  # embedding failure raises
        bad.append(f"random-embeddings: {exc}")
        checked, digest = 0, "-"
    abc = seq("abcabca")
    count = 0
    for combo in product(list(permutations((1, 2, 3))), repeat=4):
        flat = formations.Formation.of(combo).flatten()
        if contains_pattern(abc, flat) is None:
            bad.append(f"remark fails at {combo}")
            break
        count += 1
    results.append(CheckResult(
        "C6-embedding", not bad,
        f"worked example, {checked} random embeddings (digest {digest}), "
        f"containment in all {count} (3,4)-formations"
        + (f" failures={bad[:3]}" if bad else "")))


def _alpha_equivalence(k: int, xmax: int) -> bool:
    table = ack.alpha_table(k, xmax)
    if k == 1:
        return all(table[x] == (x + 1) // 2 for x in range(xmax + 1))
    n = 0
    prev_threshold = -1
    while prev_threshold < xmax:
        v = ack.ackermann_level_val(k, n)
        if isinstance(v, int):
            hi = min(v, xmax)
        else:
            hi = xmax  # certified lower bound exceeds xmax
            if ack.compare_towers(v.lower, ack.tower(0, xmax)) < 0:
                return False
        for x in range(max(prev_threshold + 1, 0), hi + 1):
            if x <= 1:
                want = 0 if (k >= 2 or x == 0) else 1
            else:
                want = n
            if table[x] != want:
                return False
        prev_threshold = hi
        n += 1
    return True


def _check_c7(results: list) -> None:
    bad = []
    if [ack.ackermann(i) for i in (1, 2, 3, 4)] != [6, 8, 16, 65536]:
        bad.append("diagonal-values")
    for n in (3, 4):
        # The alternative recurrence A(n) = A_{n-2}(A(n-1)).
        if ack.ackermann(n) != ack.ackermann_level(n - 2, ack.ackermann(n - 1)):
            bad.append(f"diagonal-recurrence({n})")
    xmax = 10**6
    for k in range(1, 6):
        if not _alpha_equivalence(k, xmax):
            bad.append(f"alpha-definitions(k={k})")
    for n in (1, 2, 3, 4):
        if ack.alpha(ack.ackermann(n)) != n:
            bad.append(f"alpha-of-A({n})")
    for m in range(1, 11):
        if ack.a_hat(1, m) != ack.a_hat_closed_form_level1(m):
            bad.append(f"a-hat-closed-form({m})")

    # Sandwiches under tower comparison; the ranges are the decidable sets.
    incomparable = 0
    try:
        for d in range(2, 7):
            spec_a = ack.a_level_spec(d)
            spec_s = ack.HierarchySpec(
                f"S_{d}", lambda m, d=d: constructions.z_stats(d, m).special_blocks)
            ms = []
            for m in range(1, 65):
                try:
                    constructions.z_stats(d, m)
                    ack.ackermann_level(d, m)
                except BudgetExceeded:
                    break
                ms.append(m)
            rep = ack.hierarchy_sandwich_check(spec_a, spec_s, 1, 0, ms)
            if not rep.holds_everywhere:
                bad.append(f"A-vs-S(d={d})")
        for k, m_top in [(2, 12), (3, 1), (4, 1), (5, 1)]:
            rep = ack.hierarchy_sandwich_check(
                ack.a_hat_spec(k), ack.a_level_spec(k + 1), 2, 4,
                range(1, m_top + 1))
            if not rep.holds_everywhere:
                bad.append(f"a-hat-vs-A(k={k})")
    except Incomparable as exc:
        incomparable += 1
        bad.append(f"incomparable: {exc}")
    results.append(CheckResult(
        "C7-ackermann", not bad,
        f"diagonal exact, alpha definitions agree for k<=5 x<=10^6, "
        f"sandwiches decidable (incomparable={incomparable})"
        + (f" failures={bad[:4]}" if bad else "")))


def _check_c8(results: list, cache) -> None:
    bad = []
    for d in range(2, 31):
        if bounds.r_constants(3, d) != 2 * d + 1:
            bad.append(f"R3({d})")
        if bounds.r_constants(4, d) != 5 * 2**d - 4 * d - 3:
            bad.append(f"R4({d})")
    for s in range(3, 13):
        if bounds.r_constants(s, 2) != 2**(s - 1) + 1:
            bad.append(f"R{s}(2)")

    # Upper-bound form dominates the exact blocked-length values.
    checked = 0
    for s in (3, 4):
        c_s = bounds.empirical_c(s)
        for k in (2, 3):
            for m in range(1, 5):
                for n in range(0, 4):
                    psi = oracles.oracle_psi(s, m, n, cache=cache).value
                    if psi > bounds.psi_upper_eval(s, k, m, n, c_s):
                        bad.append(f"psi-upper(s={s},k={k},m={m},n={n})")
                    checked += 1

    # Growth calibration: second forward differences of log2 R_6 settle at 1.
    rep = bounds.growth_check("R", 6, range(10, 43))
    diffs = [(r.index, r.diff2) for r in rep.rows if r.diff2 is not None]
    tail = [abs(d2 - 1) for (d, d2) in diffs if d >= 20]
    # Frozen from the calibration run: observed max deviation 5.8e-6 for
    # d >= 20, certified here at 1e-4 (well inside the expected 1e-2 band).
    if max(tail) > 1e-4:
        bad.append(f"growth-band max|diff2-1|={max(tail):.2e}")
    results.append(CheckResult(
        "C8-constants", not bad,
        f"closed forms to d=30/s=12, psi bound dominates on {checked} cells, "
        f"R6 second-difference deviation {max(tail):.2e} <= 1e-4"
        + (f" failures={bad[:4]}" if bad else "")))


def _check_c9(results: list, seed: int) -> None:
    a = _embedding_phase(seed)
    b = _embedding_phase(seed)
    results.append(CheckResult(
        "C9-seeded-determinism", a == b,
        f"seeded random phase digest stable at {a[1]}"))


def run_suite(seed: int = 0, cache_path: Optional[str] = None) -> SuiteReport:
    cache = oracles.OracleCache(cache_path) if cache_path else None
    results: list = []
    _check_c1(results)
    _check_c2(results)
    _check_c3(results)
    _check_c4(results, cache)
    _check_c5(results, cache)
    _check_c6(results, seed)
    _check_c7(results)
    _check_c8(results, cache)
    _check_c9(results, seed)
    return SuiteReport(seed, tuple(results))

"""Command-line entry point.

Subcommands: generate, stats, verify, oracle, constants, ackermann,
formations, suite.  Output is JSON by default; --text switches to the human
bracket notation (special blocks in [ ], regular in ( )).

Exit codes: 0 success, 1 property/suite failure, 2 usage error, 3 budget
exhaustion.  The oracle certificate cache defaults to $DSSEQ_CACHE when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import ackermann as ack
from . import bounds, constructions, formations, oracles
from .core import (BlockedSequence, Sequence, canonicalize, from_json_obj,
                   is_r_sparse, seq, to_json_obj)
from .errors import BudgetExceeded, CapExceeded, DsseqError, InvalidInput
from .fastcheck import alternation_at_most

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(obj, text: str | None, args) -> None:
    if getattr(args, "text", False) and text is not None:
        print(text)
    else:
        print(json.dumps(obj, indent=2, default=_json_default))


def _json_default(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, frozenset):
        return sorted(x)
    if x is oracles.UNBOUNDED:
        return "unbounded"
    raise TypeError(f"not JSON serializable: {x!r}")


def _cache_from(args) -> oracles.OracleCache | None:
    path = getattr(args, "cache", None) or os.environ.get("DSSEQ_CACHE")
    return oracles.OracleCache(path) if path else None


def _budget_from(args) -> oracles.SearchBudget:
    return oracles.SearchBudget(
        max_nodes=getattr(args, "max_nodes", oracles.DEFAULT_MAX_NODES),
        max_length=getattr(args, "max_length", None),
        time_limit=getattr(args, "time_limit", None))


# ---------------------------------------------------------------------------
# generate / stats
# ---------------------------------------------------------------------------

def _cmd_generate(args) -> int:
    if args.family == "z":
        b = constructions.build_z(args.d, args.m, args.length_budget)
        _emit(to_json_obj(b), b.render(), args)
    elif args.family == "even":
        b = constructions.build_s_even(args.s, args.k, args.m, args.length_budget)
        _emit(to_json_obj(b), b.render(), args)
    else:  # zinterp
        s = constructions.build_z_interpolated(args.n, args.length_budget)
        _emit(to_json_obj(s), s.render(), args)
    return EXIT_OK


def _cmd_stats(args) -> int:
    if args.family == "z":
        st = constructions.z_stats(args.d, args.m)
        _emit({"S": st.special_blocks, "N": st.symbols, "L": st.length,
               "M": st.blocks, "X": st.special_ratio, "V": st.mean_block_length},
              None, args)
    else:
        st = constructions.even_stats(args.s, args.k, args.m)
        _emit({"mu": st.multiplicity, "N": st.symbols, "F": st.blocks,
               "length": st.length}, None, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _parse_props(spec: str) -> list:
    props = []
    for raw in spec.split(","):
        raw = raw.strip()
        if not raw:
            continue
        if "=" in raw:
            name, arg = raw.split("=", 1)
            props.append((name.strip(), arg.strip()))
        else:
            props.append((raw, None))
    return props


def _run_property(b: BlockedSequence, name: str, arg) -> tuple[bool, str]:
    flat = b.sequence
    if name in ("ds", "ds-order"):
        # Blocked constructions may carry repeats at block interfaces; the
        # order property is about the sequence after stripping those.
        order = int(arg)
        target = flat
        if b.block_count > 1 and b.blocks_have_distinct_symbols():
            from .core import remove_adjacent_repeats

            target = remove_adjacent_repeats(b)
        ok = is_r_sparse(target, 2) and alternation_at_most(target.symbols,
                                                            order + 1)
        return ok, f"order {order}"
    if name in ("sparse", "sparsity"):
        r = int(arg)
        return is_r_sparse(flat, r), f"window {r}"
    if name == "multiplicity":
        want = int(arg)
        from collections import Counter

        counts = Counter(flat.symbols)
        ok = all(v == want for v in counts.values())
        return ok, f"uniform {want}"
    if name == "formation-free":
        r_s = arg.split(":")
        r, s = int(r_s[0]), int(r_s[1])
        return formations.is_formation_free(flat, r, s), f"({r},{s})"
    if name == "distinct-blocks":
        return b.blocks_have_distinct_symbols(), ""
    if name in ("z", "z-invariants"):
        d, m = (int(x) for x in arg.split(":"))
        checks = constructions.verify_z(b, d, m)
        bad = [c for c in checks if not c[1]]
        return not bad, "; ".join(c[0] for c in bad) or "all invariants"
    if name in ("even", "even-invariants"):
        s, k, m = (int(x) for x in arg.split(":"))
        checks = constructions.verify_even(b, s, k, m)
        bad = [c for c in checks if not c[1]]
        return not bad, "; ".join(c[0] for c in bad) or "all invariants"
    raise InvalidInput(f"unknown property {name!r}")


def _cmd_verify(args) -> int:
    with open(args.file) as fh:
        b = from_json_obj(json.load(fh))
    results = []
    all_ok = True
    for name, arg in _parse_props(args.props):
        ok, detail = _run_property(b, name, arg)
        all_ok = all_ok and ok
        results.append({"prop": name + (f"={arg}" if arg else ""),
                        "ok": ok, "detail": detail})
    _emit(results, "\n".join(
        f"{'PASS' if r['ok'] else 'FAIL'} {r['prop']} {r['detail']}".rstrip()
        for r in results), args)
    return EXIT_OK if all_ok else EXIT_PROPERTY_FAILURE


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def _oracle_to_obj(res: oracles.OracleResult) -> dict:
    return {
        "fn": res.fn,
        "params": list(res.params),
        "value": "unbounded" if res.value is oracles.UNBOUNDED else res.value,
        "exact": res.exact,
        "nodes": res.nodes,
        "witness": None if res.witness is None else to_json_obj(res.witness),
    }


def _cmd_oracle(args) -> int:
    budget = _budget_from(args)
    cache = _cache_from(args)
    fn = args.oracle
    if fn == "lambda":
        res = oracles.oracle_lambda(args.s, args.n, budget, cache)
    elif fn == "psi":
        res = oracles.oracle_psi(args.s, args.m, args.n, budget, cache)
    elif fn == "ads":
        res = oracles.oracle_ads_symbols(args.s, args.k, args.m, budget, cache)
    elif fn == "aff":
        res = oracles.oracle_aff_symbols(args.r, args.s, args.k, args.m,
                                         budget, cache)
    elif fn == "ex":
        res = oracles.oracle_ex(seq(args.pattern), args.n, budget, cache)
    else:  # f
        res = oracles.oracle_f(args.r, args.s, args.n, budget, cache)
    _emit(_oracle_to_obj(res),
          f"{res.fn}{res.params} = {res.value} "
          f"({'exact' if res.exact else 'lower bound'}, {res.nodes} nodes)",
          args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

def _cmd_constants(args) -> int:
    which = args.table
    if which == "pq":
        p, q = bounds.pq_constants(args.s, args.k, args.d_s, args.dp_s)
        _emit({"s": args.s, "k": args.k, "P": p, "Q": q}, f"P={p} Q={q}", args)
    elif which == "r":
        v = bounds.r_constants(args.s, args.d)
        _emit({"s": args.s, "d": args.d, "R": v}, f"R={v}", args)
    elif which == "mu":
        v = constructions.mu_even(args.s, args.k)
        _emit({"s": args.s, "k": args.k, "mu": v}, f"mu={v}", args)
    elif which == "m0":
        v = bounds.m0(args.s)
        _emit({"s": args.s, "m0": v}, f"m0={v}", args)
    else:  # growth
        rep = bounds.growth_check(args.family, args.s,
                                  range(args.start, args.stop + 1))
        rows = [{"index": r.index, "log2": r.log2_value,
                 "normalized": r.normalized, "diff1": r.diff1, "diff2": r.diff2}
                for r in rep.rows]
        _emit({"family": rep.family, "s": rep.s, "t": rep.t, "rows": rows},
              rep.render(), args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# ackermann
# ---------------------------------------------------------------------------

def _cmd_ackermann(args) -> int:
    if args.action == "eval":
        try:
            if args.level is not None:
                v = ack.ackermann_level(args.level, args.n)
            else:
                v = ack.ackermann(args.n)
            _emit({"value": v}, str(v), args)
        except BudgetExceeded as exc:
            lo = exc.bound.lower if exc.bound is not None else None
            obj = {"tower": None if lo is None else
                   {"height": lo.height, "top": lo.top}}
            _emit(obj, f"tower(height={lo.height}, top={lo.top})" if lo else "huge",
                  args)
            return EXIT_BUDGET
    else:  # alpha
        if args.level is not None:
            v = ack.alpha_level(args.level, args.x)
        else:
            v = ack.alpha(args.x)
        _emit({"value": v}, str(v), args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# formations
# ---------------------------------------------------------------------------

def _parse_formation(spec: str) -> formations.Formation:
    perms = []
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        perms.append(tuple(int(c) for c in part.replace(" ", "")))
    return formations.Formation.of(perms)


def _cmd_formations(args) -> int:
    if args.action == "embed":
        u = canonicalize(seq(args.pattern))
        f = _parse_formation(args.formation)
        sigma = formations.embed_pattern(u, f)
        witness = formations.verify_embedding(u, f)
        _emit({"sigma": {str(k): v for k, v in sorted(sigma.items())},
               "positions": list(witness.positions)},
              " ".join(f"{k}->{v}" for k, v in sorted(sigma.items())), args)
        return EXIT_OK
    # check
    s_seq = seq(args.seq)
    ok = formations.is_formation_free(s_seq, args.r, args.s)
    _emit({"formation_free": ok, "r": args.r, "s": args.s},
          "formation-free" if ok else "contains a formation", args)
    return EXIT_OK if ok else EXIT_PROPERTY_FAILURE


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

def _cmd_suite(args) -> int:
    from .suite import run_suite

    report = run_suite(seed=args.seed, cache_path=args.cache
                       or os.environ.get("DSSEQ_CACHE"))
    text = report.render()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return EXIT_OK if report.all_passed else EXIT_PROPERTY_FAILURE


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dsseq",
        description="Davenport-Schinzel sequence toolkit: constructions, "
                    "constants, and exact desk-scale oracles.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--text", action="store_true",
                       help="human-readable output instead of JSON")

    g = sub.add_parser("generate", help="materialize a construction")
    gs = g.add_subparsers(dest="family", required=True)
    gz = gs.add_parser("z")
    gz.add_argument("--d", type=int, required=True)
    gz.add_argument("--m", type=int, required=True)
    gz.add_argument("--length-budget", type=int, default=10**6)
    add_common(gz)
    ge = gs.add_parser("even")
    ge.add_argument("--s", type=int, required=True)
    ge.add_argument("--k", type=int, required=True)
    ge.add_argument("--m", type=int, required=True)
    ge.add_argument("--length-budget", type=int, default=10**6)
    add_common(ge)
    gi = gs.add_parser("zinterp")
    gi.add_argument("--n", type=int, required=True)
    gi.add_argument("--length-budget", type=int, default=10**6)
    add_common(gi)

    st = sub.add_parser("stats", help="exact statistics without materializing")
    sts = st.add_subparsers(dest="family", required=True)
    stz = sts.add_parser("z")
    stz.add_argument("--d", type=int, required=True)
    stz.add_argument("--m", type=int, required=True)
    add_common(stz)
    ste = sts.add_parser("even")
    ste.add_argument("--s", type=int, required=True)
    ste.add_argument("--k", type=int, required=True)
    ste.add_argument("--m", type=int, required=True)
    add_common(ste)

    v = sub.add_parser("verify", help="check properties of a sequence file")
    v.add_argument("--file", required=True)
    v.add_argument("--props", required=True,
                   help="comma list: ds=3, sparse=2, multiplicity=5, "
                        "formation-free=r:s, distinct-blocks, z=d:m, even=s:k:m")
    add_common(v)

    o = sub.add_parser("oracle", help="exact brute-force extremal values")
    os_ = o.add_subparsers(dest="oracle", required=True)
    for name, fields in (("lambda", "sn"), ("psi", "smn"), ("ads", "skm"),
                         ("aff", "rskm"), ("ex", "n"), ("f", "rsn")):
        p = os_.add_parser(name)
        for ch in fields:
            p.add_argument(f"--{ch}", type=int, required=True)
        if name == "ex":
            p.add_argument("--pattern", required=True,
                           help='forbidden pattern, e.g. "abab" or "0 1 0 1"')
        p.add_argument("--max-nodes", type=int, default=oracles.DEFAULT_MAX_NODES)
        p.add_argument("--max-length", type=int, default=None)
        p.add_argument("--time-limit", type=float, default=None)
        p.add_argument("--cache", default=None)
        add_common(p)

    c = sub.add_parser("constants", help="recurrence-constant families")
    cs = c.add_subparsers(dest="table", required=True)
    cpq = cs.add_parser("pq")
    cpq.add_argument("--s", type=int, required=True)
    cpq.add_argument("--k", type=int, required=True)
    cpq.add_argument("--d-s", type=int, default=1)
    cpq.add_argument("--dp-s", type=int, default=1)
    add_common(cpq)
    cr = cs.add_parser("r")
    cr.add_argument("--s", type=int, required=True)
    cr.add_argument("--d", type=int, required=True)
    add_common(cr)
    cmu = cs.add_parser("mu")
    cmu.add_argument("--s", type=int, required=True)
    cmu.add_argument("--k", type=int, required=True)
    add_common(cmu)
    cm0 = cs.add_parser("m0")
    cm0.add_argument("--s", type=int, required=True)
    add_common(cm0)
    cg = cs.add_parser("growth")
    cg.add_argument("--family", required=True, choices=["P", "Q", "R", "mu"])
    cg.add_argument("--s", type=int, required=True)
    cg.add_argument("--start", type=int, required=True)
    cg.add_argument("--stop", type=int, required=True)
    add_common(cg)

    a = sub.add_parser("ackermann", help="hierarchy and inverse evaluation")
    as_ = a.add_subparsers(dest="action", required=True)
    ae = as_.add_parser("eval")
    ae.add_argument("--n", type=int, required=True)
    ae.add_argument("--level", type=int, default=None,
                    help="evaluate A_level(n) instead of the diagonal A(n)")
    add_common(ae)
    aa = as_.add_parser("alpha")
    aa.add_argument("--x", type=int, required=True)
    aa.add_argument("--level", type=int, default=None)
    add_common(aa)

    f = sub.add_parser("formations", help="formation tools")
    fs = f.add_subparsers(dest="action", required=True)
    fe = fs.add_parser("embed")
    fe.add_argument("--pattern", required=True)
    fe.add_argument("--formation", required=True,
                    help='permutations of 1..r joined by ";", e.g. "123;321"')
    add_common(fe)
    fc = fs.add_parser("check")
    fc.add_argument("--seq", required=True)
    fc.add_argument("--r", type=int, required=True)
    fc.add_argument("--s", type=int, required=True)
    add_common(fc)

    su = sub.add_parser("suite", help="run the full acceptance suite")
    su.add_argument("--seed", type=int, default=0)
    su.add_argument("--cache", default=None)
    su.add_argument("--out", default=None)
    return ap


_DISPATCH = {
    "generate": _cmd_generate,
    "stats": _cmd_stats,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "constants": _cmd_constants,
    "ackermann": _cmd_ackermann,
    "formations": _cmd_formations,
    "suite": _cmd_suite,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget-exceeded", "message": str(exc)}),
              file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidInput, CapExceeded, DsseqError, OSError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

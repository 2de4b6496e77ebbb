"""Command-line front door.

Exit codes: 0 success, 1 suite or solver failure, 2 usage error,
3 fuel or budget exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Optional, Sequence

from . import builder as bld
from . import jumplab as jl
from .fundseq import FUEL_ENV, FuelExhausted, fund, norm
from .largeness import (
    enumerate_exact, is_exact, is_large, scatter_list, size_prefix,
)
from .ordinals import (
    OrdinalSyntaxError, classify, compare, fmt, lead, ord_code, parse,
)
from .peeling import (
    DescendingSeq, Peeler, build_M, colorbar, extract_descending, greedy_homog_search,
)
from .suites import SUITES, run_suite
from .terms import (
    TermContext, TermSyntaxError, const, order_by_name, parse_term, show,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FUEL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ----------------------------------------------------------------- parsing

def int_list(text: str) -> list:
    """'1,2,5' or '3..7' or a mix like '1,4..6'."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _ints(text: str) -> list:
    try:
        return int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of naturals: {text!r}") from None


def _window(text: str) -> list:
    xs = _ints(text)
    if len(xs) == 1:  # a bare N means 1..N
        xs = list(range(1, xs[0] + 1))
    return xs


def _set(text: str) -> tuple:
    xs = _ints(text)
    if any(a >= b for a, b in zip(xs, xs[1:])) or any(x < 0 for x in xs):
        raise argparse.ArgumentTypeError("a set must be strictly increasing naturals")
    return tuple(xs)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _csv(header: Sequence[str], rows) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


# -------------------------------------------------------------- commands

def cmd_ord(a) -> int:
    x = parse(a.a)
    if a.op == "cmp":
        if a.b is None:
            raise UsageError("cmp needs two ordinals")
        print({-1: "LT", 0: "EQ", 1: "GT"}[compare(x, parse(a.b))])
    elif a.op == "fmt":
        print(fmt(x))
    elif a.op == "norm":
        print(norm(x))
    elif a.op == "code":
        print(ord_code(x))
    elif a.op == "lead":
        print(fmt(lead(x)))
    elif a.op == "classify":
        c = classify(x)
        print(c.tag if c.pred is None else f"{c.tag} {fmt(c.pred)}")
    elif a.op == "add":
        if a.b is None:
            raise UsageError("add needs two ordinals")
        print(fmt(x + parse(a.b)))
    return EXIT_OK


def cmd_fund(a) -> int:
    x = parse(a.alpha)
    if a.set is not None:
        rows, r = [], x
        for i, n in enumerate(a.set):
            r = fund(r, n)
            rows.append((i, n, fmt(r)))
        _csv(("step", "n", "value"), rows)
    else:
        _csv(("n", "value"), [(n, fmt(fund(x, n))) for n in (a.n or range(2, 6))])
    return EXIT_OK


def cmd_large(a) -> int:
    x = parse(a.alpha)
    if a.op == "check":
        s = a.set or ()
        print("exact" if is_exact(x, s) else "large" if is_large(x, s) else "small")
    elif a.op == "prefix":
        p = size_prefix(x, a.set or ())
        print("none" if p is None else ",".join(map(str, p)))
    elif a.op == "enumerate":
        for s in enumerate_exact(x, a.ground, limit=a.limit):
            print(",".join(map(str, s)))
    elif a.op == "scatter":
        _csv(("i", "x"), enumerate(scatter_list(a.k, x, a.ground)))
    return EXIT_OK


def _term_ctx(a) -> TermContext:
    return TermContext(parse(a.alpha), order_by_name(a.order))


def cmd_peel(a) -> int:
    ctx = _term_ctx(a)
    A = tuple(parse_term(t, ctx) for t in a.tuple.split(";"))
    P = Peeler(ctx, mode=a.mode)
    out = {"tuple": [show(t, ctx.order) for t in A]}
    if a.index:
        rho = parse(a.index)
        out["index"] = fmt(rho)
        out["peel"] = [show(t, ctx.order) for t in P.pbar(rho, A)]
    z = P.zeta(A)
    out["zeta"] = None if z is None else fmt(z)
    if len(A) >= 2:
        out["color"] = P.color4(A)
    _emit(out)
    return EXIT_OK


def cmd_wop(a) -> int:
    ctx = TermContext(parse(a.alpha), order_by_name("rev"))
    table = build_M(DescendingSeq(const, ctx), a.window + 1, ctx)
    P = Peeler(ctx)
    res = greedy_homog_search(table.M_minus, lambda u: colorbar(u, table, P), 0, a.budget,
                              ctx.omega_alpha, seed=a.seed)
    xs = extract_descending(res.H, table, P)
    _csv(("i", "h", "x"), [(i, res.H[i], x) for i, x in enumerate(xs)])
    return EXIT_OK


def _program(a):
    if a.asm:
        with open(a.asm) as fh:
            return jl.assemble(fh.read())
    if a.code is None:
        raise UsageError("give a program code or --asm FILE")
    return jl.decode(a.code)


def _oracle(name: str, cap: int):
    if name == "none":
        return jl.EMPTY_ORACLE
    if name == "evens":
        return jl.evens(cap)
    if name.startswith("set:"):
        return jl.FiniteOracle.of(int_list(name[4:]), cap)
    raise UsageError(f"unknown oracle {name!r}; use none, evens or set:1,2,..")


def cmd_jump(a) -> int:
    if a.op == "run":
        prog = _program(a)
        r = jl.run_bounded(prog, _oracle(a.oracle, a.cap), a.x, a.m, trace=a.trace)
        out = {"code": jl.encode(prog), "outcome": r.outcome, "output": r.output,
               "steps": r.steps, "max_query": r.max_query, "bound": r.bound}
        if a.trace:
            out["trace"] = [list(s) for s in r.trace]
        _emit(out)
    elif a.op == "decode":
        print(jl.disassemble(_program(a)).rstrip("\n"))
    elif a.op == "pair":
        if a.code is None:
            raise UsageError("pair needs Z as the code argument")
        print(jl.pair_code(parse(a.alpha), a.code))
    elif a.op == "tj":
        t = jl.tj_approx(int_list(a.window), parse(a.alpha), a.jfuel, a.cap)
        rows = []
        for y in sorted(t.members):
            g, z = jl.decode_pair(y)
            rows.append((y, fmt(g), z))
        _csv(("y", "gamma", "z"), rows)
    return EXIT_OK


def cmd_solve(a) -> int:
    shape = bld.parse_shape(a.alpha, a.shape)
    c = bld.named_coloring(a.coloring, shape, a.colors)
    st = bld.solve(c, a.window, a.budget, a.target_len)
    _emit(st.report())
    return EXIT_OK if st.status == "ok" else EXIT_FAIL


def cmd_suite(a) -> int:
    if a.op == "list":
        for name, s in sorted(SUITES.items()):
            print(f"{name}\t{s.summary}")
        return EXIT_OK
    if not a.name:
        raise UsageError("suite run needs a suite name")
    over = {}
    for kv in a.param or ():
        k, sep, v = kv.partition("=")
        if not sep:
            raise UsageError(f"--param expects KEY=VALUE, got {kv!r}")
        over[k] = v
    if a.max is not None:
        over["max"] = a.max
    if a.n is not None:
        over["n"] = a.n
    try:
        rep = run_suite(a.name, a.seed, **over)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    if a.no_timing:
        rep.pop("millis", None)
    _emit(rep)
    return EXIT_OK if not rep["failures"] else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordlab", description="Ordinal, largeness and Ramsey toolkit.")
    p.add_argument("--fuel", type=int, help=f"default fuel (otherwise ${FUEL_ENV})")
    p.add_argument("--config", help="JSON file with per-command defaults; flags win")
    sub = p.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("ord", help="ordinal calculator")
    q.add_argument("op", choices=["cmp", "fmt", "norm", "code", "lead", "classify", "add"])
    q.add_argument("a")
    q.add_argument("b", nargs="?")
    q.set_defaults(run=cmd_ord)

    q = sub.add_parser("fund", help="fundamental sequences (CSV)")
    q.add_argument("alpha")
    q.add_argument("--n", type=_ints, help="bases, e.g. 2..6")
    q.add_argument("--set", type=_set, help="descend along a set and show each step")
    q.set_defaults(run=cmd_fund)

    q = sub.add_parser("large", help="largeness tools")
    q.add_argument("op", choices=["check", "prefix", "enumerate", "scatter"])
    q.add_argument("--alpha", required=True)
    q.add_argument("--set", type=_set)
    q.add_argument("--ground", type=_window, default=list(range(1, 13)))
    q.add_argument("--limit", type=int, default=100000)
    q.add_argument("--k", type=int, default=1)
    q.set_defaults(run=cmd_large)

    q = sub.add_parser("peel", help="peeling functions, zeta and the 4-coloring")
    q.add_argument("--alpha", default="1")
    q.add_argument("--order", default="nat", help="nat, rev or finite:a,b,c")
    q.add_argument("--tuple", required=True, help="terms separated by ';'")
    q.add_argument("--index", help="peeling index rho")
    q.add_argument("--mode", choices=["bound", "iterate"], default="bound")
    q.set_defaults(run=cmd_peel)

    q = sub.add_parser("wop-demo", help="extract a descending sequence from a homogeneous set (CSV)")
    q.add_argument("--alpha", default="1")
    q.add_argument("--window", type=int, default=80)
    q.add_argument("--budget", type=int, default=200000)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(run=cmd_wop)

    q = sub.add_parser("jump", help="register machines and jump approximations")
    q.add_argument("op", choices=["run", "decode", "pair", "tj"])
    q.add_argument("code", nargs="?", type=int)
    q.add_argument("--asm")
    q.add_argument("--x", type=int, default=0)
    q.add_argument("--m", type=int, default=1000)
    q.add_argument("--oracle", default="none")
    q.add_argument("--cap", type=int, default=1 << 20, help="oracle cap; also the code cap for tj")
    q.add_argument("--trace", action="store_true")
    q.add_argument("--alpha", default="0")
    q.add_argument("--window", default="0..40")
    q.add_argument("--fuel", dest="jfuel", type=int, default=60)
    q.set_defaults(run=cmd_jump)

    q = sub.add_parser("solve", help="homogeneous-set builder (JSON)")
    q.add_argument("--alpha", required=True)
    q.add_argument("--shape", choices=["plain", "uplus"], default="plain")
    q.add_argument("--coloring", default="min-parity",
                   help="min-parity, sum-parity, gap, const or mix:SEED")
    q.add_argument("--colors", type=int, default=2)
    q.add_argument("--window", type=_window, default=list(range(1, 25)))
    q.add_argument("--target-len", type=int, default=12)
    q.add_argument("--budget", type=int, default=3000000)
    q.set_defaults(run=cmd_solve)

    q = sub.add_parser("suite", help="property suites (JSON report)")
    q.add_argument("op", choices=["run", "list"])
    q.add_argument("name", nargs="?")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--max")
    q.add_argument("--n", type=int)
    q.add_argument("--param", action="append", help="KEY=VALUE suite parameter")
    q.add_argument("--no-timing", action="store_true", help="drop millis for golden comparisons")
    q.set_defaults(run=cmd_suite)
    return p


def _apply_config(parser: argparse.ArgumentParser, path: str) -> None:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config {path}: {e}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    if "fuel" in cfg:
        parser.set_defaults(fuel=cfg["fuel"])
    subs = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for name, sp in subs.choices.items():
        section = cfg.get(name)
        if isinstance(section, dict):
            sp.set_defaults(**{k.replace("-", "_"): v for k, v in section.items()})


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        cfg = _config_path(argv)
        if cfg:
            _apply_config(parser, cfg)
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"ordlab: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)
    if args.fuel is not None:
        if args.fuel <= 0:
            print("ordlab: --fuel must be positive", file=sys.stderr)
            return EXIT_USAGE
        os.environ[FUEL_ENV] = str(args.fuel)
    try:
        return args.run(args)
    except (UsageError, OrdinalSyntaxError, TermSyntaxError) as e:
        print(f"ordlab: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FuelExhausted as e:
        print(f"ordlab: fuel exhausted: {e}", file=sys.stderr)
        return EXIT_FUEL
    except (ValueError, KeyError) as e:
        print(f"ordlab: {e.args[0] if e.args else e}", file=sys.stderr)
        return EXIT_USAGE


def _config_path(argv: Sequence[str]) -> Optional[str]:
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


if __name__ == "__main__":
    sys.exit(main())

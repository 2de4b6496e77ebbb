"""Property suites with reproducible JSON reports.

Every suite takes a seed plus its own parameters and returns a report
``{v, suite, params, cases, failures, notes, millis}``.  Apart from
``millis`` a report is a pure function of its parameters.
"""

from __future__ import annotations

import itertools
import random
import time
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Callable, Optional

import numpy as np

from . import builder as bld
from . import jumplab as jl
from .fundseq import FuelExhausted, fund, fund_set, nestedness_check, norm
from .largeness import NumStream, is_exact, is_large, min_exact_prefix, size_prefix
from .ordinals import (
    ONE, OMEGA, ZERO, Ordinal, add, compare, fmt, nat, omega_pow, omega_times, parse,
)
from .peeling import (
    DescendingSeq, Peeler, build_M, colorbar, extract_descending, greedy_homog_search,
    ordinals_up_to,
)
from .terms import (
    TZERO, NatOrder, ReversedNat, TermContext, const, generate_terms, show, sub_multiset,
    zeta_candidates,
)

REPORT_VERSION = 1
MAX_LISTED = 25


@dataclass
class Run:
    suite: str
    params: dict
    cases: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def fail(self, **info):
        self.failures.append(info)

    def report(self, millis: int) -> dict:
        out = {"v": REPORT_VERSION, "suite": self.suite, "params": self.params,
               "cases": self.cases, "failures": self.failures[:MAX_LISTED],
               "notes": self.notes, "millis": millis}
        if len(self.failures) > MAX_LISTED:
            out["notes"] = dict(self.notes, failures_total=len(self.failures))
        return out


@dataclass(frozen=True)
class Suite:
    name: str
    fn: Callable[[Run, random.Random], None]
    defaults: dict
    summary: str
    criterion: Optional[int] = None


SUITES: dict = {}


def suite(name: str, summary: str, criterion: Optional[int] = None, **defaults):
    def deco(fn):
        SUITES[name] = Suite(name, fn, defaults, summary, criterion)
        return fn
    return deco


def _coerce(value, like):
    if isinstance(value, str) and not isinstance(like, str):
        if isinstance(like, bool):
            return value.lower() in ("1", "true", "yes", "on")
        if isinstance(like, int):
            return int(value)
        if isinstance(like, float):
            return float(value)
    return value


def run_suite(name: str, seed: int = 0, **overrides) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    s = SUITES[name]
    unknown = set(overrides) - set(s.defaults)
    if unknown:
        raise KeyError(f"suite {name} has no parameter(s) {sorted(unknown)}")
    params = dict(s.defaults)
    for k, v in overrides.items():
        if v is not None:
            params[k] = _coerce(v, s.defaults[k])
    params["seed"] = seed
    run = Run(name, params)
    t0 = time.perf_counter()
    s.fn(run, random.Random(seed))
    return run.report(int((time.perf_counter() - t0) * 1000))


# ------------------------------------------------------------ corpora

def ordinal_corpus(bound: Ordinal, coef: int = 3, terms: int = 4, exps: int = 7) -> list:
    """CNF sums below bound with at most `terms` summands and coefficients <= coef."""
    es = [nat(i) for i in range(exps)] + [OMEGA, add(OMEGA, ONE)]
    es = [e for e in es if compare(omega_pow(e), bound) < 0]
    es.sort(key=cmp_to_key(compare), reverse=True)
    out = {ZERO}

    def build(i, acc, left):
        if left == 0:
            return
        for j in range(i, len(es)):
            for c in range(1, coef + 1):
                x = add(acc, omega_times(es[j], c))
                out.add(x)
                build(j + 1, x, left - 1)

    build(0, ZERO, terms)
    return sorted((x for x in out if compare(x, bound) < 0), key=cmp_to_key(compare))


_KEYS: dict = {}


def _okey(a: Ordinal):
    # tuple key agreeing with compare below epsilon_0
    hit = _KEYS.get(a)
    if hit is not None:
        return hit
    k = []
    for d, b, m in a.terms:
        if d is not ZERO:
            raise ValueError("key only defined below epsilon_0")
        k.append((_okey(b), m))
    if a.nat:
        k.append(((), a.nat))
    _KEYS[a] = k = tuple(k)
    return k


def _ikey(a: Ordinal) -> int:
    # exact integer key below w^w: coefficients as digits in base 2^32
    k = a.nat
    for d, b, m in a.terms:
        if d is not ZERO or b.terms:
            raise ValueError("integer key only defined below w^w")
        k += m << (32 * b.nat)
    return k


def _alphas(text: str) -> list:
    return [parse(x) for x in text.split(",") if x.strip()]


def _subscripts(alpha: Ordinal, width: int = 3) -> list:
    if alpha.terms:
        return [nat(i) for i in range(width)]
    return [nat(i) for i in range(alpha.nat)]


def term_tuples(ctx: TermContext, terms: list, triples: int, rng: random.Random) -> list:
    """All tuples of length 1 and 2 plus `triples` sampled tuples of length 3."""
    out = [(t,) for t in terms] + list(itertools.product(terms, repeat=2))
    out += [tuple(rng.choice(terms) for _ in range(3)) for _ in range(triples)]
    return out


def _show_tuple(A, ctx) -> str:
    return "(" + ", ".join(show(t, ctx.order) for t in A) + ")"


# ------------------------------------------------------------- largeness

@suite("omega-largeness", "w-large iff |s| >= min s + 1, and w-size iff equality", 1, top=11)
def _omega_largeness(run: Run, rng):
    top = run.params["top"]
    for mask in range(1 << (top + 1)):
        s = tuple(i for i in range(top + 1) if mask >> i & 1)
        want_large = bool(s) and len(s) >= s[0] + 1
        want_exact = bool(s) and len(s) == s[0] + 1
        got_large, got_exact = is_large(OMEGA, s), is_exact(OMEGA, s)
        run.cases += 1
        if (got_large, got_exact) != (want_large, want_exact):
            run.fail(set=list(s), large=got_large, exact=got_exact)


@suite("monotonicity", "supersets of large sets are large; proper subsets of size sets are small",
       4, top=10, mult=4)
def _monotonicity(run: Run, rng):
    top, mult = run.params["top"], run.params["mult"]
    alphas = sorted({add(omega_times(ONE, a), nat(b)) if a else nat(b)
                     for a in range(mult + 1) for b in range(mult + 1)} - {ZERO}
                    | {omega_pow(nat(2))}, key=cmp_to_key(compare))
    masks = np.arange(1 << top)
    elems = list(range(1, top + 1))
    for a in alphas:
        large = np.zeros(1 << top, dtype=bool)
        for m in range(1 << top):
            large[m] = fund_set(a, [elems[i] for i in range(top) if m >> i & 1]) is ZERO
        for i in range(top):
            bit = 1 << i
            base = masks[(masks & bit) == 0]
            bad = base[large[base] & ~large[base | bit]]
            run.cases += len(base)
            for m in bad[:3]:
                run.fail(alpha=fmt(a), small_superset=_bits(int(m) | bit, elems),
                         large_subset=_bits(int(m), elems))
        # exact t: every proper subset is small
        for t in range(1, 1 << top):
            if not large[t] or large[t & ~(1 << (t.bit_length() - 1))]:
                continue
            sub = (t - 1) & t
            while True:
                run.cases += 1
                if large[sub]:
                    run.fail(alpha=fmt(a), size_set=_bits(t, elems), large_subset=_bits(sub, elems))
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & t
    run.notes["alphas"] = len(alphas)


def _bits(m: int, elems) -> list:
    return [elems[i] for i in range(len(elems)) if m >> i & 1]


# ---------------------------------------------------------- nestedness

@suite("nestedness", "no g < b and n > 1 with g > b[n] > g[n]", 2,
       max="w^w", n=5, coef=3, terms=4)
def _nestedness(run: Run, rng):
    p = run.params
    C = ordinal_corpus(parse(p["max"]), p["coef"], p["terms"])
    bad = nestedness_check(C, p["n"])
    run.cases = len(C) * (len(C) - 1) // 2 * max(0, p["n"] - 1)
    run.notes["corpus"] = len(C)
    for g, b, n in bad:
        run.fail(gamma=fmt(g), beta=fmt(b), n=n)


@suite("goodnorm", "b < d implies b <= d[|b|]; descents along sets above |b| pass through b", 3,
       max="w^w", coef=3, terms=4, width=6, samples=2000)
def _goodnorm(run: Run, rng):
    p = run.params
    C = ordinal_corpus(parse(p["max"]), p["coef"], p["terms"])
    width = p["width"]
    norms = {a: norm(a) for a in C}
    groups: dict = {}
    for a in C:  # C is sorted, so each group is sorted too
        groups.setdefault(norms[a], []).append(a)
    okey = _ikey if compare(parse(p["max"]), omega_pow(OMEGA)) <= 0 else _okey
    gkeys = {n: [okey(a) for a in g] for n, g in groups.items()}
    run.notes["corpus"] = len(C)
    run.notes["norms"] = sorted(groups)

    def strictly_between(n, lo, hi):
        ks = gkeys[n]
        i, j = bisect_right(ks, okey(lo)), bisect_left(ks, okey(hi))
        return groups[n][i:j]

    # first clause: nothing of norm n strictly between d[n] and d
    c1 = 0
    for n in groups:
        for d in C:
            f = fund(d, n)
            c1 += 1
            for b in strictly_between(n, f, d):
                run.fail(clause=1, beta=fmt(b), delta=fmt(d), delta_n=fmt(f))
    # second clause: along every s within [n, n+width] each step from g to g[x]
    # jumps over no corpus element of norm n, so every b in reach is visited
    memo: dict = {}
    edges = [0]

    def subtree(g, start, n, d, path):
        key = (g, start, n)
        if key in memo:
            return
        memo[key] = True
        if g is ZERO:
            return
        for x in range(start, n + width + 1):
            f = fund(g, x)
            edges[0] += 1
            for b in strictly_between(n, f, g):
                run.fail(clause=2, beta=fmt(b), delta=fmt(d), s=list(path + (x,)),
                         skipped_from=fmt(g), to=fmt(f))
            subtree(f, x + 1, n, d, path + (x,))

    for n in groups:
        for d in C:
            subtree(d, n, n, d, ())
    # consequence: delta-large sets above |b| are b-large
    # sizes explode past w^2*2, so the sampled deltas stay below it
    low = [x for x in C if compare(x, omega_times(nat(2), 2)) < 0]
    tested = skipped = 0
    for _ in range(p["samples"] if len(low) > 1 else 0):
        i, j = sorted(rng.sample(range(len(low)), 2))
        b, d = low[i], low[j]
        start = norms[b] + rng.randrange(3)
        xs = itertools.accumulate(itertools.chain([start], iter(lambda: rng.randint(1, 2), 0)))
        try:
            s = min_exact_prefix(d, NumStream(xs, fuel=3000))
        except FuelExhausted:
            skipped += 1
            continue
        tested += 1
        if not is_large(b, s):
            run.fail(clause=3, beta=fmt(b), delta=fmt(d), s=s)
    run.cases = c1 + edges[0] + tested
    run.notes.update(clause1=c1, clause2_edges=edges[0], transfer_tested=tested,
                     transfer_skipped=skipped)


# -------------------------------------------------------------- peeling

def _term_corpus(alpha: Ordinal, xs, depth_: int):
    ctx = TermContext(alpha, NatOrder())
    return ctx, generate_terms(ctx, xs, depth_, _subscripts(alpha))


@suite("peeling", "later peels are subterms of earlier peels, stabilized entries are well-formed",
       5, alphas="1,2,w", depth=2, triples=1500, pairs=3)
def _peeling(run: Run, rng):
    p = run.params
    for a in _alphas(p["alphas"]):
        ctx, T = _term_corpus(a, range(3), p["depth"])
        P = Peeler(ctx)
        idx = ordinals_up_to(ctx.omega_alpha, a)
        for A in term_tuples(ctx, T, p["triples"], rng):
            for _ in range(p["pairs"]):
                nu, rho = sorted(rng.sample(range(len(idx)), 2))
                nu, rho = idx[nu], idx[rho]
                low, high = P.pbar(nu, A), P.pbar(rho, A)
                run.cases += 1
                for i, (u, v) in enumerate(zip(low, high)):
                    # zero is the floor every entry may peel down to
                    if v is not TZERO and v not in sub_multiset(u):
                        run.fail(alpha=fmt(a), tuple=_show_tuple(A, ctx), nu=fmt(nu),
                                 rho=fmt(rho), entry=i)
                        break
            top = P.pbar(ctx.omega_alpha, A)
            run.cases += 1
            if any(t.kind not in ("elem", "zero") for t in top):
                run.fail(alpha=fmt(a), tuple=_show_tuple(A, ctx), top_peel=_show_tuple(top, ctx))
        for d, t in P.anomalies:
            run.fail(alpha=fmt(a), anomaly=show(t, ctx.order), index=fmt(d))
        run.notes[f"terms[{fmt(a)}]"] = len(T)


def _exponents(alpha: Ordinal) -> list:
    if alpha.terms:
        return [nat(1), nat(2), nat(3), alpha]
    return [nat(i) for i in range(1, alpha.nat + 1)]


@suite("convergence", "the stabilized peel below w^d is reached at the norm bound", 6,
       alphas="1,2,w", depth=2, triples=500, extra=3)
def _convergence(run: Run, rng):
    p = run.params
    for a in _alphas(p["alphas"]):
        ctx, T = _term_corpus(a, range(3), p["depth"])
        P, Pit = Peeler(ctx), Peeler(ctx, mode="iterate")
        for A in term_tuples(ctx, T, p["triples"], rng):
            m = ctx.term_norm(A[0])
            for d in _exponents(a):
                base = P.p(omega_times(fund(d, m), m), A)
                run.cases += 1
                for k in range(1, p["extra"] + 1):
                    later = P.p(omega_times(fund(d, m + k), m + k), A)
                    if later is not base:
                        run.fail(alpha=fmt(a), tuple=_show_tuple(A, ctx), d=fmt(d), step=k,
                                 at_bound=show(base, ctx.order), later=show(later, ctx.order))
                        break
                it = Pit.pbar_below(d, A)[0]
                if it is not base:
                    run.fail(alpha=fmt(a), tuple=_show_tuple(A, ctx), d=fmt(d),
                             at_bound=show(base, ctx.order), iterated=show(it, ctx.order))


def _sigmas(alpha: Ordinal, ctx: TermContext) -> dict:
    return {
        "const": lambda i: const(i),
        "phi0": lambda i: ctx.phi(ZERO, const(i)),
        "phi0+const": lambda i: ctx.add(ctx.phi(ZERO, const(i)), const(i)),
    }


@suite("prefix-coloring", "peels and colors only see the large-enough initial segment", 7,
       alphas="1,2", sets=40, span=30, indices=6)
def _prefix_coloring(run: Run, rng):
    p = run.params
    for a in _alphas(p["alphas"]):
        ctx = TermContext(a, ReversedNat())
        idx = ordinals_up_to(ctx.omega_alpha, a)
        for sname, fn in _sigmas(a, ctx).items():
            table = build_M(DescendingSeq(fn, ctx), p["span"] + 1, ctx)
            W = table.M_minus
            P = Peeler(ctx)
            for _ in range(p["sets"]):
                s = tuple(sorted(rng.sample(W, rng.randint(2, min(len(W), 20)))))
                A = tuple(table.tau[x] for x in s)
                for nu in rng.sample(idx, min(p["indices"], len(idx))):
                    bound = add(ONE, nu)
                    whole = P.p(nu, A)
                    for j in range(1, len(s) + 1):
                        if not is_large(bound, s[:j]):
                            continue
                        run.cases += 1
                        part = P.p(nu, A[:j])
                        if part is not whole:
                            run.fail(alpha=fmt(a), sigma=sname, s=list(s), u=list(s[:j]), nu=fmt(nu),
                                     p_u=show(part, ctx.order), p_s=show(whole, ctx.order))
                if size_prefix(ctx.omega_alpha, s) is not None:
                    run.cases += 1
                    full, pre = P.color4(A), colorbar(s, table, P)
                    if full != pre:
                        run.fail(alpha=fmt(a), sigma=sname, s=list(s), color_whole=full, color_prefix=pre)


@suite("zeta", "the S(t) scan finds the same zeta as a full bounded scan", 8,
       alphas="1,2,w", depth=2, triples=800)
def _zeta(run: Run, rng):
    p = run.params
    for a in _alphas(p["alphas"]):
        ctx, T = _term_corpus(a, range(3), p["depth"])
        P = Peeler(ctx)
        idx = ordinals_up_to(ctx.omega_alpha, a)
        found = 0
        for A in term_tuples(ctx, T, p["triples"], rng):
            if len(A) < 2:
                continue
            z = P.zeta(A)
            if z is None:
                continue
            found += 1
            run.cases += 1
            zf = P.zeta(A, full_scan=list(idx) + list(zeta_candidates(A[0], ctx)))
            if zf is not z:
                run.fail(alpha=fmt(a), tuple=_show_tuple(A, ctx), zeta_S=fmt(z), zeta_full=fmt(zf))
        run.notes[f"with_zeta[{fmt(a)}]"] = found


@suite("extraction", "a color-0 homogeneous set yields a descending sequence in X", 9,
       window=80, need=20, budget=200000)
def _extraction(run: Run, rng):
    p = run.params
    ctx = TermContext(ONE, ReversedNat())
    table = build_M(DescendingSeq(const, ctx), p["window"] + 1, ctx)
    P = Peeler(ctx)
    res = greedy_homog_search(table.M_minus, lambda u: colorbar(u, table, P), 0, p["budget"],
                              ctx.omega_alpha, seed=run.params["seed"])
    run.cases = res.tested
    xs = extract_descending(res.H, table, P)
    run.notes.update(H=len(res.H), extracted=len(xs), head=xs[:10], exhausted=res.exhausted)
    if len(xs) < p["need"]:
        run.fail(reason="too few extracted elements", extracted=len(xs), need=p["need"])
    if any(x >= y for x, y in zip(xs, xs[1:])):
        run.fail(reason="extracted values not strictly increasing", values=xs)


# ----------------------------------------------------------------- jump

def _ords(text: str) -> list:
    return [parse(x) for x in text.split(",")]


@suite("jump", "bounded runs, machine decomposition, filter round trips and counting", 10,
       pool=50, bounds=40, instances=100, trials=100,
       alphas="1,2,3,w,w+1,w+2,w*2,w*2+1,w^2")
def _jump(run: Run, rng):
    p = run.params
    pool = jl.program_pool(p["pool"], run.params["seed"])
    A = jl.evens(1 << 20)
    # (a) halting persists and keeps its result once the bound grows
    va = 0
    for prog in pool:
        for x in range(5):
            first = None
            for m in range(1, p["bounds"] + 1):
                r = jl.run_bounded(prog, A, x, m)
                run.cases += 1
                if first is None and r.halted:
                    first = r
                elif first is not None and (not r.halted or r.output != first.output
                                            or r.steps != first.steps):
                    va += 1
                    run.fail(part="a", program=jl.encode(prog), x=x, m=m)
                    break
    # (b) M_a on s + t agrees with M_{a[s]} on t below min s
    fam = jl.MachineFamily(A)
    alphas = _ords(p["alphas"])
    done = 0
    while done < p["instances"]:
        a = rng.choice(alphas)
        s = tuple(sorted(rng.sample(range(6, 40), rng.randint(1, 3))))
        b = fund_set(a, s)
        if b is ZERO:
            continue
        t = size_prefix(b, range(s[-1] + 1, s[-1] + 5000))
        if t is None or len(t) > 600:
            continue
        done += 1
        run.cases += 1
        lim = min(64, s[0])
        tagged = [y for y in range(lim) if (g := jl.pair_tag(y)) is not None and compare(g, b) <= 0]
        lhs = {y for y in tagged if fam.accepts(b, y, t)}
        rhs = {y for y in tagged if fam.accepts(a, y, s + t)}
        if lhs != rhs:
            run.fail(part="b", alpha=fmt(a), s=list(s), t_len=len(t),
                     only_sub=sorted(lhs - rhs), only_whole=sorted(rhs - lhs))
    # (c) b->a followed by a->b reproduces every halted run
    Y = jl.tj_approx(range(0, 40, 2), ONE, 60, 80)
    orc = Y.as_oracle()
    halted = flagged = 0
    for prog in pool:
        filt = jl.filter_program(prog, ZERO, 80)
        for x in range(6):
            r = jl.run_bounded(prog, orc, x, 60, trace=True)
            if not r.halted:
                continue
            halted += 1
            run.cases += 1
            fwd = jl.translate_run("b->a", r, filt)
            if fwd.flagged:
                flagged += 1
                continue
            back = jl.translate_run("a->b", fwd.run, filt)
            if back.run.trace != r.trace or back.run.output != r.output:
                run.fail(part="c", program=jl.encode(prog), x=x)
    # (d) some consecutive pair of a long chain is never separated
    found = 0
    codes = [jl.encode(q) for q in pool]
    for trial in range(p["trials"]):
        a0 = rng.randint(1, 3)
        chain = sorted(rng.sample(range(a0 + 1, 400), a0 * a0 + 3))
        progs = [rng.choice(codes) for _ in range(a0)]
        orc_d = jl.FiniteOracle.from_pred(lambda v, _k=rng.randrange(2, 5): v % _k == 0, 1 << 20)
        w = jl.counting_check(a0, chain, orc_d, progs)
        run.cases += 1
        if w is None:
            run.fail(part="d", trial=trial, a0=a0, chain=chain)
        else:
            found += 1
    run.notes.update(monotonicity_violations=va, decomposition_instances=done,
                     halted_runs=halted, flagged=flagged, counting_found=found)


@suite("t-extraction", "T(A, 1, H) on a color-1 window against the approximate jump", 11,
       low=39, high=170, samples=150, ys=8, fuel=60, cap=80)
def _t_extraction(run: Run, rng):
    p = run.params
    H = list(range(p["low"], p["high"] + 1))
    fam = jl.MachineFamily(jl.evens(1 << 20))
    colors = set()
    for _ in range(p["samples"]):
        tup = tuple(sorted(rng.sample(H, 4)))
        col = jl.jump_coloring(ONE, tup, fam)
        colors.add(col)
        run.cases += 1
        if col != 1:
            run.fail(reason="window is not color-1 homogeneous", tuple=list(tup), color=col)
    tj = jl.tj_approx(range(0, p["cap"], 2), ONE, p["fuel"], p["cap"])
    agree = cross = 0
    rows = []
    for y in range(p["ys"]):
        r = jl.T_membership(fam, ONE, H, y, cross_check=True)
        run.cases += 1
        want = y in tj.members
        agree += r.member == want
        cross += bool(r.agree)
        rows.append([y, r.member, want])
        dec = jl.decode_pair(y)
        if dec is not None and dec[0] is ZERO and r.member != (dec[1] % 2 == 0):
            run.fail(reason="base clause violated", y=y, z=dec[1], member=r.member)
    run.notes.update(window_colors=sorted(colors), agreement=agree / p["ys"],
                     cross_check_agreement=cross / p["ys"], rows=rows)


# -------------------------------------------------------------- builder

@suite("builder", "solver prefixes are monochromatic under the independent verifier", 12,
       alphas="3,w,w+1", colorings="min-parity,gap,sum-parity", window=24, target=12,
       budget=3000000)
def _builder(run: Run, rng):
    p = run.params
    rows = []
    for a in p["alphas"].split(","):
        for name in p["colorings"].split(","):
            c = bld.named_coloring(name, bld.parse_shape(a))
            st = bld.solve(c, range(1, p["window"] + 1), p["budget"], p["target"])
            v = bld.verify(c, st.H)
            run.cases += v.tested
            rows.append([a, name, len(st.H), st.status, v.tested, v.exhaustive])
            if st.status != "ok" or len(st.H) < p["target"] or not v.ok:
                run.fail(alpha=a, coloring=name, H=list(st.H), status=st.status,
                         colors=list(v.colors),
                         witness=None if v.witness is None else [list(w) for w in v.witness])
    run.notes["runs"] = rows


__all__ = ["SUITES", "Suite", "Run", "run_suite", "ordinal_corpus", "term_tuples",
           "REPORT_VERSION"]

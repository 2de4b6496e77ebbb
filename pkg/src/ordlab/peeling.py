"""Overline, peeling functions, zeta, the 4-coloring and the M pipeline."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Callable, Iterable, Optional, Sequence

from .fundseq import FuelExhausted, default_fuel, fund
from .largeness import size_prefix
from .ordinals import (
    ONE, ZERO, Ordinal, cnf, compare, exponent, fmt, omega_pow, omega_times,
)
from .terms import (
    TZERO, ContextError, Term, TermContext, comps, elem, show,
    zeta_candidates,
)

TermTuple = tuple


class PeelError(ValueError):
    pass


def overline(t: Term, s: Term, ctx: TermContext) -> Term:
    if ctx.le(t, s):
        return TZERO
    tc, sc = comps(t), comps(s)
    for i, ti in enumerate(tc):
        si = sc[i] if i < len(sc) else TZERO
        if ctx.lt(si, ti):
            if ti.kind == "phi" and ti.a is ZERO:
                return ti.b
            return ti
    raise AssertionError("t > s without a witnessing component")


class Peeler:
    """Peeling functions for one term context, memoized on (rho, tuple).

    mode "bound" stabilizes below omega^d with each entry's own norm;
    mode "iterate" runs the limit directly (diagnostic).
    """

    def __init__(self, ctx: TermContext, mode: str = "bound", fuel: Optional[int] = None):
        if mode not in ("bound", "iterate"):
            raise ValueError("mode must be bound or iterate")
        self.ctx = ctx
        self.mode = mode
        self.fuel = default_fuel() if fuel is None else fuel
        self.memo: dict = {}
        self.anomalies: list = []

    # p-bar_1
    def p1(self, A: TermTuple) -> TermTuple:
        ctx = self.ctx
        out = []
        for i, t in enumerate(A):
            nxt = A[i + 1] if i + 1 < len(A) else TZERO
            if t.kind == "elem" or nxt.kind == "elem":
                raise PeelError("cannot peel past X-elements")
            out.append(overline(t, nxt, ctx))
        return tuple(out)

    def pbar(self, rho: Ordinal, A: Sequence[Term]) -> TermTuple:
        A = tuple(A)
        if rho is ZERO or not A:
            return A
        if compare(rho, self.ctx.omega_alpha) > 0:
            raise PeelError(f"index {fmt(rho)} exceeds w^alpha")
        key = (rho, A)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        B = A
        for comp, mult in cnf(rho):
            e = exponent(comp)
            for _ in range(mult):
                C = self.pbar_omega(e, B)
                if C == B:
                    break
                B = C
        self.memo[key] = B
        return B

    def pbar_omega(self, d: Ordinal, A: TermTuple) -> TermTuple:
        if d is ZERO:
            return self.p1(A)
        B = self.pbar_below(d, A)
        return tuple(self._peel_entry(d, t) for t in B)

    def pbar_below(self, d: Ordinal, A: TermTuple) -> TermTuple:
        key = ("below", d, A)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if self.mode == "bound":
            out = []
            for i in range(len(A)):
                m = self.ctx.term_norm(A[i])
                rho = omega_times(fund(d, m), m)
                out.append(self.pbar(rho, A[i:])[0])
            B = tuple(out)
        else:
            B = self._iterate_below(d, A)
        self.memo[key] = B
        return B

    def _iterate_below(self, d: Ordinal, A: TermTuple) -> TermTuple:
        steps = 0
        if d.nat:  # successor: iterate p-bar of w^(d-1)
            pred = Ordinal(d.terms, d.nat - 1)
            B = A
            while True:
                C = self.pbar_omega(pred, B)
                steps += 1
                if C == B:
                    return B
                if steps > self.fuel:
                    raise FuelExhausted("peeling limit did not stabilize")
                B = C
        prev, stable, n = None, 0, 1
        while stable < 3:
            n += 1
            C = self.pbar(omega_times(fund(d, n), n), A)
            stable = stable + 1 if C == prev else 0
            prev = C
            if n > self.fuel:
                raise FuelExhausted("peeling limit did not stabilize")
        return prev

    def _peel_entry(self, d: Ordinal, t: Term) -> Term:
        k = t.kind
        if k == "zero" or k == "elem":
            return t
        if k == "const":
            return elem(t.a) if d is self.ctx.alpha else t
        if k == "phi":
            c = compare(t.a, d)
            if c == 0:
                return t.b
            if c > 0:
                return t
        self.anomalies.append((d, t))
        return t

    def p(self, rho: Ordinal, A: Sequence[Term]) -> Term:
        return self.pbar(rho, A)[0]

    # ---------------------------------------------------------- zeta
    def _le_at(self, rho: Ordinal, A: TermTuple) -> bool:
        P = self.pbar(rho, A)
        a = P[0]
        b = P[1] if len(P) > 1 else TZERO
        if a.kind == "zero":
            return True
        if a.kind == "elem" or b.kind == "elem":
            if b.kind == "zero":
                return False
            if a.kind == "elem" and b.kind == "elem":
                return self.ctx.order.le(a.a, b.a)
            raise PeelError("mixed X-element and term at top index")
        return self.ctx.le(a, b)

    def zeta(self, A: Sequence[Term], full_scan: Optional[Iterable[Ordinal]] = None
             ) -> Optional[Ordinal]:
        """Least zeta with p_zeta(A) <= p_zeta(A^-), or None when absent."""
        A = tuple(A)
        if not A:
            raise PeelError("empty tuple")
        top = self.ctx.omega_alpha
        if not self._le_at(top, A):
            return None
        if full_scan is None:
            cands = set(zeta_candidates(A[0], self.ctx)) | {top}
        else:
            cands = {z for z in full_scan if compare(z, top) <= 0} | {top}
        for z in sorted(cands, key=cmp_to_key(compare)):
            if self._le_at(z, A):
                return z
        return top

    def color4(self, A: Sequence[Term]) -> int:
        A = tuple(A)
        if len(A) < 2:
            raise PeelError("coloring needs at least two entries")
        za = self.zeta(A)
        if za is None:
            return 0
        zb = self.zeta(A[1:])
        if zb is None:
            return 3
        c = compare(za, zb)
        return 1 if c > 0 else (2 if c == 0 else 3)


def ordinals_up_to(top: Ordinal, alpha: Ordinal, coef: int = 3, terms: int = 2,
                   exps: Optional[list] = None) -> list:
    """A bounded corpus of ordinals below w^alpha plus w^alpha itself."""
    if exps is None:
        if alpha.terms:
            exps = [Ordinal((), k) for k in range(4)] + [omega_pow(ONE)]
        else:
            exps = [Ordinal((), k) for k in range(alpha.nat)]
    exps = [e for e in exps if compare(e, alpha) < 0]
    exps.sort(key=cmp_to_key(compare), reverse=True)
    out = {ZERO}

    def build(i, acc, left):
        if i == len(exps) or left == 0:
            return
        for j in range(i, len(exps)):
            for c in range(1, coef + 1):
                x = acc + omega_times(exps[j], c)
                out.add(x)
                build(j + 1, x, left - 1)

    build(0, ZERO, terms)
    out.add(top)
    return sorted(out, key=cmp_to_key(compare))


# ------------------------------------------------------------- M pipeline

class DescentViolation(ValueError):
    pass


class DescendingSeq:
    """A fueled term sequence, checked to be strictly descending."""

    def __init__(self, fn: Callable[[int], Term], ctx: TermContext,
                 fuel: Optional[int] = None):
        self.fn = fn
        self.ctx = ctx
        self.fuel = default_fuel() if fuel is None else fuel
        self._vals: list = []

    def __call__(self, i: int) -> Term:
        if i >= self.fuel:
            raise FuelExhausted(f"sequence fuel {self.fuel} exhausted")
        while len(self._vals) <= i:
            j = len(self._vals)
            v = self.fn(j)
            if j and not self.ctx.lt(v, self._vals[-1]):
                raise DescentViolation(
                    f"sigma({j}) = {show(v, self.ctx.order)} is not below its predecessor")
            self._vals.append(v)
        return self._vals[i]


@dataclass
class MTable:
    M: list
    tau: dict
    ctx: TermContext = field(repr=False)

    @property
    def M_minus(self) -> list:
        return self.M[1:]


def build_M(sigma: DescendingSeq, count: int, ctx: TermContext, strict: bool = False) -> MTable:
    """M(0) = 0 and M(i) = |sigma(M(i-1))| + 3, kept strictly increasing.

    With strict=True the literal recursion is used and a stall is an error.
    """
    M = [0]
    tau = {}
    while len(M) < count:
        prev = M[-1]
        t = sigma(prev)
        m = ctx.term_norm(t) + 3
        if m <= prev:
            if strict:
                raise DescentViolation(f"M stalls at {prev}")
            m = prev + 1
        M.append(m)
        tau[m] = t
    return MTable(M, tau, ctx)


class ColorError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def colorbar(u: Sequence[int], table: MTable, peeler: Peeler) -> int:
    ctx = table.ctx
    u = tuple(u)
    if not u:
        raise ColorError("empty set")
    for x in u:
        if x not in table.tau:
            raise ColorError(f"{x} is not in M^- prefix")
    if ctx.term_norm(table.tau[u[0]]) + 2 >= u[0]:
        raise ColorError("norm margin violated")
    s = size_prefix(ctx.omega_alpha, u)
    if s is None:
        raise ColorError("set is not w^alpha-large")
    return peeler.color4(tuple(table.tau[x] for x in s))


def extract_descending(H: Sequence[int], table: MTable, peeler: Peeler) -> list:
    """X-elements p_{w^alpha}(s_i) for the successive tail prefixes s_i of H."""
    ctx = table.ctx
    H = tuple(H)
    out = []
    for i in range(len(H)):
        s = size_prefix(ctx.omega_alpha, H[i:])
        if s is None:
            break
        col = colorbar(s, table, peeler)
        if col != 0:
            raise ColorError(f"color {col} on {s}", witness=s)
        v = peeler.p(ctx.omega_alpha, tuple(table.tau[x] for x in s))
        if v.kind != "elem":
            raise ColorError(f"top peel of {s} is not an X-element", witness=s)
        if out and not ctx.order.cmp(v.a, out[-1]) < 0:
            raise ColorError("extracted sequence is not descending", witness=s)
        out.append(v.a)
    return out


# ------------------------------------------------------- finite search

@dataclass
class SearchResult:
    H: tuple
    exhausted: bool
    tested: int


def _sample_ending(size: Ordinal, cand: list, rng: random.Random, tries: int = 8):
    x = cand[-1]
    body = cand[:-1]
    for _ in range(tries):
        if not body:
            break
        j = rng.randrange(len(body))
        acc = []
        r = size
        ok = False
        while True:
            r2 = fund(r, body[j]) if j < len(body) else fund(r, x)
            if j == len(body):
                ok = r2 is ZERO
                break
            if r2 is ZERO:
                break
            acc.append(body[j])
            r = r2
            j = rng.randint(j + 1, len(body))
        if ok:
            return tuple(acc) + (x,)
    return None


def greedy_homog_search(window: Sequence[int], coloring: Callable[[tuple], int],
                        target_color: int, budget: int, size: Ordinal,
                        samples: int = 4, seed: int = 0) -> SearchResult:
    """Largest subset found whose tested size-sets all get target_color.

    Depth-first over include/exclude decisions with include first, so the
    first leaf is the greedy answer; the remaining budget backtracks.
    """
    window = list(window)
    state = {"tested": 0, "exhausted": False, "best": ()}

    def tested_sets(cand):
        x = cand[-1]
        seen = set()
        for j in range(len(cand)):
            s = size_prefix(size, cand[j:])
            if s is not None and s[-1] == x and s not in seen:
                seen.add(s)
                yield s
        rng = random.Random(hash((seed, tuple(cand))))
        for _ in range(samples):
            s = _sample_ending(size, cand, rng)
            if s is not None and s not in seen:
                seen.add(s)
                yield s

    def admissible(cand) -> bool:
        for s in tested_sets(cand):
            if state["tested"] >= budget:
                state["exhausted"] = True
                return False
            state["tested"] += 1
            if coloring(s) != target_color:
                return False
        return True

    def dfs(i, H):
        if state["exhausted"]:
            return
        if len(H) + len(window) - i <= len(state["best"]):
            return
        if i == len(window):
            state["best"] = tuple(H)
            return
        cand = H + [window[i]]
        if admissible(cand):
            dfs(i + 1, cand)
        if state["exhausted"]:
            if len(H) > len(state["best"]):
                state["best"] = tuple(H)
            return
        dfs(i + 1, H)

    dfs(0, [])
    return SearchResult(state["best"], state["exhausted"], state["tested"])

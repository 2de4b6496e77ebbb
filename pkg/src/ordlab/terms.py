"""The term system phi_alpha(X) over a pluggable linear order."""

from __future__ import annotations

import re
from collections import Counter
from functools import cmp_to_key
from typing import Any, Callable, Iterable, Iterator, Optional

from .fundseq import NormContext, norm
from .ordinals import ONE, ZERO, Ordinal, add, compare, fmt, omega_pow, parse

# ----------------------------------------------------------- linear orders


class LinearOrder:
    """Interface: a total order on hashable elements with a text codec."""

    name = "abstract"

    def cmp(self, x, y) -> int:
        raise NotImplementedError

    def le(self, x, y) -> bool:
        return self.cmp(x, y) <= 0

    def fmt(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        raise NotImplementedError

    def descending(self) -> Optional[Iterator]:
        return None


class NatOrder(LinearOrder):
    name = "nat"

    def cmp(self, x, y):
        return (x > y) - (x < y)

    def parse(self, text):
        return int(text)


class ReversedNat(LinearOrder):
    """Naturals ordered backwards; 0, 1, 2, ... is strictly descending."""

    name = "rev"

    def cmp(self, x, y):
        return (x < y) - (x > y)

    def parse(self, text):
        return int(text)

    def descending(self):
        i = 0
        while True:
            yield i
            i += 1


class FiniteOrder(LinearOrder):
    """Labels ordered by their position in the given list (first is least)."""

    name = "finite"

    def __init__(self, labels: Iterable[str]):
        self.labels = list(labels)
        self.pos = {x: i for i, x in enumerate(self.labels)}
        if len(self.pos) != len(self.labels):
            raise ValueError("duplicate labels")

    def cmp(self, x, y):
        a, b = self.pos[x], self.pos[y]
        return (a > b) - (a < b)

    def parse(self, text):
        text = text.strip()
        if text not in self.pos:
            raise ValueError(f"unknown element {text!r}")
        return text


def order_by_name(name: str) -> LinearOrder:
    if name == "nat":
        return NatOrder()
    if name == "rev":
        return ReversedNat()
    if name.startswith("finite:"):
        return FiniteOrder(name[len("finite:"):].split(","))
    raise ValueError(f"unknown order {name!r}")


# ------------------------------------------------------------------- terms


class Term:
    """Interned syntax node.  kind is zero, const, phi, sum or elem.

    elem nodes are bare X-elements; they only appear as peeling output.
    """

    __slots__ = ("kind", "a", "b", "__weakref__")
    _table: dict = {}

    def __new__(cls, kind: str, a: Any = None, b: Any = None):
        key = (kind, a, b)
        obj = cls._table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "kind", kind)
            object.__setattr__(obj, "a", a)
            object.__setattr__(obj, "b", b)
            cls._table[key] = obj
        return obj

    def __setattr__(self, k, v):
        raise AttributeError("Term is immutable")

    @property
    def delta(self) -> Ordinal:
        return self.a

    @property
    def arg(self) -> "Term":
        return self.b

    @property
    def parts(self) -> tuple:
        return self.a

    def __repr__(self):
        return f"Term({show(self)!r})"


TZERO = Term("zero")


def const(x) -> Term:
    return Term("const", x)


def elem(x) -> Term:
    return Term("elem", x)


def raw_phi(d: Ordinal, t: Term) -> Term:
    return Term("phi", d, t)


def raw_sum(parts: Iterable[Term]) -> Term:
    parts = tuple(parts)
    if not parts:
        return TZERO
    if len(parts) == 1:
        return parts[0]
    return Term("sum", parts)


def comps(t: Term) -> tuple:
    if t.kind == "zero":
        return ()
    if t.kind == "sum":
        return t.a
    return (t,)


class ContextError(ValueError):
    pass


class TermContext:
    """Ambient alpha, the order on X and the comparison cache."""

    def __init__(self, alpha: Ordinal, order: LinearOrder,
                 normctx: Optional[NormContext] = None):
        if alpha is ZERO:
            raise ValueError("alpha must be positive")
        self.alpha = alpha
        self.order = order
        self.normctx = normctx or NormContext()
        self.omega_alpha = omega_pow(alpha)
        self._le: dict = {}
        self._norm: dict = {}

    # -- normal forms
    def phi(self, d: Ordinal, t: Term) -> Term:
        if compare(d, self.alpha) >= 0:
            raise ContextError(f"subscript {fmt(d)} not below alpha")
        if t.kind == "const":
            return t
        if t.kind == "phi" and compare(t.a, d) > 0:
            return t
        return raw_phi(d, t)

    def add(self, *ts: Term) -> Term:
        stack = []
        for t in ts:
            for u in comps(t):
                while stack and self.lt(stack[-1], u):
                    stack.pop()
                stack.append(u)
        return raw_sum(stack)

    def normalize(self, t: Term) -> Term:
        k = t.kind
        if k in ("zero", "const", "elem"):
            return t
        if k == "phi":
            return self.phi(t.a, self.normalize(t.b))
        return self.add(*[self.normalize(u) for u in t.a])

    # -- order
    def le(self, t: Term, s: Term) -> bool:
        if t is s or t.kind == "zero":
            return True
        key = (t, s)
        hit = self._le.get(key)
        if hit is None:
            hit = self._le_raw(t, s)
            self._le[key] = hit
        return hit

    def lt(self, t: Term, s: Term) -> bool:
        return t is not s and self.le(t, s)

    def cmp(self, t: Term, s: Term) -> int:
        if t is s:
            return 0
        return -1 if self.le(t, s) else 1

    def _le_raw(self, t: Term, s: Term) -> bool:
        if t.kind == "elem" or s.kind == "elem":
            raise ContextError("X-elements are not terms")
        tc, sc = comps(t), comps(s)
        if not sc:
            return False
        if len(tc) == 1:
            if t.kind == "const":
                return any(self.order.le(t.a, y) for y in constants(s))
            s0 = sc[0]
            if s0.kind == "const":
                return self.le(t.b, s0)
            c = compare(t.a, s0.a)
            if c < 0:
                return self.le(t.b, s0)
            if c == 0:
                return self.le(t.b, s0.b)
            return self.le(t, s0.b)
        t0, s0 = tc[0], sc[0]
        if self.lt(t0, s0):
            return True
        if t0 is s0 and len(sc) > 1:
            return self.le(raw_sum(tc[1:]), raw_sum(sc[1:]))
        return False

    def sort_key(self):
        return cmp_to_key(self.cmp)

    # -- norm
    def term_norm(self, t: Term) -> int:
        hit = self._norm.get(t)
        if hit is None:
            hit = term_norm(t, self)
            self._norm[t] = hit
        return hit


def constants(t: Term) -> Iterator:
    k = t.kind
    if k == "const":
        yield t.a
    elif k == "phi":
        yield from constants(t.b)
    elif k == "sum":
        for u in t.a:
            yield from constants(u)


# --------------------------------------------------- Sub, S and the norm

def sub_multiset(t: Term) -> Counter:
    out: Counter = Counter()
    _sub(t, out)
    return out


def _sub(t: Term, out: Counter):
    k = t.kind
    if k == "zero":
        out[TZERO] += 1
    elif k == "const":
        out[t] += 1
        out[elem(t.a)] += 1
    elif k == "phi":
        out[t] += 1
        _sub(t.b, out)
    elif k == "sum":
        out[t] += 1
        for u in t.a:
            _sub(u, out)
    else:
        raise ContextError("X-elements have no subterms")


def zeta_candidates(t: Term, ctx: TermContext) -> set:
    k = t.kind
    if k == "zero":
        return {ZERO}
    if k == "const":
        return {ZERO, ONE, ctx.omega_alpha}
    if k == "phi":
        w = omega_pow(t.a)
        if t.b.kind == "zero":
            return {ZERO, ONE, w}
        return {ZERO, ONE} | {add(w, x) for x in zeta_candidates(t.b, ctx) if x is not ZERO}
    out = {ZERO, ONE}
    for u in t.a:
        out |= zeta_candidates(u, ctx)
    return out


def subscripts(t: Term) -> set:
    k = t.kind
    if k == "phi":
        return {t.a} | subscripts(t.b)
    if k == "sum":
        out = set()
        for u in t.a:
            out |= subscripts(u)
        return out
    return set()


def term_norm(t: Term, ctx: TermContext) -> int:
    """1 + max of |Sub(t)|, norms of subscripts in t and alpha, norms of S(t)."""
    nc = ctx.normctx
    m = sum(sub_multiset(t).values())
    for d in subscripts(t) | {ctx.alpha}:
        m = max(m, norm(d, nc))
    for z in zeta_candidates(t, ctx):
        m = max(m, norm(z, nc))
    return 1 + m


def depth(t: Term) -> int:
    k = t.kind
    if k == "phi":
        return 1 + depth(t.b)
    if k == "sum":
        return 1 + max(depth(u) for u in t.a)
    return 0


# ------------------------------------------------------------------ text

def show(t: Term, order: Optional[LinearOrder] = None) -> str:
    f = order.fmt if order else str
    k = t.kind
    if k == "zero":
        return "0"
    if k == "const":
        return f"c({f(t.a)})"
    if k == "elem":
        return f"x({f(t.a)})"
    if k == "phi":
        return f"phi[{fmt(t.a)}]({show(t.b, order)})"
    return " + ".join(show(u, order) for u in t.a)


class TermSyntaxError(ValueError):
    pass


def parse_term(text: str, ctx: TermContext) -> Term:
    """Grammar: 0 | c(x) | phi[d](t) | t + t | (t).  Result is normalized."""
    pos = 0
    s = text

    def ws():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def closing(open_ch, close_ch, start):
        depth_ = 0
        for j in range(start, len(s)):
            if s[j] == open_ch:
                depth_ += 1
            elif s[j] == close_ch:
                if depth_ == 0:
                    return j
                depth_ -= 1
        raise TermSyntaxError(f"unbalanced {open_ch!r} at position {start}")

    def atom():
        nonlocal pos
        ws()
        if s.startswith("0", pos) and not s[pos + 1:pos + 2].isdigit():
            pos += 1
            return TZERO
        if s.startswith("c(", pos):
            j = closing("(", ")", pos + 2)
            x = ctx.order.parse(s[pos + 2:j])
            pos = j + 1
            return const(x)
        if s.startswith("phi[", pos):
            j = closing("[", "]", pos + 4)
            d = parse(s[pos + 4:j])
            pos = j + 1
            ws()
            if not s.startswith("(", pos):
                raise TermSyntaxError(f"expected '(' at position {pos}")
            k = closing("(", ")", pos + 1)
            inner = parse_term(s[pos + 1:k], ctx)
            pos = k + 1
            return ctx.phi(d, inner)
        if s.startswith("(", pos):
            k = closing("(", ")", pos + 1)
            inner = parse_term(s[pos + 1:k], ctx)
            pos = k + 1
            return inner
        raise TermSyntaxError(f"unexpected input at position {pos}")

    parts = [atom()]
    ws()
    while pos < len(s) and s[pos] == "+":
        pos += 1
        parts.append(atom())
        ws()
    if pos != len(s):
        raise TermSyntaxError(f"trailing input at position {pos}")
    return ctx.add(*parts)


# ------------------------------------------------------------- corpora

def generate_terms(ctx: TermContext, xs: Iterable, max_depth: int,
                   deltas: Optional[Iterable[Ordinal]] = None,
                   max_sum: int = 2) -> list:
    """All normal-form terms of depth <= max_depth.

    Sums at each level combine at most max_sum summands from the level
    below; subscripts default to every natural below alpha when alpha is
    finite.
    """
    if deltas is None:
        if ctx.alpha.terms:
            raise ValueError("pass explicit subscripts for infinite alpha")
        deltas = [Ordinal((), k) for k in range(ctx.alpha.nat)]
    deltas = list(deltas)
    level = {TZERO} | {const(x) for x in xs}
    for _ in range(max_depth):
        cur = list(level)
        new = set(level)
        for t in cur:
            for d in deltas:
                new.add(ctx.phi(d, t))
        nz = [t for t in cur if t.kind != "zero"]

        def grow(acc, start, k):
            for j in range(start, len(nz)):
                u = ctx.add(acc, nz[j])
                new.add(u)
                if k > 1:
                    grow(u, j, k - 1)

        for i, t in enumerate(nz):
            grow(t, 0, max_sum - 1)
        level = new
    return sorted(level, key=lambda t: (depth(t), show(t, ctx.order)))

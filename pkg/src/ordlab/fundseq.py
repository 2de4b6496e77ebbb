"""Fundamental sequences, base-n descent and the norm."""

from __future__ import annotations

import os
import sys
import threading
from dataclasses import dataclass, field
from functools import cmp_to_key, lru_cache
from typing import Iterable, Optional, Union

import numpy as np

from .ordinals import (
    EPSILON0, GAMMA0, ONE, ZERO, Gamma0, Ordinal, add, compare, omega_times,
    veblen,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_FUEL = 10**6
FUEL_ENV = "ORDLAB_FUEL"


class FuelExhausted(RuntimeError):
    """A fueled computation ran out of budget."""


def default_fuel() -> int:
    raw = os.environ.get(FUEL_ENV)
    if raw:
        try:
            v = int(raw)
        except ValueError:
            raise ValueError(f"{FUEL_ENV} must be a positive integer") from None
        if v > 0:
            return v
    return DEFAULT_FUEL


Start = Union[Ordinal, Gamma0]


# ------------------------------------------------------------------- fund

def fund(a: Start, n: int) -> Ordinal:
    """a[n] under the fixed system of fundamental sequences (1[n] = 0)."""
    if a is GAMMA0:
        x = ZERO
        for _ in range(n + 1):
            x = veblen(x, ZERO)
        return x
    if a.nat:
        return Ordinal(a.terms, a.nat - 1)
    if not a.terms:
        return ZERO
    *init, (d, b, m) = a.terms
    if m > 1:
        init.append((d, b, m - 1))
    return add(Ordinal(tuple(init), 0), _fund_phi(d, b, n))


@lru_cache(maxsize=1 << 18)
def _fund_phi(d: Ordinal, b: Ordinal, n: int) -> Ordinal:
    if d is ZERO:
        return omega_times(fund(b, n), n)
    dn = fund(d, n)
    x = ZERO if b is ZERO else add(veblen(d, fund(b, n)), ONE)
    for _ in range(n + 1):
        x = veblen(dn, x)
    return x


def fund_set(a: Ordinal, s: Iterable[int]) -> Ordinal:
    for x in s:
        if a is ZERO:
            break
        a = fund(a, x)
    return a


# ---------------------------------------------------------------- descent

@dataclass(frozen=True)
class Reach:
    kind: str  # "Yes" | "No" | "OutOfFuel"
    steps: int = 0

    def __bool__(self):
        return self.kind == "Yes"


@dataclass
class NormContext:
    ceiling: Start = EPSILON0
    fuel: int = field(default_factory=default_fuel)
    memo: dict = field(default_factory=dict, repr=False)
    _first: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if self.fuel <= 0:
            raise ValueError("fuel must be positive")


def reaches(start: Start, n: int, target: Ordinal, ctx: NormContext) -> Reach:
    """Literal base-n descent from start; stops at the first value <= target."""
    if n < 2:
        raise ValueError("base must be at least 2")
    x = start
    steps = 0
    while True:
        if x is not GAMMA0 and compare(x, target) <= 0:
            return Reach("Yes", steps) if x is target else Reach("No")
        if steps >= ctx.fuel:
            return Reach("OutOfFuel")
        x = fund(x, n)
        steps += 1


def descent_path(start: Start, n: int, fuel: int) -> list:
    out = [start]
    x = start
    while x is GAMMA0 or x is not ZERO:
        if len(out) > fuel:
            raise FuelExhausted(f"descent longer than {fuel}")
        x = fund(x, n)
        out.append(x)
    return out


class _Work:
    __slots__ = ("left",)

    def __init__(self, fuel):
        self.left = fuel

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise FuelExhausted("norm descent out of fuel")


def first_at_or_below(start: Start, target: Ordinal, n: int,
                      ctx: Optional[NormContext] = None) -> Ordinal:
    """First value <= target on the base-n descent path from start.

    Computed by splitting the path along Cantor components instead of
    stepping, so that paths of astronomic length are handled directly.
    """
    ctx = ctx or NormContext()
    return _first(start, target, n, _Work(ctx.fuel), ctx._first)


def _first(a, b, n, w, memo):
    key = (a, b, n)
    hit = memo.get(key)
    if hit is not None:
        return hit
    w.tick()
    if a is GAMMA0:
        out = _first(fund(a, n), b, n, w, memo)
    elif compare(a, b) <= 0:
        out = a
    else:
        out = _first_split(a, b, n, w, memo)
    memo[key] = out
    return out


def _first_split(a, b, n, w, memo):
    ta, tb = a.terms, b.terms
    i = 0
    while i < len(ta) and i < len(tb) and ta[i] == tb[i]:
        i += 1
    if i == len(ta):
        # remaining parts are naturals and the tail of a counts down to b
        return b
    d, bb, ma = ta[i]
    if i < len(tb) and tb[i][0] is d and tb[i][1] is bb:
        mb = tb[i][2]
        prefix = ta[:i] + ((d, bb, mb),)
        rest = Ordinal(tb[i + 1:], b.nat)
    else:
        prefix = ta[:i]
        rest = Ordinal(tb[i:], b.nat)
    return add(Ordinal(prefix, 0), _first_comp(d, bb, rest, n, w, memo))


def _first_comp(d, bb, r, n, w, memo):
    """First value <= r on the path from phi_d(bb), given r < phi_d(bb)."""
    if r is ZERO:
        return ZERO
    if d is ZERO:
        if r.terms:
            rd, rb, m = r.terms[0]
            x = rb if rd is ZERO else Ordinal(((rd, rb, 1),), 0)
        else:
            x, m = ZERO, r.nat
        x0 = _first(bb, x, n, w, memo)
        if x0 is not x:
            return omega_times(x0, n)
        if m >= n:
            return omega_times(x, n)
        head = omega_times(x, m)
        if x is ZERO:
            return head
        rest = Ordinal(r.terms[1:], r.nat)
        ox = veblen(ZERO, x).terms[0]
        return add(head, _first_comp(ox[0], ox[1], rest, n, w, memo))
    return _first(_fund_phi(d, bb, n), r, n, w, memo)


# ------------------------------------------------------------------- norm

def raw_norm(a: Ordinal, ctx: NormContext) -> int:
    """Least n >= 2 whose descent from the ceiling visits a."""
    if ctx.ceiling is not GAMMA0 and compare(a, ctx.ceiling) >= 0:
        if a is ctx.ceiling:
            return 2
        raise ValueError("ordinal is not below the norm ceiling")
    w = _Work(ctx.fuel)
    n = 2
    while True:
        if _first(ctx.ceiling, a, n, w, ctx._first) is a:
            return n
        n += 1


def norm(a: Ordinal, ctx: Optional[NormContext] = None) -> int:
    """Working norm, adjusted so that |b| < |b+1| along successor chains."""
    ctx = ctx or _default_ctx()
    hit = ctx.memo.get(a)
    if hit is not None:
        return hit
    base = Ordinal(a.terms, 0)
    k0 = 0
    # resume from the largest memoized point on this chain
    for k in range(a.nat - 1, -1, -1):
        if Ordinal(a.terms, k) in ctx.memo:
            k0 = k
            break
        if a.nat - k > 64:
            break
    cur = ctx.memo.get(Ordinal(a.terms, k0))
    if cur is None:
        cur = raw_norm(base, ctx) if k0 == 0 else None
        with ctx._lock:
            ctx.memo[base] = cur
        k0 = 0
    for k in range(k0 + 1, a.nat + 1):
        x = Ordinal(a.terms, k)
        cur = max(raw_norm(x, ctx), cur + 1)
        with ctx._lock:
            ctx.memo[x] = cur
    return cur


_DEFAULT = None


def _default_ctx() -> NormContext:
    # rebuilt when the fuel setting changes, so the env var is honored late
    global _DEFAULT
    fuel = default_fuel()
    if _DEFAULT is None or _DEFAULT.fuel != fuel:
        _DEFAULT = NormContext(fuel=fuel)
    return _DEFAULT


# ------------------------------------------------------------ nestedness

def _ranks(values: list) -> tuple:
    uniq = list({id(v): v for v in values}.values())
    uniq.sort(key=cmp_to_key(compare))
    return {id(v): i for i, v in enumerate(uniq)}, uniq


def nestedness_check(sample: Iterable[Ordinal], nmax: int) -> list:
    """All (g, b, n) with g < b, 1 < n <= nmax and g > b[n] > g[n]."""
    sample = list({id(s): s for s in sample}.values())
    out = []
    for n in range(2, nmax + 1):
        fn = [fund(s, n) for s in sample]
        rank, _ = _ranks(sample + fn)
        R = np.array([rank[id(s)] for s in sample])
        F = np.array([rank[id(f)] for f in fn])
        # rows g, columns b
        lt = R[:, None] < R[None, :]
        bad = lt & (R[:, None] > F[None, :]) & (F[None, :] > F[:, None])
        for gi, bi in zip(*np.nonzero(bad)):
            out.append((sample[gi], sample[bi], n))
    return out


def sort_ordinals(values: Iterable[Ordinal]) -> list:
    return sorted(values, key=cmp_to_key(compare))

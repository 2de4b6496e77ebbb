"""alpha-largeness of finite sets, the uplus shape and scattering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .fundseq import FuelExhausted, default_fuel, fund, fund_set
from .ordinals import ZERO, Ordinal

FinSet = tuple  # strictly increasing tuple of naturals


def finset(xs: Iterable[int]) -> FinSet:
    s = tuple(int(x) for x in xs)
    for a, b in zip(s, s[1:]):
        if a >= b:
            raise ValueError(f"not strictly increasing: {s}")
    if s and s[0] < 0:
        raise ValueError("negative element")
    return s


def is_large(a: Ordinal, s: Sequence[int]) -> bool:
    return fund_set(a, s) is ZERO


def is_small(a: Ordinal, s: Sequence[int]) -> bool:
    return not is_large(a, s)


def is_exact(a: Ordinal, s: Sequence[int]) -> bool:
    """s is a-large while s minus its maximum is a-small (the empty set is 0-size)."""
    if not s:
        return a is ZERO
    r = fund_set(a, s[:-1])
    return r is not ZERO and fund(r, s[-1]) is ZERO


def size_prefix(a: Ordinal, s: Sequence[int]) -> Optional[FinSet]:
    """The unique a-size initial segment of s, if s is a-large."""
    r = a
    for i, x in enumerate(s):
        if r is ZERO:
            return tuple(s[:i])
        r = fund(r, x)
    return tuple(s) if r is ZERO else None


# ---------------------------------------------------------------- streams

class StreamEnd(FuelExhausted):
    """A finite source ran dry."""


class NumStream:
    """Pull-based strictly increasing stream with a bound on total pulls."""

    def __init__(self, source: Iterable[int], fuel: Optional[int] = None):
        self._it = iter(source)
        self.fuel = default_fuel() if fuel is None else fuel
        self.pulled = 0
        self._last = None

    @classmethod
    def arith(cls, start: int = 1, step: int = 1, fuel: Optional[int] = None):
        def gen():
            x = start
            while True:
                yield x
                x += step
        return cls(gen(), fuel)

    @classmethod
    def of(cls, xs: Sequence[int]):
        return cls(list(xs), fuel=len(xs) + 1)

    def pull(self) -> int:
        if self.pulled >= self.fuel:
            raise FuelExhausted(f"stream fuel {self.fuel} exhausted")
        try:
            x = next(self._it)
        except StopIteration:
            raise StreamEnd("stream exhausted") from None
        if self._last is not None and x <= self._last:
            raise ValueError("stream is not strictly increasing")
        self._last = x
        self.pulled += 1
        return x

    def __iter__(self) -> Iterator[int]:
        while True:
            try:
                yield self.pull()
            except StreamEnd:
                return

    def take(self, k: int) -> list:
        return [self.pull() for _ in range(k)]

    def drop_first(self) -> "NumStream":
        self.pull()
        return self


def min_exact_prefix(a: Ordinal, xs: NumStream) -> FinSet:
    out = []
    r = a
    while r is not ZERO:
        x = xs.pull()
        out.append(x)
        r = fund(r, x)
    return tuple(out)


# ------------------------------------------------------------ enumeration

def enumerate_exact(a: Ordinal, ground: Sequence[int],
                    limit: Optional[int] = None) -> list:
    """All a-size subsets of ground, ordered by their binary code."""
    out = []
    g = list(ground)

    def dfs(start, r, acc):
        for j in range(start, len(g)):
            x = g[j]
            r2 = fund(r, x)
            acc.append(x)
            if r2 is ZERO:
                out.append(tuple(acc))
                if limit is not None and len(out) > limit:
                    raise FuelExhausted("enumeration limit exceeded")
            else:
                dfs(j + 1, r2, acc)
            acc.pop()

    if a is ZERO:
        return [()]
    dfs(0, a, [])
    out.sort(key=set_code)
    return out


def iter_exact_ending(a: Ordinal, ground: Sequence[int], last: int) -> Iterator[FinSet]:
    """a-size subsets of ground + (last,) whose maximum is last (DFS order)."""
    g = [x for x in ground if x < last]

    def dfs(start, r, acc):
        r_last = fund(r, last)
        if r_last is ZERO:
            yield tuple(acc) + (last,)
        for j in range(start, len(g)):
            r2 = fund(r, g[j])
            if r2 is ZERO:
                continue
            acc.append(g[j])
            yield from dfs(j + 1, r2, acc)
            acc.pop()

    if a is ZERO:
        return iter(())
    return dfs(0, a, [])


def set_code(s: Sequence[int]) -> int:
    return sum(1 << x for x in s)


# ------------------------------------------------------------------ uplus

@dataclass(frozen=True)
class UplusSplit:
    s_b: FinSet
    s_a: FinSet
    exact: bool  # s_a is a-size, not merely a-large


def uplus_decompose(a: Ordinal, b: Ordinal, s: Sequence[int]) -> Optional[UplusSplit]:
    """Split s = s_b ^ s_a with s_b b-size and s_a a-large."""
    s = tuple(s)
    s_b = size_prefix(b, s)
    if s_b is None:
        return None
    s_a = s[len(s_b):]
    if not is_large(a, s_a):
        return None
    return UplusSplit(s_b, s_a, is_exact(a, s_a))


def is_uplus_exact(a: Ordinal, b: Ordinal, s: Sequence[int]) -> bool:
    sp = uplus_decompose(a, b, s)
    return sp is not None and sp.exact


# ------------------------------------------------------------- scattering

def _scatter_gen(a: Ordinal, xs: NumStream) -> Iterator[int]:
    try:
        yield xs.pull()
        while True:
            xs.take(3)
            r = a
            while r is not ZERO:
                r = fund(r, xs.pull())
            yield xs.pull()
    except StreamEnd:
        return


def scatter(a: Ordinal, xs: NumStream) -> NumStream:
    """S(a, X): emit, then skip three elements and one a-size block, repeat."""
    return NumStream(_scatter_gen(a, xs), fuel=xs.fuel)


def scatter_n(k: int, a: Ordinal, xs: NumStream) -> NumStream:
    for _ in range(k):
        xs = scatter(a, xs)
    return xs


def scatter_list(k: int, a: Ordinal, xs: Sequence[int]) -> list:
    """S^k(a, xs) for a finite window; only fully determined outputs."""
    return list(scatter_n(k, a, NumStream.of(xs)))


Coloring = Callable[[FinSet], int]

"""Homogeneous-set builders for colorings of alpha-size sets on finite windows.

The constructions follow the staged scheme: pick h_i, solve the induced
coloring f_{h_i} on a smaller shape inside the current window, shrink the
window to that solution, and finally pigeonhole the stage colors on
Z = {h_i}.  Every sub-problem is solved exactly on its window, so a
returned set is homogeneous on that window, not merely likely to be.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .fundseq import FuelExhausted, NormContext, fund, norm
from .largeness import size_prefix
from .ordinals import (
    ONE, ZERO, Ordinal, compare, fmt, is_indecomposable, lead, nat,
    omega_pow, parse,
)

# ------------------------------------------------------------------- shapes


@dataclass(frozen=True)
class Shape:
    """alpha-size sets, or (1 uplus alpha)-size sets: an alpha-size block plus one element."""
    alpha: Ordinal
    uplus: bool = False

    def __post_init__(self):
        if self.uplus and not self.alpha.terms:
            # a finite block followed by one element is just a longer finite set
            object.__setattr__(self, "alpha", nat(self.alpha.nat + 1))
            object.__setattr__(self, "uplus", False)

    def __str__(self):
        return f"1+({fmt(self.alpha)})" if self.uplus else fmt(self.alpha)

    def prefix(self, s: Sequence[int]) -> Optional[tuple]:
        """The unique shape-size initial segment of s, if any."""
        p = size_prefix(self.alpha, s)
        if p is None or not self.uplus:
            return p
        return tuple(s[:len(p) + 1]) if len(s) > len(p) else None

    def is_size(self, s: Sequence[int]) -> bool:
        s = tuple(s)
        return self.prefix(s) == s and (bool(s) or self.alpha is ZERO)

    @property
    def finite(self) -> bool:
        return not self.alpha.terms

    @property
    def decomposable(self) -> bool:
        return bool(self.alpha.terms) and not is_indecomposable(self.alpha)

    def stage(self, h: int) -> "Shape":
        """Shape of t in <h>^t for the indecomposable and finite cases."""
        return Shape(fund(self.alpha, h), self.uplus)


def shape_sets(shape: Shape, window: Sequence[int]) -> Iterator[tuple]:
    """Shape-size subsets of window, depth first."""
    g = list(window)
    a = shape.alpha

    def dfs(start, r, acc):
        if r is ZERO:
            if not shape.uplus:
                yield tuple(acc)
            else:
                for j in range(start, len(g)):
                    yield tuple(acc) + (g[j],)
            return
        for j in range(start, len(g)):
            acc.append(g[j])
            yield from dfs(j + 1, fund(r, g[j]), acc)
            acc.pop()

    return dfs(0, a, [])


def colex_key(s: Sequence[int]) -> tuple:
    return tuple(reversed(s))


# ---------------------------------------------------------------- colorings


@dataclass(frozen=True)
class ColoringHandle:
    k: int
    fn: Callable[[tuple], int] = field(compare=False)
    shape: Shape
    name: str = "custom"
    min_ground: int = 0

    def __call__(self, s: Sequence[int]) -> int:
        s = tuple(s)
        if s and s[0] < self.min_ground:
            raise NormGuardError(f"{s} starts below the ground bound {self.min_ground}")
        c = self.fn(s)
        if not 0 <= c < self.k:
            raise ValueError(f"color {c} outside palette of size {self.k}")
        return c


class NormGuardError(ValueError):
    pass


def _min_parity(s, k):
    return s[0] % k if s else 0


def _sum_parity(s, k):
    return sum(s) % k


def _gap(s, k):
    return 1 if len(s) >= 2 and s[1] - s[0] >= 2 else 0


def _const(s, k):
    return 0


def _mixer(seed):
    def f(s, k):
        return random.Random(hash((seed,) + tuple(s))).randrange(k)
    return f


NAMED = {"min-parity": _min_parity, "sum-parity": _sum_parity, "gap": _gap, "const": _const}


def named_coloring(name: str, shape: Shape, k: int = 2) -> ColoringHandle:
    if name.startswith("mix"):
        _, _, seed = name.partition(":")
        fn = _mixer(int(seed or 0))
    elif name in NAMED:
        fn = NAMED[name]
    else:
        raise KeyError(f"unknown coloring {name!r}; known: {sorted(NAMED)} or mix:SEED")
    kk = 2 if name == "gap" else k
    return ColoringHandle(kk, lambda s, _f=fn, _k=kk: _f(s, _k), shape, name)


# -------------------------------------------------------------------- state


class BudgetExhausted(FuelExhausted):
    def __init__(self, path, evals):
        super().__init__(f"stage search budget exhausted at stage path {list(path)} after {evals} evaluations")
        self.path = tuple(path)
        self.evals = evals


@dataclass
class Stage:
    index: int
    h: object               # an element, or a set in the decomposable case
    color: Optional[int]     # None: no sub-shape-size set left to color
    window_after: int
    sub_shape: str
    method: str


@dataclass
class BuilderState:
    shape: Shape
    window: tuple
    stages: list
    Z: tuple
    f: dict
    H: tuple
    color: Optional[int]
    requirements: dict
    evals: int
    coverage: Optional[dict] = None
    verification: Optional["Verification"] = None
    target_len: int = 0
    status: str = "ok"

    def report(self) -> dict:
        return {
            "shape": str(self.shape),
            "window": [min(self.window), max(self.window), len(self.window)] if self.window else [],
            "stages": [{"i": st.index, "h": st.h if isinstance(st.h, int) else list(st.h),
                        "color": st.color, "window_after": st.window_after,
                        "sub_shape": st.sub_shape, "method": st.method} for st in self.stages],
            "Z": list(self.Z),
            "H": list(self.H),
            "color": self.color,
            "requirements": self.requirements,
            "coverage": self.coverage,
            "verification": None if self.verification is None else self.verification.as_dict(),
            "evals": self.evals,
            "target_len": self.target_len,
            "status": self.status,
        }


class _Budget:
    """Counts evaluations of the top coloring; `path` tracks the current stage."""

    def __init__(self, limit):
        self.limit = limit
        self.used = 0
        self.path = ()

    def wrap(self, f):
        def g(t):
            self.used += 1
            if self.limit is not None and self.used > self.limit:
                raise BudgetExhausted(self.path, self.used)
            return f(t)
        return g


CONST_PROBE = 256


def _constant_on(f, shape, window) -> tuple:
    """(complete, color) from a bounded scan; color None if no sets or mixed."""
    seen = None
    for k, s in enumerate(shape_sets(shape, window)):
        if k >= CONST_PROBE:
            return False, None
        c = f(s)
        if seen is None:
            seen = c
        elif c != seen:
            return True, None
    return True, seen


def _pigeonhole(colors: list) -> Optional[int]:
    cnt = Counter(c for c in colors if c is not None)
    if not cnt:
        return None
    best = max(cnt.values())
    return min(c for c, v in cnt.items() if v == best)


def _homog(f, shape: Shape, window: tuple, budget: _Budget, path: tuple,
           log: Optional[list] = None) -> tuple:
    """(H, color) with H a subset of window homogeneous for f on shape-size sets."""
    if shape.alpha is ZERO and not shape.uplus:
        return window, f(())
    if not window or shape.prefix(window) is None:
        return window, None
    done, col = _constant_on(f, shape, window)
    if done and col is not None:
        if log is not None:
            log.append(("constant", path))
        return window, col
    if shape.decomposable:
        st = _decomposable(f, shape, window, budget, path)
        return st["H"], st["color"]
    return _stages_run(f, shape, window, budget, path, None)


def _stages_run(f, shape, window, budget, path, stages_out):
    cur = window
    Z, cols = [], []
    i = 0
    while cur:
        h, rest = cur[0], cur[1:]
        sub = shape.stage(h)
        fh = lambda t, _h=h: f((_h,) + t)  # noqa: E731
        budget.path = path + (i,)
        Hi, col = _homog(fh, sub, rest, budget, path + (i,))
        if stages_out is not None:
            stages_out.append(Stage(i, h, col, len(Hi), str(sub),
                                    "exhaustive" if sub.finite else "recursive"))
        Z.append(h)
        cols.append(col)
        cur = Hi
        i += 1
    c = _pigeonhole(cols)
    H = tuple(h for h, col in zip(Z, cols) if col is None or col == c)
    return H, c


# ------------------------------------------------------------ the builders


def _requirements_stages(stages, window) -> dict:
    hs = [st.h for st in stages]
    return {
        "h_increasing": all(a < b for a, b in zip(hs, hs[1:])),
        "windows_nest": all(a.window_after >= b.window_after for a, b in zip(stages, stages[1:])),
        "h_below_window": all(h in window for h in hs),
    }


def solve_indecomposable(c: ColoringHandle, window: Sequence[int], budget: Optional[int] = None,
                         target_len: int = 0) -> BuilderState:
    """Stage construction for finite or indecomposable alpha, plain or uplus shape."""
    shape = c.shape
    if shape.decomposable:
        raise ValueError(f"{fmt(shape.alpha)} is decomposable; use solve_decomposable")
    window = tuple(sorted(set(window)))
    b = _Budget(budget)
    f = b.wrap(c)
    stages: list = []
    if c.k == 1 or shape.prefix(window) is None:
        H, col = window, (0 if c.k == 1 else None)
        method = "trivial"
    else:
        done, col = _constant_on(f, shape, window)
        if done and col is not None:
            H, method = window, "constant"
        else:
            H, col = _stages_run(f, shape, window, b, (), stages)
            method = "stages"
    req = _requirements_stages(stages, window)
    req["method"] = method
    st = BuilderState(shape, window, stages, tuple(s.h for s in stages),
                      {s.h: s.color for s in stages}, H, col, req, b.used,
                      target_len=target_len)
    return _finish(st, c)


def solve_uplus(c: ColoringHandle, window: Sequence[int], budget: Optional[int] = None,
                target_len: int = 0) -> BuilderState:
    if not c.shape.uplus:
        raise ValueError("solve_uplus needs a (1 uplus alpha) shape")
    return solve_indecomposable(c, window, budget, target_len)


def _split_lead(alpha: Ordinal) -> tuple:
    ld = lead(alpha)
    d, b, m = alpha.terms[0]
    tail = ((d, b, m - 1),) + alpha.terms[1:] if m > 1 else alpha.terms[1:]
    return ld, Ordinal(tail, alpha.nat)


def _decomposable(f, shape, window, budget, path, detail=False):
    ld, ap = _split_lead(shape.alpha)
    first = Shape(ap, uplus=True)
    cands = sorted(shape_sets(first, window), key=colex_key)
    chosen_set = set()
    used: set = set()
    cur = window
    stages, hs, cols = [], [], []
    i = 0
    while True:
        pool = used | set(cur)
        h = next((u for u in cands if u not in chosen_set and set(u) <= pool), None)
        if h is None:
            break
        rest = tuple(x for x in cur if x > h[-1])
        sub = Shape(fund(ld, h[-1]), shape.uplus)
        fh = lambda t, _h=h: f(_h + t)  # noqa: E731
        budget.path = path + (i,)
        Hi, col = _homog(fh, sub, rest, budget, path + (i,))
        stages.append(Stage(i, h, col, len(Hi), str(sub), "recursive"))
        chosen_set.add(h)
        hs.append(h)
        cols.append(col)
        used |= set(h)
        cur = Hi
        i += 1
    Z = tuple(sorted(used))
    fmap = dict(zip(hs, cols))
    # largest prefix of Z on which every (1 uplus a')-size set was some h_i
    cov_len, uncovered = 0, []
    for n in range(1, len(Z) + 1):
        miss = [u for u in shape_sets(first, Z[:n]) if u[-1] == Z[n - 1] and u not in fmap]
        if miss:
            uncovered = miss[:5]
            break
        cov_len = n
    Zc = Z[:cov_len]
    g = lambda u: fmap[tuple(u)]  # noqa: E731
    budget.path = path + ("Z",)
    H, col = _homog(g, first, Zc, budget, path + ("Z",))
    # a set with no lead-part inside H_i received color None: any color works
    out = {"H": H, "color": col, "stages": stages, "Z": Z, "f": fmap,
           "coverage": {"covered_prefix": cov_len, "Z": len(Z),
                        "first_uncovered": [list(u) for u in uncovered]}}
    return out


def solve_decomposable(c: ColoringHandle, window: Sequence[int], budget: Optional[int] = None,
                       target_len: int = 0) -> BuilderState:
    """Eligible-set scheduling for alpha = lead(alpha) + alpha'."""
    shape = c.shape
    if not shape.decomposable:
        raise ValueError(f"{fmt(shape.alpha)} is not decomposable")
    window = tuple(sorted(set(window)))
    b = _Budget(budget)
    f = b.wrap(c)
    out = _decomposable(f, shape, window, b, ())
    stages = out["stages"]
    hs = [s.h for s in stages]
    ld, ap = _split_lead(shape.alpha)
    first = Shape(ap, uplus=True)
    order = sorted(shape_sets(first, window), key=colex_key)
    pos = {u: k for k, u in enumerate(order)}
    used, req_sub, req_below = set(), True, True
    prev_window = set(window)
    for st in stages:
        req_sub &= set(st.h) <= used | prev_window
        used |= set(st.h)
    req = {
        "enumeration_order": all(pos[a] < pos[b2] for a, b2 in zip(hs, hs[1:])),
        "windows_nest": all(a.window_after >= b2.window_after for a, b2 in zip(stages, stages[1:])),
        "eligible": req_sub,
        "method": "eligible-sets",
    }
    col = out["color"]
    st = BuilderState(shape, window, stages, out["Z"], out["f"], out["H"], col, req, b.used,
                      coverage=out["coverage"], target_len=target_len)
    if out["coverage"]["covered_prefix"] < target_len:
        st.status = "starved"
    return _finish(st, c)


def solve(c: ColoringHandle, window: Sequence[int], budget: Optional[int] = None,
          target_len: int = 0) -> BuilderState:
    if c.shape.decomposable:
        return solve_decomposable(c, window, budget, target_len)
    return solve_indecomposable(c, window, budget, target_len)


def _finish(st: BuilderState, c: ColoringHandle) -> BuilderState:
    st.verification = verify(c, st.H)
    if not st.verification.ok:
        st.status = "unverified"
    elif st.status == "ok" and len(st.H) < st.target_len:
        st.status = "short"
    return st


# ---------------------------------------------------------------- verifier


@dataclass(frozen=True)
class Verification:
    tested: int
    exhaustive: bool
    colors: tuple
    witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return len(self.colors) <= 1

    def as_dict(self) -> dict:
        return {"tested": self.tested, "exhaustive": self.exhaustive, "colors": list(self.colors),
                "ok": self.ok, "witness": None if self.witness is None else [list(w) for w in self.witness]}


def _sized_subsets(alpha: Ordinal, uplus: bool, H: tuple) -> Iterator[tuple]:
    # written against the raw definition: walk fundamental sequences along
    # every increasing choice, independently of Shape.prefix
    n = len(H)

    def rec(i, r, acc):
        if r is ZERO:
            if uplus:
                for j in range(i, n):
                    yield acc + (H[j],)
            else:
                yield acc
            return
        for j in range(i, n):
            yield from rec(j + 1, fund(r, H[j]), acc + (H[j],))

    if alpha is ZERO and not uplus:
        yield ()
        return
    yield from rec(0, alpha, ())


def verify(c: ColoringHandle, H: Sequence[int], limit: int = 200_000, samples: int = 2000,
           seed: int = 0) -> Verification:
    """Check that all shape-size subsets of H get one color; sample past the limit."""
    H = tuple(sorted(H))
    first: dict = {}
    tested = 0
    for s in _sized_subsets(c.shape.alpha, c.shape.uplus, H):
        if tested >= limit:
            break
        tested += 1
        col = c(s)
        if col not in first:
            first[col] = s
            if len(first) > 1:
                a, b = list(first.values())[:2]
                return Verification(tested, False, tuple(sorted(first)), (a, b))
    else:
        return Verification(tested, True, tuple(sorted(first)))
    rng = random.Random(seed)
    for _ in range(samples):
        s = _random_sized(c.shape, H, rng)
        if s is None:
            continue
        tested += 1
        col = c(s)
        if col not in first:
            first[col] = s
            a, b = list(first.values())[:2]
            return Verification(tested, False, tuple(sorted(first)), (a, b))
    return Verification(tested, False, tuple(sorted(first)))


def _random_sized(shape: Shape, H: tuple, rng: random.Random) -> Optional[tuple]:
    acc, r, i = [], shape.alpha, 0
    while r is not ZERO:
        if i >= len(H):
            return None
        i = rng.randrange(i, min(len(H), i + 3))
        acc.append(H[i])
        r = fund(r, H[i])
        i += 1
    if shape.uplus:
        if i >= len(H):
            return None
        acc.append(H[rng.randrange(i, len(H))])
    return tuple(acc)


# --------------------------------------------------------------- reductions


@dataclass(frozen=True)
class Reduction:
    d: ColoringHandle
    transfer: Callable[[tuple], tuple]
    note: str


def reduce_dimension(c: ColoringHandle, a: Ordinal, ctx: Optional[NormContext] = None) -> Reduction:
    """From c on omega^b-size sets build d on omega^a-size sets (b < a).

    d(s) = c(t) for t the omega^b-size initial segment of s; the ground is
    cut above |omega^b| so that every omega^a-large set is omega^b-large.
    A homogeneous set for d is homogeneous for c as it stands.
    """
    if c.shape.uplus:
        raise ValueError("reduce_dimension works on plain shapes")
    big = omega_pow(a)
    small = c.shape.alpha
    if small is big:
        return Reduction(c, lambda H: tuple(H), "identity")
    if compare(small, big) > 0 or not (small is ONE or is_indecomposable(small)):
        raise ValueError("need c on omega^b-size sets with b < a")
    n = norm(small, ctx)
    inner = Shape(small)

    def d(s):
        t = inner.prefix(s)
        if t is None:
            raise ValueError(f"{s} is not {fmt(small)}-large")
        return c(t)

    handle = ColoringHandle(c.k, d, Shape(big), f"dim({c.name})", min_ground=max(c.min_ground, n + 1))
    return Reduction(handle, lambda H: tuple(H), f"ground above {n}")


def reduce_to_lead(c: ColoringHandle, alpha: Ordinal) -> Reduction:
    """From c on lead(alpha)-size sets build d on alpha-size sets.

    d(t) = c(s) with s the lead(alpha)-size initial segment of t; the
    solution transfer drops the alpha'-size initial segment of H.
    """
    ld, ap = _split_lead(alpha)
    if ap is ZERO:
        return Reduction(c, lambda H: tuple(H), "identity")
    if c.shape != Shape(ld):
        raise ValueError(f"c must color {fmt(ld)}-size sets")
    inner = Shape(ld)

    def d(t):
        s = inner.prefix(t)
        if s is None:
            raise ValueError(f"{t} is not {fmt(ld)}-large")
        return c(s)

    def transfer(H):
        H = tuple(sorted(H))
        h = size_prefix(ap, H)
        if h is None:
            return ()
        return H[len(h):]

    handle = ColoringHandle(c.k, d, Shape(alpha), f"lead({c.name})", c.min_ground)
    return Reduction(handle, transfer, f"drop the {fmt(ap)}-size prefix")


def verify_extendable(c: ColoringHandle, H: Sequence[int], outer: Shape) -> Verification:
    """Homogeneity of c on those c-size subsets of H that extend, inside H, to an outer-size set.

    On a finite window only such subsets are constrained by a solution of
    the reduced instance.
    """
    H = tuple(sorted(H))
    seen: dict = {}
    tested = 0
    for t in _sized_subsets(c.shape.alpha, c.shape.uplus, H):
        above = [x for x in H if x > t[-1]] if t else list(H)
        if outer.prefix(t + tuple(above)) is None:
            continue
        tested += 1
        col = c(t)
        seen.setdefault(col, t)
        if len(seen) > 1:
            a, b = list(seen.values())[:2]
            return Verification(tested, True, tuple(sorted(seen)), (a, b))
    return Verification(tested, True, tuple(sorted(seen)))


def parse_shape(alpha: str, kind: str = "plain") -> Shape:
    if kind not in ("plain", "uplus"):
        raise ValueError("shape must be plain or uplus")
    return Shape(parse(alpha), kind == "uplus")


__all__ = [n for n in dir() if not n.startswith("_")]

"""A toy oracle register machine and the jump-coding machinery built on it.

Programs are lists of INC r / DECJZ r,label / QUERY r / HALT.  The input
sits in register 1, the output is read from register 0.  A run is bounded
by m: it counts as halted only when it finishes in fewer than m steps and
every value it queried is below m.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Optional, Sequence, Union

from .fundseq import NormContext, fund, norm
from .largeness import is_exact, scatter_list, size_prefix
from .ordinals import (
    EPSILON0, ONE, ZERO, Ordinal, add, compare, fmt, nat, ord_code, ord_decode,
    pair, unpair,
)

# ------------------------------------------------------------------ programs


class Instr(NamedTuple):
    op: str          # INC | DECJZ | QUERY | HALT
    r: int = 0
    label: int = 0

    def __str__(self):
        if self.op == "HALT":
            return "HALT"
        if self.op == "DECJZ":
            return f"DECJZ r{self.r}, {self.label}"
        return f"{self.op} r{self.r}"


Program = tuple
HALT_PROGRAM: Program = (Instr("HALT"),)

# prefix-free opcodes; operands in unary ('1'*k + '0')
_OPBITS = {"DECJZ": "1", "INC": "01", "QUERY": "001", "HALT": "000"}


def _unary(k: int) -> str:
    return "1" * k + "0"


def encode(prog: Sequence[Instr]) -> int:
    bits = []
    for ins in prog:
        bits.append(_OPBITS[ins.op])
        if ins.op != "HALT":
            bits.append(_unary(ins.r))
        if ins.op == "DECJZ":
            bits.append(_unary(ins.label))
    return int("1" + "".join(bits), 2) - 1


def decode(e: int) -> Program:
    """Total decoding: anything that is not a complete code runs as HALT."""
    if e < 0:
        raise ValueError("program codes are non-negative")
    bits = bin(e + 1)[3:]
    i, n = 0, len(bits)
    out = []

    def unary():
        nonlocal i
        k = 0
        while i < n and bits[i] == "1":
            k += 1
            i += 1
        if i >= n:
            raise IndexError
        i += 1
        return k

    try:
        while i < n:
            if bits[i] == "1":
                i += 1
                r = unary()
                out.append(Instr("DECJZ", r, unary()))
            elif bits.startswith("01", i):
                i += 2
                out.append(Instr("INC", unary()))
            elif bits.startswith("001", i):
                i += 3
                out.append(Instr("QUERY", unary()))
            elif bits.startswith("000", i):
                i += 3
                out.append(Instr("HALT"))
            else:
                raise IndexError
    except IndexError:
        return HALT_PROGRAM
    return tuple(out)


def as_program(p: Union[int, Sequence[Instr]]) -> Program:
    return decode(p) if isinstance(p, int) else tuple(p)


class AsmError(ValueError):
    pass


_LINE = re.compile(r"^(INC|DECJZ|QUERY|HALT)\b\s*(.*)$", re.I)


def assemble(text: str) -> Program:
    """One instruction per line; `name:` defines a label; `#` starts a comment."""
    rows, labels = [], {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        while True:
            m = re.match(r"^([A-Za-z_]\w*)\s*:\s*(.*)$", line)
            if not m or m.group(1).upper() in _OPBITS:
                break
            labels[m.group(1)] = len(rows)
            line = m.group(2).strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise AsmError(f"cannot parse line: {raw!r}")
        rows.append((m.group(1).upper(), [a.strip() for a in m.group(2).split(",") if a.strip()], raw))

    def reg(tok, raw):
        mm = re.fullmatch(r"r?(\d+)", tok)
        if not mm:
            raise AsmError(f"bad register in {raw!r}")
        return int(mm.group(1))

    out = []
    for op, args, raw in rows:
        want = {"HALT": 0, "INC": 1, "QUERY": 1, "DECJZ": 2}[op]
        if len(args) != want:
            raise AsmError(f"{op} takes {want} operand(s): {raw!r}")
        if op == "HALT":
            out.append(Instr("HALT"))
        elif op == "DECJZ":
            tgt = args[1]
            if tgt in labels:
                lab = labels[tgt]
            elif tgt.isdigit():
                lab = int(tgt)
            else:
                raise AsmError(f"unknown label {tgt!r}")
            out.append(Instr("DECJZ", reg(args[0], raw), lab))
        else:
            out.append(Instr(op, reg(args[0], raw)))
    return tuple(out)


def disassemble(prog: Sequence[Instr]) -> str:
    return "\n".join(str(i) for i in prog)


def max_register(prog: Sequence[Instr]) -> int:
    return max([1] + [i.r for i in prog if i.op != "HALT"])


# ------------------------------------------------------------------ oracles


class OracleCapError(LookupError):
    """A query reached the cap of a finite oracle table."""


@dataclass(frozen=True)
class FiniteOracle:
    members: frozenset
    cap: int

    @classmethod
    def from_pred(cls, pred: Callable[[int], bool], cap: int) -> "FiniteOracle":
        return cls(frozenset(v for v in range(cap) if pred(v)), cap)

    @classmethod
    def of(cls, members: Iterable[int], cap: int) -> "FiniteOracle":
        ms = frozenset(members)
        if ms and max(ms) >= cap:
            raise ValueError("member at or beyond the cap")
        return cls(ms, cap)

    def __call__(self, v: int) -> int:
        if v >= self.cap:
            raise OracleCapError(f"query {v} at or beyond cap {self.cap}")
        return 1 if v in self.members else 0


class ScriptedOracle:
    """Replays recorded answers in order; used to translate runs offline."""

    def __init__(self, answers: Sequence[int], expect: Optional[Sequence[int]] = None):
        self.answers = list(answers)
        self.expect = None if expect is None else list(expect)
        self.i = 0

    def __call__(self, v: int) -> int:
        if self.i >= len(self.answers):
            raise TranslationError("script ran out of answers")
        if self.expect is not None and self.expect[self.i] != v:
            raise TranslationError(f"query {v} differs from recorded {self.expect[self.i]}")
        a = self.answers[self.i]
        self.i += 1
        return a


EMPTY_ORACLE = FiniteOracle(frozenset(), 1 << 62)


# ---------------------------------------------------------------------- VM


class Step(NamedTuple):
    pc: int
    qv: Optional[int] = None
    ans: Optional[int] = None


@dataclass(frozen=True)
class BoundedRun:
    program: Program
    x: int
    m: int
    outcome: str                 # "Halted" | "Running"
    output: Optional[int] = None
    steps: int = 0
    max_query: int = 0
    trace: Optional[tuple] = field(default=None, compare=False, repr=False)

    @property
    def halted(self) -> bool:
        return self.outcome == "Halted"

    @property
    def e(self) -> int:
        return encode(self.program)

    @property
    def bound(self) -> Optional[int]:
        """Least m at which this run counts as halted."""
        return max(self.steps, self.max_query) + 1 if self.halted else None

    def summary(self) -> tuple:
        if self.halted:
            return ("Halted", self.output, self.steps, self.max_query)
        return ("Running",)


def run_bounded(e: Union[int, Sequence[Instr]], oracle: Callable[[int], int], x: int,
                m: int, *, trace: bool = False, preload: Optional[dict] = None) -> BoundedRun:
    """Run e on input x with the step and use bound m."""
    if m < 1:
        raise ValueError("bound must be at least 1")
    prog = as_program(e)
    regs = {1: x}
    if preload:
        regs.update(preload)
    get = regs.get
    n = len(prog)
    pc = steps = maxq = 0
    tr = [] if trace else None

    def stop(kind, out=None):
        return BoundedRun(prog, x, m, kind, out, steps if kind == "Halted" else 0,
                          maxq if kind == "Halted" else 0,
                          tuple(tr) if tr is not None else None)

    while True:
        if steps + 1 >= m:
            return stop("Running")
        steps += 1
        if pc >= n:
            if tr is not None:
                tr.append(Step(pc))
            return stop("Halted", get(0, 0))
        op, r, lab = prog[pc]
        if op == "HALT":
            if tr is not None:
                tr.append(Step(pc))
            return stop("Halted", get(0, 0))
        if op == "INC":
            regs[r] = get(r, 0) + 1
            step = Step(pc)
            pc += 1
        elif op == "DECJZ":
            v = get(r, 0)
            step = Step(pc)
            if v == 0:
                pc = lab
            else:
                regs[r] = v - 1
                pc += 1
        else:
            v = get(r, 0)
            if v >= m:
                return stop("Running")
            if v > maxq:
                maxq = v
            a = oracle(v)
            regs[r] = a
            step = Step(pc, v, a)
            pc += 1
        if tr is not None:
            tr.append(step)


def halting_bound(e, oracle, x: int, m: int) -> Optional[int]:
    """Least bound at which e halts on x, if it halts below m."""
    return run_bounded(e, oracle, x, m).bound


# ----------------------------------------------------------- pair coding

_NCTX = NormContext()


def pair_code(gamma: Ordinal, z: int, ctx: Optional[NormContext] = None) -> int:
    """<gamma, z>; the second slot is shifted by |gamma| so that |gamma| <= <gamma, z>."""
    return pair(ord_code(gamma), z + norm(gamma, ctx or _NCTX))


def decode_pair(y: int, ctx: Optional[NormContext] = None) -> Optional[tuple]:
    c, w = unpair(y)
    if c % 2:
        return None  # odd codes lie at or above the norm ceiling
    g = ord_decode(c)
    if g is None:
        return None
    z = w - norm(g, ctx or _NCTX)
    if z < 0:
        return None
    return g, z


def pair_tag(y: int) -> Optional[Ordinal]:
    d = decode_pair(y)
    return None if d is None else d[0]


def _pairs_below(gamma: Ordinal, cap: int) -> Iterable[tuple]:
    z = 0
    while True:
        y = pair_code(gamma, z)
        if y >= cap:
            return
        yield z, y
        z += 1


# -------------------------------------------------------------- jump table


def _pred(a: Ordinal) -> Ordinal:
    return Ordinal(a.terms, a.nat - 1)


@dataclass(frozen=True)
class JumpTable:
    a: Ordinal
    members: frozenset
    fuel: int
    cap: int

    def __contains__(self, y: int) -> bool:
        return y in self.members

    def pairs(self) -> list:
        return sorted((decode_pair(y) for y in self.members),
                      key=lambda p: (ord_code(p[0]), p[1]))

    def restrict(self, gamma: Ordinal) -> frozenset:
        """Y restricted to entries (delta, z) with delta <= gamma."""
        return frozenset(y for y in self.members if compare(pair_tag(y), gamma) <= 0)

    def as_oracle(self) -> FiniteOracle:
        return FiniteOracle(self.members, self.cap)


def tj_approx(window: Iterable[int], a: Ordinal, fuel: int, cap: Optional[int] = None) -> JumpTable:
    """Finite approximation of TJ(X, a) below a code cap.

    Every halting test is a bounded run at bound `fuel`; a limit stage is the
    union of the lower stages, which only matters through the successor
    ordinals whose codes fit under the cap.
    """
    cap = fuel if cap is None else cap
    if fuel > cap:
        raise ValueError("fuel may not exceed the code cap")
    if compare(a, EPSILON0) >= 0:
        raise ValueError("ordinal outside the working ceiling")
    members = {pair_code(ZERO, x) for x in window if pair_code(ZERO, x) < cap}
    succ = []
    for c in range(0, cap, 2):
        g = ord_decode(c)
        if g is not ZERO and g.nat and compare(g, a) <= 0 and pair_code(g, 0) < cap:
            succ.append(g)
    succ.sort(key=lambda g: _key(g))
    for g in succ:
        orc = FiniteOracle(frozenset(members), cap)
        new = [y for z, y in _pairs_below(g, cap) if run_bounded(z, orc, 0, fuel).halted]
        members.update(new)
    return JumpTable(a, frozenset(members), fuel, cap)


def _key(g):
    from functools import cmp_to_key
    return cmp_to_key(compare)(g)


# ---------------------------------------------------------- machine family


class MachineFamily:
    """The machines M_a(y, s), relativized to a finite window of A."""

    def __init__(self, A: FiniteOracle, ctx: Optional[NormContext] = None):
        self.A = A
        self.ctx = ctx or _NCTX
        self._memo: dict = {}

    def accepts(self, a: Ordinal, y: int, s: Sequence[int]) -> bool:
        s = tuple(s)
        if not s or y >= s[0] or not is_exact(a, s):
            return False  # inputs of a different type
        return y in self.accept_set(a, s)

    def accept_set(self, a: Ordinal, s: Sequence[int]) -> frozenset:
        """All y < min s accepted by M_a(., s); empty if s is not a-size."""
        s = tuple(s)
        key = (a, s)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._accept(a, s) if is_exact(a, s) else frozenset()
            self._memo[key] = hit
        return hit

    def _accept(self, a, s):
        if a is ZERO:
            return frozenset()
        x0, rest = s[0], s[1:]
        if a is ONE:
            return frozenset(y for z, y in _pairs_below(ZERO, x0) if self.A(z))
        if not a.nat:
            sub = self.accept_set(fund(a, x0), rest)
            return frozenset(y for y in sub if y < x0)
        b = _pred(a)
        Y = self.accept_set(b, rest)
        out = {y for y in Y if y < x0 and compare(pair_tag(y), b) <= 0}
        bound = rest[0]
        orc = FiniteOracle(Y, bound)
        for z, y in _pairs_below(a, x0):
            if run_bounded(z, orc, 0, bound).halted:
                out.add(y)
        return frozenset(out)


# -------------------------------------------------------------- colorings


class DecompositionError(ValueError):
    pass


def _split(a: Ordinal, tup: Sequence[int]):
    tup = tuple(tup)
    if len(tup) < 3 or not is_exact(a, tup[3:]):
        raise DecompositionError(
            f"{tup} is not <a0,a1,a2> followed by a {fmt(a)}-size set")
    return tup[0], tup[1], tup[2], tup[3:]


def jump_coloring(a: Ordinal, tup: Sequence[int], family: MachineFamily) -> int:
    """c_{a+3}: 1 iff no e, x < a0 halts at bound a2 but not at a1."""
    a0, a1, a2, s = _split(a, tup)
    Y = family.accept_set(a, s)
    orc = FiniteOracle(Y, s[0] if s else a2 + 1)
    return 0 if separating_pair(a0, a1, a2, orc) else 1


def separating_pair(a0: int, a1: int, a2: int, oracle) -> Optional[tuple]:
    # inputs at or above a2 behave alike under bounds <= a2
    for e in range(a0):
        for x in range(min(a0, a2 + 1)):
            h = halting_bound(e, oracle, x, a2)
            if h is not None and h > a1:
                return e, x
    return None


def coloring_for(gamma: Ordinal, family: MachineFamily) -> Callable[[tuple], int]:
    """c_gamma; constantly 1 unless gamma = a + 3."""
    if gamma.nat >= 3:
        a = Ordinal(gamma.terms, gamma.nat - 3)
        return lambda t: jump_coloring(a, t, family)
    return lambda t: 1


def halting_profile(es: Iterable[int], xs: Iterable[int], oracle, m: int) -> dict:
    """(e, x) -> least halting bound below m, for the runs that halt."""
    out = {}
    xs = list(xs)
    for e in es:
        for x in xs:
            h = halting_bound(e, oracle, x, m)
            if h is not None:
                out[(e, x)] = h
    return out


@dataclass(frozen=True)
class CountingWitness:
    index: int
    pair: tuple
    separated: tuple  # indices i whose pair (a_i, a_{i+1}) some (e, x) separates


def counting_check(a0: int, chain: Sequence[int], oracle=None, programs: Optional[Sequence[int]] = None,
                   halt_times: Optional[dict] = None) -> Optional[CountingWitness]:
    """Find a consecutive pair of the chain that no (e, x) with e, x < a0 separates.

    Each (e, x) has one halting bound, so it separates at most one pair;
    a chain a_0 < ... < a_{a0^2+2} has a0^2 + 1 pairs to choose from.
    `programs` maps indices e to concrete codes; `halt_times` overrides runs.
    """
    chain = list(chain)
    if len(chain) < a0 * a0 + 3:
        raise ValueError("chain shorter than a0^2 + 3")
    if any(p >= q for p, q in zip(chain, chain[1:])):
        raise ValueError("chain is not increasing")
    top = chain[-1]
    if halt_times is None:
        orc = oracle if oracle is not None else EMPTY_ORACLE
        prog = (lambda e: e) if programs is None else (lambda e: programs[e])
        halt_times = {}
        for e in range(a0):
            for x in range(a0):
                h = halting_bound(prog(e), orc, x, top)
                if h is not None:
                    halt_times[(e, x)] = h
    sep = set()
    for (e, x), h in halt_times.items():
        if e < a0 and x < a0 and h is not None:
            for i in range(1, len(chain) - 1):
                if chain[i] < h <= chain[i + 1]:
                    sep.add(i)
    for i in range(1, len(chain) - 1):
        if i not in sep:
            return CountingWitness(i, (chain[i], chain[i + 1]), tuple(sorted(sep)))
    return None


# ------------------------------------------------ filters and translations


class TranslationError(RuntimeError):
    pass


class FilterCapError(ValueError):
    pass


@dataclass(frozen=True)
class QuerySite:
    src_pc: int
    start: int
    pass_pc: int
    fail_pc: int


@dataclass(frozen=True)
class Filtered:
    """e' = f_b(e) together with the bookkeeping needed to translate runs."""
    source: Program
    b: Ordinal
    cap: int
    program: Program
    starts: tuple
    sites: tuple

    @property
    def code(self) -> int:
        return encode(self.program)

    def allowed(self, v: int) -> bool:
        return _allowed(v, self.b)


def _allowed(v: int, b: Ordinal) -> bool:
    g = pair_tag(v)
    return g is not None and compare(g, b) <= 0


MAX_FILTER_CAP = 1 << 14


def filter_program(e: Union[int, Sequence[Instr]], b: Ordinal, cap: int) -> Filtered:
    """Program acting as e with every query <g, z> answered 0 unless g <= b.

    Each QUERY r becomes a subroutine: copy r into T (restoring r from W),
    walk T down a chain of `cap` tests that jump to PASS or FAIL according
    to a table of allowed codes, then either query r or clear it.  Values
    at or beyond the cap are passed through.
    """
    if cap < 1 or cap > MAX_FILTER_CAP:
        raise FilterCapError(f"code cap {cap} outside 1..{MAX_FILTER_CAP}")
    src = as_program(e)
    R = max_register(src)
    T, W, Z = R + 1, R + 2, R + 3
    table = [_allowed(v, b) for v in range(cap)]
    blk = 14 + cap
    starts, pos = [], 0
    for ins in src:
        starts.append(pos)
        pos += blk if ins.op == "QUERY" else 1
    end_all = pos

    def lab(l):
        return starts[l] if l < len(src) else end_all

    out, sites = [], []
    D = lambda r, l: Instr("DECJZ", r, l)  # noqa: E731
    for i, ins in enumerate(src):
        c = starts[i]
        if ins.op == "DECJZ":
            out.append(D(ins.r, lab(ins.label)))
        elif ins.op != "QUERY":
            out.append(ins)
        else:
            r = ins.r
            chain0 = c + 7
            PASS = chain0 + cap + 2
            FAIL = PASS + 2
            END = FAIL + 3
            out += [D(r, c + 4), Instr("INC", T), Instr("INC", W), D(Z, c),
                    D(W, chain0), Instr("INC", r), D(Z, c + 4)]
            out += [D(T, PASS if ok else FAIL) for ok in table]
            out += [D(T, PASS), D(Z, chain0 + cap)]
            out += [Instr("QUERY", r), D(Z, END)]
            out += [D(Z, FAIL + 1), D(r, END), D(Z, FAIL + 1)]
            assert len(out) == END
            sites.append(QuerySite(i, c, PASS, FAIL))
    return Filtered(src, b, cap, tuple(out), tuple(starts), tuple(sites))


@dataclass(frozen=True)
class Translation:
    run: Optional[BoundedRun]
    flagged: bool = False
    reason: str = ""


def _replay(prog, answers, x, expect=None):
    # generous bound; the source run halted so the replay does too
    m = 1 << 40
    r = run_bounded(prog, ScriptedOracle(answers, expect), x, m, trace=True)
    if not r.halted:
        raise TranslationError("replay did not halt")
    h = r.bound
    return BoundedRun(r.program, r.x, h, "Halted", r.output, r.steps, r.max_query, r.trace)


def translate_run(direction: str, run: BoundedRun, filt: Filtered) -> Translation:
    """Map a halted run between e and f_b(e) without consulting any oracle.

    "b->a" takes a run of e to the run of f_b(e); it stops with a flag when
    e received a positive answer for some <g, z> with g not <= b.
    "a->b" takes a run of f_b(e) back to a run of e on the restricted oracle.
    """
    if not run.halted or run.trace is None:
        raise TranslationError("need a halted run with a trace")
    if direction == "b->a":
        if run.program != filt.source:
            raise TranslationError("run is not of the filtered program's source")
        answers, expect = [], []
        for k, st in enumerate(run.trace):
            if st.qv is None:
                continue
            if st.qv >= filt.cap:
                raise FilterCapError(f"query {st.qv} beyond code cap {filt.cap}")
            if filt.allowed(st.qv):
                answers.append(st.ans)
                expect.append(st.qv)
            elif st.ans:
                return Translation(None, True, f"inconsistent query {st.qv} at step {k}")
        return Translation(_replay(filt.program, answers, run.x, expect))
    if direction == "a->b":
        if run.program != filt.program:
            raise TranslationError("run is not of the filtered program")
        passes = {s.pass_pc for s in filt.sites}
        fails = {s.fail_pc for s in filt.sites}
        answers = []
        for st in run.trace:
            if st.pc in passes:
                answers.append(st.ans)
            elif st.pc in fails:
                answers.append(0)
        return Translation(_replay(filt.source, answers, run.x))
    raise ValueError("direction must be 'b->a' or 'a->b'")


# -------------------------------------------------------------- thresholds


def transformer_codes(a: Ordinal, b: Ordinal) -> dict:
    """Descriptor codes of f_b, f_{a->b} and f_{b->a}, kept apart mod 3."""
    ca, cb = ord_code(a), ord_code(b)
    return {"f_b": 3 * cb, "f_a_to_b": 3 * pair(ca, cb) + 1, "f_b_to_a": 3 * pair(cb, ca) + 2}


def n_bound(a: Ordinal, b: Ordinal, ctx: Optional[NormContext] = None) -> int:
    if compare(b, a) > 0:
        raise ValueError("n_bound needs b <= a")
    ctx = ctx or _NCTX
    return max(norm(b, ctx), norm(a, ctx), *transformer_codes(a, b).values())


class WindowTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class TResult:
    member: bool
    t: tuple
    threshold: int
    second: Optional[tuple] = None
    second_member: Optional[bool] = None

    @property
    def agree(self) -> Optional[bool]:
        return None if self.second is None else self.second_member == self.member


def T_membership(family: MachineFamily, a: Ordinal, H: Sequence[int], y: int,
                 cross_check: bool = False) -> TResult:
    """y in T(A, a, H), evaluated on the first a-size t inside S^3(a, H) above the threshold."""
    thr = max(y, n_bound(a, a, family.ctx))
    cand = [h for h in scatter_list(3, a, sorted(H)) if h > thr]
    t = size_prefix(a, cand)
    if t is None or (a is not ZERO and not t):
        raise WindowTooSmall(f"no {fmt(a)}-size set in S^3(H) above {thr}")
    mem = family.accepts(a, y, t)
    if not cross_check:
        return TResult(mem, t, thr)
    t2 = size_prefix(a, cand[len(t):])
    if t2 is None:
        return TResult(mem, t, thr)
    return TResult(mem, t, thr, t2, family.accepts(a, y, t2))


# ------------------------------------------------------------------ pools

COUNTDOWN: Program = (Instr("DECJZ", 1, 2), Instr("DECJZ", 0, 0))


def random_program(rng: random.Random, max_len: int = 5, regs: int = 3) -> Program:
    n = rng.randint(1, max_len)
    out = []
    for _ in range(n):
        op = rng.choice(("INC", "INC", "DECJZ", "DECJZ", "QUERY", "HALT"))
        if op == "HALT":
            out.append(Instr("HALT"))
        elif op == "DECJZ":
            out.append(Instr("DECJZ", rng.randrange(regs), rng.randrange(n + 1)))
        else:
            out.append(Instr(op, rng.randrange(regs)))
    return tuple(out)


def program_pool(size: int, seed: int = 0) -> list:
    """A few fixed programs followed by seeded random ones."""
    fixed = [HALT_PROGRAM, COUNTDOWN,
             (Instr("QUERY", 1), Instr("HALT")),
             (Instr("QUERY", 1), Instr("DECJZ", 1, 3), Instr("INC", 0), Instr("HALT")),
             (Instr("DECJZ", 1, 4), Instr("INC", 0), Instr("INC", 0), Instr("DECJZ", 2, 0))]
    rng = random.Random(seed)
    out = fixed[:size]
    while len(out) < size:
        out.append(random_program(rng))
    return out


def evens(cap: int) -> FiniteOracle:
    return FiniteOracle.from_pred(lambda z: z % 2 == 0, cap)


__all__ = [n for n in dir() if not n.startswith("_")]

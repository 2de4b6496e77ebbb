"""Ordinal notations below Gamma_0 in binary-Veblen normal form.

An ordinal is a weakly decreasing sum of Veblen components phi_d(b)
(stored with multiplicities) followed by a natural tail.  phi_0(0) = 1 is
never stored as a component; naturals live in the tail.  Instances are
interned, so structural equality is identity and hashing is cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from math import isqrt
from typing import Optional

__all__ = [
    "Ordinal", "ZERO", "ONE", "OMEGA", "EPSILON0", "GAMMA0", "Gamma0",
    "OrdinalSyntaxError", "OrdClass", "parse", "fmt", "compare", "add",
    "veblen", "omega_pow", "omega_times", "nat", "lead", "classify", "cnf",
    "is_indecomposable", "exponent", "ord_code", "ord_decode", "pair",
    "unpair", "below_epsilon0", "CodeTooLarge", "LT", "EQ", "GT",
]

LT, EQ, GT = -1, 0, 1


class Ordinal:
    """Canonical notation; build through the module functions, not directly."""

    __slots__ = ("terms", "nat", "__weakref__")
    _table: dict = {}

    def __new__(cls, terms: tuple = (), nat: int = 0):
        key = (terms, nat)
        obj = cls._table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "terms", terms)
            object.__setattr__(obj, "nat", nat)
            cls._table[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal is immutable")

    def __reduce__(self):
        return (parse, (fmt(self),))

    # identity equality and hashing are inherited from object: interning
    # makes them structural.

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __add__(self, other):
        return add(self, other)

    def __repr__(self):
        return f"Ordinal({fmt(self)!r})"

    def __str__(self):
        return fmt(self)

    @property
    def is_zero(self) -> bool:
        return self is ZERO

    @property
    def is_natural(self) -> bool:
        return not self.terms


class Gamma0:
    """The notation ceiling.  Only usable as a descent start point."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = object.__new__(cls)
        return cls._inst

    def __repr__(self):
        return "GAMMA0"

    __str__ = __repr__


GAMMA0 = Gamma0()
ZERO = Ordinal((), 0)
ONE = Ordinal((), 1)


def nat(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("negative natural")
    return Ordinal((), int(n))


# ---------------------------------------------------------------- compare

def compare(a: Ordinal, b: Ordinal) -> int:
    if a is b:
        return EQ
    ta, tb = a.terms, b.terms
    for (d1, b1, m1), (d2, b2, m2) in zip(ta, tb):
        c = _cmp_phi(d1, b1, d2, b2)
        if c:
            return c
        if m1 != m2:
            return LT if m1 < m2 else GT
    if len(ta) != len(tb):
        return LT if len(ta) < len(tb) else GT
    if a.nat == b.nat:
        return EQ
    return LT if a.nat < b.nat else GT


def _single(d: Ordinal, b: Ordinal) -> Ordinal:
    return Ordinal(((d, b, 1),), 0)


@lru_cache(maxsize=1 << 20)
def _cmp_phi(d1: Ordinal, b1: Ordinal, d2: Ordinal, b2: Ordinal) -> int:
    if d1 is d2:
        return compare(b1, b2)
    if compare(d1, d2) < 0:
        # phi_d1(b1) < phi_d2(b2) iff b1 < phi_d2(b2)
        c = compare(b1, _single(d2, b2))
        return LT if c < 0 else (EQ if c == 0 else GT)
    c = compare(_single(d1, b1), b2)
    return LT if c < 0 else (EQ if c == 0 else GT)


# --------------------------------------------------------------- building

def veblen(d: Ordinal, b: Ordinal) -> Ordinal:
    """phi_d(b) with fixpoints collapsed."""
    if d is ZERO and b is ZERO:
        return ONE
    if b.nat == 0 and len(b.terms) == 1 and b.terms[0][2] == 1:
        d2 = b.terms[0][0]
        if compare(d2, d) > 0:
            return b
    return Ordinal(((d, b, 1),), 0)


def omega_pow(e: Ordinal) -> Ordinal:
    return veblen(ZERO, e)


def omega_times(e: Ordinal, n: int) -> Ordinal:
    """omega^e * n."""
    if n <= 0:
        return ZERO
    if e is ZERO:
        return Ordinal((), n)
    t = omega_pow(e).terms[0]
    return Ordinal(((t[0], t[1], n),), 0)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    if b is ZERO:
        return a
    if a is ZERO:
        return b
    if not b.terms:
        return Ordinal(a.terms, a.nat + b.nat)
    d, bb, m = b.terms[0]
    keep = []
    merged = False
    for (d1, b1, m1) in a.terms:
        c = _cmp_phi(d1, b1, d, bb)
        if c > 0:
            keep.append((d1, b1, m1))
        else:
            if c == 0:
                keep.append((d, bb, m1 + m))
                merged = True
            break
    rest = b.terms[1:] if merged else b.terms
    return Ordinal(tuple(keep) + tuple(rest), b.nat)


def ordinal_sum(parts) -> Ordinal:
    out = ZERO
    for p in parts:
        out = add(out, p)
    return out


OMEGA = omega_pow(ONE)
EPSILON0 = veblen(ONE, ZERO)


# ---------------------------------------------------------- classification

@dataclass(frozen=True)
class OrdClass:
    tag: str  # "Zero" | "Successor" | "Limit"
    pred: Optional[Ordinal] = None


def classify(a: Ordinal) -> OrdClass:
    if a is ZERO:
        return OrdClass("Zero")
    if a.nat:
        return OrdClass("Successor", Ordinal(a.terms, a.nat - 1))
    return OrdClass("Limit")


def lead(a: Ordinal) -> Ordinal:
    if a is ZERO:
        return ZERO
    if a.terms:
        d, b, _ = a.terms[0]
        return _single(d, b)
    return ONE


def cnf(a: Ordinal) -> list:
    out = [(_single(d, b), m) for d, b, m in a.terms]
    if a.nat:
        out.append((ONE, a.nat))
    return out


def is_indecomposable(a: Ordinal) -> bool:
    """True for omega^b, including 1 = omega^0."""
    if a is ONE:
        return True
    return a.nat == 0 and len(a.terms) == 1 and a.terms[0][2] == 1


def exponent(c: Ordinal) -> Ordinal:
    """The b with omega^b = c, for an indecomposable c."""
    if not is_indecomposable(c):
        raise ValueError(f"{fmt(c)} is not of the form w^b")
    if c is ONE:
        return ZERO
    d, b, _ = c.terms[0]
    return b if d is ZERO else c


def below_epsilon0(a: Ordinal) -> bool:
    for d, b, _ in a.terms:
        if d is not ZERO or not below_epsilon0(b):
            return False
    return True


# -------------------------------------------------------------- formatting

def _is_primary(b: Ordinal) -> bool:
    return not b.terms or (b.nat == 0 and len(b.terms) == 1 and b.terms[0][2] == 1)


def _fmt_phi(d: Ordinal, b: Ordinal) -> str:
    if d is ZERO:
        if b is ONE:
            return "w"
        inner = fmt(b)
        return "w^" + inner if _is_primary(b) else "w^(" + inner + ")"
    return f"phi({fmt(d)},{fmt(b)})"


@lru_cache(maxsize=1 << 16)
def fmt(a: Ordinal) -> str:
    if a is ZERO:
        return "0"
    parts = []
    for d, b, m in a.terms:
        base = _fmt_phi(d, b)
        parts.append(base if m == 1 else f"{base}*{m}")
    if a.nat:
        parts.append(str(a.nat))
    return " + ".join(parts)


# ----------------------------------------------------------------- parsing

class OrdinalSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|(phi|w|e0|G0|Gamma0|ω|φ|ε₀|Γ₀)|(.))")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            toks.append(("nat", int(m.group(1)), start))
        elif m.group(2) is not None:
            word = {"ω": "w", "φ": "phi", "ε₀": "e0",
                    "Γ₀": "G0", "Gamma0": "G0"}.get(m.group(2), m.group(2))
            toks.append(("word", word, start))
        elif m.group(3) is not None:
            if not m.group(3).isspace():
                toks.append(("sym", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, val=None):
        t = self.toks[self.i]
        if (kind and t[0] != kind) or (val is not None and t[1] != val):
            want = val if val is not None else kind
            raise OrdinalSyntaxError(f"expected {want!r}", t[2])
        self.i += 1
        return t

    def ordinal(self) -> Ordinal:
        out = self.term()
        while self.peek()[:2] == ("sym", "+"):
            self.take()
            out = add(out, self.term())
        return out

    def term(self) -> Ordinal:
        x = self.primary()
        if self.peek()[:2] == ("sym", "*"):
            self.take()
            k = self.take("nat")[1]
            x = _times_nat(x, k)
        return x

    def primary(self) -> Ordinal:
        kind, val, pos = self.peek()
        if kind == "nat":
            self.take()
            return nat(val)
        if kind == "word":
            if val == "G0":
                raise OrdinalSyntaxError("ordinal >= Gamma_0 rejected", pos)
            self.take()
            if val == "e0":
                return EPSILON0
            if val == "w":
                if self.peek()[:2] == ("sym", "^"):
                    self.take()
                    return omega_pow(self.primary())
                return OMEGA
            self.take("sym", "(")
            d = self.ordinal()
            self.take("sym", ",")
            b = self.ordinal()
            self.take("sym", ")")
            return veblen(d, b)
        if (kind, val) == ("sym", "("):
            self.take()
            x = self.ordinal()
            self.take("sym", ")")
            return x
        raise OrdinalSyntaxError("unexpected token", pos)


def _times_nat(x: Ordinal, k: int) -> Ordinal:
    out = ZERO
    for _ in range(k):
        out = add(out, x)
    return out


def parse(text: str) -> Ordinal:
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise OrdinalSyntaxError("empty input", 0)
    out = p.ordinal()
    kind, _, pos = p.peek()
    if kind != "end":
        raise OrdinalSyntaxError("trailing input", pos)
    return out


def as_ordinal(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return nat(x)
    return parse(str(x))


# ------------------------------------------------------------------ coding

def pair(x: int, y: int) -> int:
    """Cantor pairing."""
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int) -> tuple:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


MAX_CODE_BITS = 1 << 14


class CodeTooLarge(ValueError):
    """The hereditary code grows like a tower of twos; refuse past a size cap."""


@lru_cache(maxsize=1 << 16)
def _ack(a: Ordinal) -> int:
    """Hereditary bijection between ordinals below eps_0 and naturals."""
    exps = []
    for d, b, m in a.terms:
        exps.extend([_ack(b)] * m)
    exps.extend([0] * a.nat)
    exps.sort()
    if exps and exps[-1] + len(exps) > MAX_CODE_BITS:
        raise CodeTooLarge(f"code of {fmt(a)} exceeds {MAX_CODE_BITS} bits")
    return sum(1 << (c + i) for i, c in enumerate(exps))


def _unack(n: int) -> Ordinal:
    bits = [i for i, ch in enumerate(reversed(bin(n)[2:])) if ch == "1"]
    # codes are not monotone in the ordinal, so sort the exponents themselves
    exps = sorted((_unack(p - i) for i, p in enumerate(bits)), key=cmp_to_key(compare), reverse=True)
    out = ZERO
    for e in exps:
        out = add(out, omega_pow(e))
    return out


@lru_cache(maxsize=1 << 16)
def _struct(a: Ordinal) -> int:
    if a is ZERO:
        return 0
    if a.terms:
        d, b, m = a.terms[0]
        head = pair(ord_code(d), ord_code(b))
        rest = Ordinal(((d, b, m - 1),) + a.terms[1:], a.nat) if m > 1 \
            else Ordinal(a.terms[1:], a.nat)
        return 1 + pair(2 * head + 1, _struct(rest))
    return 1 + pair(0, _struct(Ordinal((), a.nat - 1)))


def ord_code(a: Ordinal) -> int:
    """Goedel code: even codes enumerate eps_0 bijectively, odd ones the rest."""
    if below_epsilon0(a):
        return 2 * _ack(a)
    return 2 * _struct(a) + 1


def _unstruct(n: int, depth: int) -> Optional[Ordinal]:
    if n == 0:
        return ZERO
    if depth > 64:
        return None
    h, r = unpair(n - 1)
    rest = _unstruct(r, depth + 1)
    if rest is None:
        return None
    if h == 0:
        return add(ONE, rest) if not rest.terms else None
    if h % 2 == 0:
        return None
    dc, bc = unpair((h - 1) // 2)
    d, b = ord_decode(dc), ord_decode(bc)
    if d is None or b is None:
        return None
    return add(veblen(d, b), rest)


def ord_decode(c: int) -> Optional[Ordinal]:
    """Inverse of ord_code; None when c codes no ordinal."""
    if c < 0:
        return None
    if c % 2 == 0:
        return _unack(c // 2)
    a = _unstruct((c - 1) // 2, 0)
    if a is None or ord_code(a) != c:
        return None
    return a

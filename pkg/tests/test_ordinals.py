from functools import cmp_to_key

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordlab.ordinals import (
    EPSILON0, OMEGA, ONE, ZERO, CodeTooLarge, OrdinalSyntaxError, add, below_epsilon0, classify, cnf,
    compare, fmt, is_indecomposable, lead, nat, omega_pow, omega_times, ord_code,
    ord_decode, pair, parse, unpair, veblen,
)


def test_parse_and_print_round_trip():
    for text in ["0", "7", "w", "w*2 + 3", "w^w", "w^(w + 1)*3", "phi(1,0)", "phi(2,0)",
                 "phi(1,1)", "phi(1,0) + 1"]:
        assert fmt(parse(text)) == text


def test_unicode_spellings():
    assert parse("ω^ω") is parse("w^w")
    assert parse("ε₀") is EPSILON0
    assert parse("φ(1,0)") is EPSILON0


def test_gamma0_and_garbage_rejected():
    for bad in ["G0", "Γ₀", "w^", "", "phi(1)", "1 +"]:
        with pytest.raises(OrdinalSyntaxError):
            parse(bad)


def test_veblen_collapses_to_normal_form():
    assert veblen(ZERO, ONE) is OMEGA
    assert parse("phi(0,phi(1,0))") is EPSILON0  # epsilon numbers are fixed points
    assert veblen(ONE, ZERO) is EPSILON0


def test_compare_basics():
    assert compare(parse("w^w"), parse("phi(1,0)")) < 0
    assert compare(parse("w*2"), parse("w + 5")) > 0
    assert compare(parse("phi(1,1)"), parse("phi(2,0)")) < 0
    assert compare(parse("phi(2,0)"), parse("phi(1,phi(2,0) + 1)")) < 0


def test_addition_absorbs_smaller_left_summands():
    assert add(nat(3), OMEGA) is OMEGA
    assert add(OMEGA, nat(3)) is parse("w + 3")
    assert add(parse("w + 3"), parse("w^2")) is parse("w^2")


def test_classification_and_lead():
    assert classify(ZERO).tag == "Zero"
    c = classify(parse("w*2 + 3"))
    assert c.tag == "Successor" and c.pred is parse("w*2 + 2")
    assert classify(EPSILON0).tag == "Limit"
    assert lead(parse("w^2*3 + w + 1")) is parse("w^2")
    assert is_indecomposable(ONE) and is_indecomposable(EPSILON0)
    assert not is_indecomposable(parse("w + 1"))
    assert cnf(parse("w*2 + 1")) == [(OMEGA, 2), (ONE, 1)]


def test_codes_and_pairing():
    assert [ord_code(x) for x in (ONE, OMEGA, nat(2), parse("w + 1"))] == [2, 4, 6, 10]
    assert ord_decode(4) is OMEGA
    assert ord_decode(3) is None
    assert pair(0, 0) == 0 and pair(1, 0) == 1 and pair(0, 1) == 2
    assert all(unpair(pair(x, y)) == (x, y) for x in range(30) for y in range(30))
    assert below_epsilon0(parse("w^w^w")) and not below_epsilon0(EPSILON0)


_small = st.recursive(
    st.integers(0, 4).map(nat),
    lambda inner: st.tuples(inner, st.integers(1, 3), inner).map(
        lambda t: add(omega_times(t[0], t[1]), t[2])),
    max_leaves=6,
)


@settings(max_examples=200, deadline=None)
@given(_small, _small, _small)
def test_compare_is_a_total_order_compatible_with_addition(a, b, c):
    assert compare(a, b) == -compare(b, a)
    assert (compare(a, b) == 0) == (a is b)
    if compare(a, b) <= 0 and compare(b, c) <= 0:
        assert compare(a, c) <= 0
    assert add(add(a, b), c) is add(a, add(b, c))
    assert compare(add(a, b), a) >= 0


@settings(max_examples=100, deadline=None)
@given(_small)
def test_code_round_trip(a):
    try:
        c = ord_code(a)
    except CodeTooLarge:
        return  # towers of exponents have astronomically large codes
    assert ord_decode(c) is a


def test_code_size_guard():
    with pytest.raises(CodeTooLarge):
        ord_code(parse("w^w^w^3"))
    assert ord_decode(ord_code(parse("phi(2,w) + 3"))) is parse("phi(2,w) + 3")


def test_sorting_uses_ordinal_order():
    xs = [parse(t) for t in ["w^2", "3", "w", "phi(1,0)", "w + 1", "0"]]
    xs.sort(key=cmp_to_key(compare))
    assert [fmt(x) for x in xs] == ["0", "3", "w", "w + 1", "w^2", "phi(1,0)"]
    assert omega_pow(omega_pow(OMEGA)) is parse("w^w^w")

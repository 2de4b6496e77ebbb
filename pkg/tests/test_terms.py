import itertools

import pytest

from ordlab.ordinals import ONE, OMEGA, ZERO, nat, parse
from ordlab.terms import (
    ContextError, NatOrder, ReversedNat, TZERO, TermContext, TermSyntaxError, const,
    elem, generate_terms, order_by_name, parse_term, show, sub_multiset, term_norm,
    zeta_candidates,
)


@pytest.fixture
def ctx():
    return TermContext(nat(2), NatOrder())


def P(ctx, s):
    return parse_term(s, ctx)


class TestNormalForm:
    def test_constants_are_fixed_points(self, ctx):
        assert P(ctx, "phi[1](c(3))") is const(3)
        assert P(ctx, "phi[0](phi[1](c(3)))") is const(3)

    def test_larger_subscript_absorbs_smaller(self, ctx):
        inner = P(ctx, "phi[1](c(1) + c(1))")
        assert P(ctx, "phi[0](phi[1](c(1) + c(1)))") is inner
        outer = P(ctx, "phi[1](phi[0](c(1) + c(1)))")
        assert outer.kind == "phi" and outer.arg.kind == "phi"

    def test_sums_drop_smaller_left_summands(self, ctx):
        assert P(ctx, "c(1) + c(2)") is const(2)
        assert show(P(ctx, "c(2) + c(1)")) == "c(2) + c(1)"
        assert P(ctx, "0 + c(4)") is const(4)

    def test_subscript_bound(self, ctx):
        with pytest.raises(ContextError):
            P(ctx, "phi[2](0)")

    def test_syntax_errors(self, ctx):
        for bad in ("c(", "phi[1]", "c(1) +", "q(2)"):
            with pytest.raises(TermSyntaxError):
                P(ctx, bad)

    def test_show_round_trip(self, ctx):
        for t in generate_terms(ctx, [0, 1, 2], 2):
            assert P(ctx, show(t)) is t

    def test_zero_alpha_rejected(self):
        with pytest.raises(ValueError):
            TermContext(ZERO, NatOrder())


class TestOrder:
    def test_examples(self, ctx):
        a = P(ctx, "phi[0](c(1) + c(1))")
        assert ctx.lt(P(ctx, "c(1) + c(1)"), a)
        assert ctx.lt(a, P(ctx, "phi[1](c(1) + c(1))"))
        assert ctx.lt(a, const(3))
        assert ctx.lt(TZERO, const(0))

    def test_reversed_order_flips_constants(self):
        r = TermContext(ONE, ReversedNat())
        assert r.lt(const(5), const(2))
        assert order_by_name("rev").cmp(5, 2) < 0

    def test_finite_order(self):
        o = order_by_name("finite:b,a")
        assert o.cmp("b", "a") < 0
        with pytest.raises(ValueError):
            order_by_name("bogus")

    def test_linear_on_generated_terms(self, ctx):
        ts = generate_terms(ctx, [0, 1, 2], 2)
        assert len(set(ts)) == len(ts) > 30
        for s, t in itertools.product(ts, repeat=2):
            assert (ctx.le(s, t) and ctx.le(t, s)) == (s is t)
            assert ctx.le(s, t) or ctx.le(t, s)
        ts_sorted = sorted(ts, key=ctx.sort_key())
        for a, b, c in zip(ts_sorted, ts_sorted[1:], ts_sorted[2:]):
            assert ctx.lt(a, c)

    def test_elements_are_not_terms(self, ctx):
        with pytest.raises(ContextError):
            ctx.le(elem(1), const(1))


class TestSubAndZeta:
    def test_sub_counts_multiplicity(self, ctx):
        sub = sub_multiset(P(ctx, "c(1) + c(1)"))
        assert sub[const(1)] == 2 and sub[elem(1)] == 2
        assert sum(sub.values()) == 5

    def test_sub_of_zero(self):
        assert sub_multiset(TZERO) == {TZERO: 1}

    def test_zeta_candidates(self):
        c = TermContext(nat(3), NatOrder())
        assert zeta_candidates(TZERO, c) == {ZERO}
        assert zeta_candidates(const(0), c) == {ZERO, ONE, parse("w^3")}
        assert zeta_candidates(P(c, "phi[1](0)"), c) == {ZERO, ONE, OMEGA}

    def test_norm_lower_bound(self, ctx):
        for t in generate_terms(ctx, [0, 1], 2):
            assert term_norm(t, ctx) >= 3
            assert term_norm(t, ctx) > sum(sub_multiset(t).values())

    def test_cached_norm_agrees(self, ctx):
        t = P(ctx, "phi[1](c(1) + c(0)) + c(0)")
        assert ctx.term_norm(t) == term_norm(t, ctx)


def test_infinite_alpha_needs_subscripts():
    c = TermContext(OMEGA, NatOrder())
    with pytest.raises(ValueError):
        generate_terms(c, [0], 1)
    assert len(generate_terms(c, [0], 1, deltas=[ZERO, nat(5)])) > 3

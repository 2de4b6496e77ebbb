import itertools

import pytest

from ordlab.builder import (
    BudgetExhausted, ColoringHandle, NormGuardError, Shape, named_coloring, parse_shape,
    reduce_dimension, reduce_to_lead, shape_sets, solve, verify, verify_extendable,
)
from ordlab.largeness import is_exact
from ordlab.ordinals import ONE, OMEGA, nat, parse

W20 = tuple(range(1, 21))


def brute_colors(c, H):
    # independent of the builder: filter every subset with the largeness predicate
    a = c.shape.alpha
    out = set()
    for r in range(len(H) + 1):
        for s in itertools.combinations(H, r):
            if c.shape.uplus:
                ok = len(s) >= 1 and is_exact(a, s[:-1])
            else:
                ok = is_exact(a, s)
            if ok:
                out.add(c(s))
    return out


class TestShapes:
    def test_finite_uplus_collapses(self):
        assert parse_shape("3", "uplus") == Shape(nat(4))

    def test_sets(self):
        sh = parse_shape("w")
        assert list(shape_sets(sh, (1, 2, 3))) == [(1, 2), (1, 3)]
        up = parse_shape("w", "uplus")
        assert up.is_size((1, 2, 9)) and not up.is_size((1, 2))

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            parse_shape("w", "odd")


class TestColorings:
    def test_named(self):
        sh = parse_shape("w")
        assert named_coloring("min-parity", sh)((3, 4, 5, 6)) == 1
        assert named_coloring("const", sh, k=5)((1, 2)) == 0
        assert named_coloring("gap", sh).k == 2
        with pytest.raises(KeyError):
            named_coloring("rainbow", sh)

    def test_mixer_is_deterministic(self):
        sh = parse_shape("w")
        a, b = named_coloring("mix:7", sh, 3), named_coloring("mix:7", sh, 3)
        assert [a(s) for s in shape_sets(sh, W20[:8])] == [b(s) for s in shape_sets(sh, W20[:8])]

    def test_palette_and_ground(self):
        bad = ColoringHandle(2, lambda s: 5, parse_shape("w"))
        with pytest.raises(ValueError):
            bad((1, 2))
        guarded = ColoringHandle(2, lambda s: 0, parse_shape("w"), min_ground=4)
        with pytest.raises(NormGuardError):
            guarded((1, 2))


class TestSolve:
    @pytest.mark.parametrize("alpha,kind", [("w", "plain"), ("w", "uplus"), ("w + 1", "plain"), ("3", "plain")])
    def test_constant_takes_window(self, alpha, kind):
        st = solve(named_coloring("const", parse_shape(alpha, kind)), W20)
        assert st.H == W20 and st.status == "ok"

    def test_single_color(self):
        st = solve(named_coloring("mix:4", parse_shape("w"), k=1), W20)
        assert st.H == W20

    def test_uplus_parity_picks_one_parity(self):
        c = named_coloring("min-parity", parse_shape("w", "uplus"))
        st = solve(c, W20)
        assert st.verification.exhaustive and st.verification.ok
        assert brute_colors(c, st.H) == {st.color}
        # the leading stages all share the chosen parity
        assert all(h % 2 == st.color for h in st.H[:4])

    @pytest.mark.parametrize("alpha,name", [("w", "min-parity"), ("w", "sum-parity"), ("w", "gap"),
                                            ("w", "mix:3"), ("3", "sum-parity"), ("w + 1", "min-parity")])
    def test_homogeneous_by_brute_force(self, alpha, name):
        c = named_coloring(name, parse_shape(alpha))
        st = solve(c, W20, budget=500000)
        assert st.status in ("ok", "short")
        assert len(brute_colors(c, st.H)) <= 1

    def test_decomposable_coverage(self):
        st = solve(named_coloring("min-parity", parse_shape("w + 1")), W20, target_len=6)
        r = st.report()
        assert r["requirements"]["method"] == "eligible-sets"
        assert r["coverage"]["covered_prefix"] >= 6 and st.status == "ok"

    def test_budget_exhaustion(self):
        with pytest.raises(BudgetExhausted) as ei:
            solve(named_coloring("mix:1", parse_shape("w")), tuple(range(1, 25)), budget=50)
        assert ei.value.evals == 51 and ei.value.path

    def test_deterministic_report(self):
        c = named_coloring("mix:2", parse_shape("w"))
        assert solve(c, W20, budget=10**6).report() == solve(c, W20, budget=10**6).report()

    def test_short_status(self):
        st = solve(named_coloring("mix:3", parse_shape("w")), W20, target_len=19)
        assert st.status == "short"


class TestVerify:
    def test_finds_witness(self):
        c = named_coloring("min-parity", parse_shape("w"))
        v = verify(c, (1, 2, 3, 4))
        assert not v.ok and len(v.witness) == 2
        assert {c(s) for s in v.witness} == {0, 1}

    def test_sampling_past_limit(self):
        c = named_coloring("const", parse_shape("w"))
        v = verify(c, range(1, 30), limit=100, samples=50)
        assert v.ok and not v.exhaustive and v.tested > 100


class TestReductions:
    def test_to_lead_drops_prefix(self):
        c = named_coloring("min-parity", parse_shape("w"))
        R = reduce_to_lead(c, parse("w + 1"))
        assert R.d.shape == parse_shape("w + 1")
        assert R.transfer(range(1, 11)) == tuple(range(2, 11))
        assert R.d((3, 4, 5, 6, 7)) == c((3, 4, 5, 6))

    def test_to_lead_transfer_solves_original(self):
        c = named_coloring("min-parity", parse_shape("w"))
        R = reduce_to_lead(c, parse("w + 1"))
        st = solve(R.d, W20)
        H = R.transfer(st.H)
        v = verify_extendable(c, H, R.d.shape)
        assert v.ok

    def test_identities(self):
        c = named_coloring("min-parity", parse_shape("w"))
        assert reduce_to_lead(c, OMEGA).note == "identity"
        assert reduce_dimension(c, ONE).note == "identity"

    def test_constant_stays_constant(self):
        c = named_coloring("const", parse_shape("w"))
        d = reduce_dimension(c, nat(2)).d
        # d only reads the w-size initial segment, so long inputs suffice
        assert {d(tuple(range(lo, lo + 40))) for lo in range(3, 12)} == {0}

    def test_dimension_transfer(self):
        c = named_coloring("min-parity", parse_shape("w"))
        R = reduce_dimension(c, nat(2))
        assert R.d.min_ground == 3 and R.d.shape == Shape(parse("w^2"))
        window = tuple(range(3, 15))
        st = solve(R.d, window, budget=10**6)
        # every w-size subset that extends to a w^2-size set is monochromatic
        assert verify_extendable(c, R.transfer(st.H), R.d.shape).ok

    def test_dimension_guard(self):
        with pytest.raises(ValueError):
            reduce_dimension(named_coloring("const", parse_shape("w^2")), ONE)

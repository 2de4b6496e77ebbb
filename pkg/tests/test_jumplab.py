import itertools
import random

import pytest

from ordlab.jumplab import (
    COUNTDOWN, EMPTY_ORACLE, HALT_PROGRAM, AsmError, DecompositionError, FilterCapError,
    FiniteOracle, Instr, MachineFamily, OracleCapError, T_membership, TranslationError,
    WindowTooSmall, assemble, coloring_for, counting_check, decode, decode_pair,
    disassemble, encode, evens, filter_program, jump_coloring, n_bound, pair_code,
    pair_tag, program_pool, run_bounded, tj_approx, translate_run,
)
from ordlab.ordinals import EPSILON0, ONE, OMEGA, ZERO, nat, parse


class TestPrograms:
    def test_small_codes(self):
        assert decode(0) == ()
        assert decode(7) == HALT_PROGRAM
        assert decode(9) == (Instr("INC", 0),)
        assert decode(17) == (Instr("QUERY", 0),)
        assert encode(COUNTDOWN) == 947

    def test_every_code_decodes_and_round_trips(self):
        for e in range(3000):
            p = decode(e)
            if p != HALT_PROGRAM or e == 7:
                assert encode(p) == e or p == HALT_PROGRAM

    def test_assembler(self):
        src = "top: DECJZ r1, done\n  DECJZ r0, top  # loop\ndone:"
        assert assemble(src) == COUNTDOWN
        assert assemble(disassemble(COUNTDOWN)) == COUNTDOWN
        with pytest.raises(AsmError):
            assemble("JMP r1")

    def test_pool(self):
        a, b = program_pool(30, seed=2), program_pool(30, seed=2)
        assert a == b and len(a) == 30 and a[0] == HALT_PROGRAM


class TestRuns:
    def test_halt_immediately(self):
        assert run_bounded(HALT_PROGRAM, EMPTY_ORACLE, 9, 2).summary() == ("Halted", 0, 1, 0)

    def test_bound_too_small(self):
        assert run_bounded(COUNTDOWN, EMPTY_ORACLE, 5, 3).summary() == ("Running",)
        with pytest.raises(ValueError):
            run_bounded(HALT_PROGRAM, EMPTY_ORACLE, 0, 0)

    def test_query_with_preload(self):
        prog = (Instr("QUERY", 0), Instr("HALT"))
        r = run_bounded(prog, FiniteOracle.of([5], 50), 0, 10, preload={0: 5})
        assert r.halted and r.output == 1 and r.max_query == 5

    def test_query_at_bound_keeps_running(self):
        prog = (Instr("QUERY", 1), Instr("HALT"))
        assert not run_bounded(prog, FiniteOracle.of([], 50), 12, 10).halted

    def test_countdown_bound(self):
        r = run_bounded(COUNTDOWN, EMPTY_ORACLE, 5, 100, trace=True)
        assert r.summary() == ("Halted", 0, 12, 0)
        assert r.bound == 13 and len(r.trace) == 12
        assert run_bounded(COUNTDOWN, EMPTY_ORACLE, 5, 13).halted
        assert not run_bounded(COUNTDOWN, EMPTY_ORACLE, 5, 12).halted

    def test_oracle_cap(self):
        with pytest.raises(OracleCapError):
            evens(10)(10)


class TestPairs:
    def test_base_pair(self):
        assert pair_code(ZERO, 0) == 5
        assert decode_pair(5) == (ZERO, 0)

    def test_only_five_below_eight(self):
        assert [y for y in range(8) if decode_pair(y) is not None] == [5]

    def test_round_trip(self):
        for g in (ZERO, ONE, nat(2), OMEGA, parse("w + 1")):
            for z in range(5):
                assert decode_pair(pair_code(g, z)) == (g, z)
                assert pair_tag(pair_code(g, z)) is g


class TestJumpTable:
    def test_stage_zero(self):
        t = tj_approx(range(6), ZERO, 50)
        assert t.members == frozenset(pair_code(ZERO, x) for x in range(6))

    def test_stage_one_contains_stage_zero(self):
        t0 = tj_approx(range(6), ZERO, 60, cap=200)
        t1 = tj_approx(range(6), ONE, 60, cap=200)
        assert t0.members < t1.members
        assert t1.restrict(ZERO) == t0.members
        assert {g for g, _ in t1.pairs()} == {ZERO, ONE}

    def test_limit_stage_is_monotone(self):
        t1 = tj_approx(range(6), ONE, 60, cap=200)
        tw = tj_approx(range(6), OMEGA, 60, cap=200)
        assert t1.members <= tw.members

    def test_guards(self):
        with pytest.raises(ValueError):
            tj_approx(range(3), ONE, 100, cap=50)
        with pytest.raises(ValueError):
            tj_approx(range(3), EPSILON0, 10)


class TestMachines:
    def test_base_machine_reads_oracle(self):
        fam = MachineFamily(evens(4000))
        y_even, y_odd = pair_code(ZERO, 4), pair_code(ZERO, 3)
        assert fam.accepts(ONE, y_even, (y_even + 1,))
        assert not fam.accepts(ONE, y_odd, (y_even + 1,))

    def test_wrong_type_rejects(self):
        fam = MachineFamily(evens(4000))
        y = pair_code(ZERO, 4)
        assert not fam.accepts(ONE, y, (y + 1, y + 2))
        assert not fam.accepts(ONE, y, (y,))

    def test_zero_machine_rejects(self):
        assert MachineFamily(evens(100)).accept_set(ZERO, ()) == frozenset()


class TestColoring:
    def test_crafted_separation(self):
        fam = MachineFamily(evens(4000))
        # the countdown program (947) halts with a bound between 20 and 30 on some x
        assert jump_coloring(ONE, (948, 20, 30, 100), fam) == 0
        assert jump_coloring(ONE, (948, 30, 40, 100), fam) == 0

    def test_empty_range(self):
        assert jump_coloring(ONE, (0, 20, 30, 100), MachineFamily(evens(4000))) == 1

    def test_non_jump_index_is_constant(self):
        c = coloring_for(OMEGA, MachineFamily(evens(100)))
        assert c((1, 2, 3)) == 1

    def test_decomposition_error(self):
        with pytest.raises(DecompositionError):
            jump_coloring(ONE, (1, 2, 3, 4, 5), MachineFamily(evens(100)))


class TestFilter:
    PROG = (Instr("QUERY", 1), Instr("HALT"))

    def runs(self, b, oracle, x, cap=120):
        f = filter_program(self.PROG, b, cap)
        a = run_bounded(self.PROG, oracle, x, 10**6, trace=True)
        e = run_bounded(f.program, oracle, x, 10**6, trace=True)
        return f, a, e

    def test_allowed_query_passes(self):
        y = pair_code(ONE, 2)
        orc = FiniteOracle.of([y], 200)
        f, a, e = self.runs(ONE, orc, y)
        assert a.output == e.output == 0  # output register 0 is untouched
        assert e.halted

    def test_filtered_answers_match_source(self):
        # copy the answer into register 0 so the output shows it
        prog = (Instr("QUERY", 1), Instr("DECJZ", 1, 3), Instr("INC", 0), Instr("HALT"))
        for g, b, want in ((ONE, ONE, 1), (nat(2), ONE, 0), (ZERO, ONE, 1)):
            y = pair_code(g, 1)
            orc = FiniteOracle.of([y], 200)
            f = filter_program(prog, b, 150)
            assert run_bounded(f.program, orc, y, 10**6).output == want
            assert run_bounded(prog, orc, y, 10**6).output == 1

    def test_round_trip(self):
        rng = random.Random(3)
        done = 0
        for prog in program_pool(25, seed=1):
            for x in range(4):
                f = filter_program(prog, ONE, 60)
                orc = FiniteOracle.from_pred(lambda v: rng.random() < 0.5 and f.allowed(v), 400)
                r = run_bounded(prog, orc, x, 200, trace=True)
                if not r.halted:
                    continue
                fwd = translate_run("b->a", r, f)
                assert not fwd.flagged
                back = translate_run("a->b", fwd.run, f)
                assert back.run.trace == r.trace and back.run.output == r.output
                done += 1
        assert done > 20

    def test_no_queries_is_identical(self):
        f = filter_program(COUNTDOWN, ONE, 10)
        assert f.program == COUNTDOWN
        r = run_bounded(COUNTDOWN, EMPTY_ORACLE, 3, 100, trace=True)
        assert translate_run("b->a", r, f).run.trace == r.trace

    def test_inconsistent_run_is_flagged(self):
        y = pair_code(nat(2), 0)
        orc = FiniteOracle.of([y], 200)
        r = run_bounded(self.PROG, orc, y, 1000, trace=True)
        t = translate_run("b->a", r, filter_program(self.PROG, ONE, 150))
        assert t.flagged and t.run is None

    def test_errors(self):
        with pytest.raises(FilterCapError):
            filter_program(self.PROG, ONE, 0)
        r = run_bounded(COUNTDOWN, EMPTY_ORACLE, 50, 3, trace=True)
        with pytest.raises(TranslationError):
            translate_run("b->a", r, filter_program(COUNTDOWN, ONE, 5))


def test_n_bound_golden_values():
    assert n_bound(ONE, ONE) == 38
    assert n_bound(OMEGA, ONE) == 77
    with pytest.raises(ValueError):
        n_bound(ONE, OMEGA)


class TestCounting:
    def test_zero_programs(self):
        w = counting_check(0, [1, 2, 3])
        assert w.index == 1 and w.separated == ()

    def test_exhaustive_adversary(self):
        chain = list(range(10, 17))
        choices = [None] + list(range(10, 18))
        for hs in itertools.product(choices, repeat=4):
            times = {k: h for k, h in zip(itertools.product(range(2), repeat=2), hs)}
            w = counting_check(2, chain, halt_times=times)
            assert w is not None
            lo, hi = w.pair
            assert not any(h is not None and lo < h <= hi for h in hs)

    def test_random_programs(self):
        rng = random.Random(0)
        pool = program_pool(40, seed=0)
        for _ in range(100):
            a0 = rng.randint(0, 3)
            chain = sorted(rng.sample(range(1, 200), a0 * a0 + 3))
            progs = rng.sample(pool, max(a0, 1))
            k = rng.randint(2, 4)
            orc = FiniteOracle.from_pred(lambda v: v % k == 0, 400)
            assert counting_check(a0, chain, orc, progs) is not None

    def test_chain_validation(self):
        with pytest.raises(ValueError):
            counting_check(2, [1, 2, 3])
        with pytest.raises(ValueError):
            counting_check(1, [3, 2, 1, 0])


class TestT:
    def test_base_pairs_follow_the_oracle(self):
        fam = MachineFamily(evens(10**6))
        H = range(39, 400)
        for z in range(6):
            r = T_membership(fam, ONE, H, pair_code(ZERO, z))
            assert r.member == (z % 2 == 0)

    def test_window_too_small(self):
        with pytest.raises(WindowTooSmall):
            T_membership(MachineFamily(evens(1000)), ONE, range(1, 20), 5)

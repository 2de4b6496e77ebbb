"""A toy register machine with an oracle, and the jump built from it."""

from ordlab import jumplab as jl
from ordlab.ordinals import ONE, ZERO, fmt

prog = jl.assemble("""
top:  DECJZ r1, done   # count the input down
      DECJZ r0, top    # r0 stays 0, so this always jumps
done:
""")
e = jl.encode(prog)
print(f"The countdown program has code {e}:")
print(jl.disassemble(prog))

for m in (10, 13, 100):
    r = jl.run_bounded(e, jl.EMPTY_ORACLE, 5, m)
    print(f"  x=5, bound {m:>3}: {r.summary()}")

print("\nPairs <gamma, z> are coded so that small codes are rare; below 8 only", 
      [y for y in range(8) if jl.decode_pair(y)], "decodes.")

t = jl.tj_approx(range(4), ONE, fuel=40, cap=100)
print("\nThe approximate jump at stage 1 over the window {0..3}:")
print("  ", [(fmt(g), z) for g, z in t.pairs()])

print("\nFiltering a program hides answers for pairs above a given stage.")
src = (jl.Instr("QUERY", 1), jl.Instr("DECJZ", 1, 3), jl.Instr("INC", 0), jl.Instr("HALT"))
for g in (ZERO, ONE, jl.nat(2)):
    y = jl.pair_code(g, 1)
    orc = jl.FiniteOracle.of([y], 200)
    f = jl.filter_program(src, ONE, 150)
    a = jl.run_bounded(src, orc, y, 10**6, trace=True)
    b = jl.run_bounded(f.program, orc, y, 10**6)
    back = jl.translate_run("b->a", a, f)
    print(f"  query <{fmt(g)},1>: source says {a.output}, filtered says {b.output},"
          f" translation flagged: {back.flagged}")

fam = jl.MachineFamily(jl.evens(10**5))
print("\nOn a long window, T reads the oracle back off the base pairs:")
for z in range(6):
    r = jl.T_membership(fam, ONE, range(39, 400), jl.pair_code(ZERO, z))
    print(f"  z={z}: member={r.member}")

"""Building homogeneous sets for colorings of alpha-size sets on a window."""

from ordlab.builder import named_coloring, parse_shape, reduce_to_lead, solve, verify
from ordlab.ordinals import parse

window = tuple(range(1, 25))
for alpha in ("3", "w", "w+1"):
    for name in ("min-parity", "gap"):
        c = named_coloring(name, parse_shape(alpha))
        st = solve(c, window, budget=3_000_000, target_len=12)
        v = st.verification
        print(f"alpha={alpha:<4} {name:<11} |H|={len(st.H):>2} color={st.color}"
              f" status={st.status} tested={v.tested} exhaustive={v.exhaustive}")

print("\nA coloring of w-size sets, lifted to (w+1)-size sets by reading the w-size prefix.")
c = named_coloring("min-parity", parse_shape("w"))
R = reduce_to_lead(c, parse("w+1"))
st = solve(R.d, window[:16])
H = R.transfer(st.H)
print(f"  solved the lifted instance: {list(st.H)}")
print(f"  transferred back:           {list(H)}")
print(f"  note: {R.note}")

print("\nThe verifier knows nothing about the builder; it just walks fundamental sequences.")
print("  ", verify(c, (1, 2, 3, 4)).as_dict())

"""From a coloring with a homogeneous set back to a descending sequence.

The terms live over X = naturals ordered backwards, so a descending
sequence in X is an increasing run of integers.
"""

from ordlab.ordinals import ONE, fmt
from ordlab.peeling import (
    DescendingSeq, Peeler, build_M, colorbar, extract_descending, greedy_homog_search,
)
from ordlab.terms import ReversedNat, TermContext, const, show

ctx = TermContext(ONE, ReversedNat())
P = Peeler(ctx)

print("Peeling strips structure one level at a time.")
for A in [(const(3), const(5)), (const(5), const(3)), (const(7), const(5), const(3))]:
    top = P.pbar(ctx.omega_alpha, A)
    z = P.zeta(A)
    print(f"  A = {[show(t) for t in A]}  peel(w) = {[show(t) for t in top]}"
          f"  zeta = {None if z is None else fmt(z)}  color = {P.color4(A)}")

print("\nThe sequence i -> c(i) descends in X.  M spaces its terms out by norm.")
table = build_M(DescendingSeq(const, ctx), 81, ctx)
print("  first M values:", table.M[:8])

print("\nSearch the M window for a set whose w-size subsets all get color 0.")
res = greedy_homog_search(table.M_minus, lambda u: colorbar(u, table, P), 0, 200000,
                          ctx.omega_alpha)
print(f"  homogeneous set of size {len(res.H)} after {res.tested} colorings")

xs = extract_descending(res.H, table, P)
print(f"\nReading the top peel of each tail yields {len(xs)} X-elements:")
print("  ", xs[:15], "...")
print("  numerically increasing, hence descending in the reversed order:",
      all(a < b for a, b in zip(xs, xs[1:])))

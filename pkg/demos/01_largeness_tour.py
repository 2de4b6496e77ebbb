"""How big is a finite set, measured by an ordinal?

Walks from fundamental sequences to largeness and scattering.
"""

from ordlab.fundseq import fund, fund_set, norm
from ordlab.largeness import enumerate_exact, is_exact, is_large, scatter_list
from ordlab.ordinals import fmt, parse

print("Fundamental sequences pick a concrete predecessor for each base n.")
for a in ("w", "w^2", "w^w", "phi(1,0)"):
    x = parse(a)
    print(f"  {fmt(x):>10}:", ", ".join(f"[{n}]={fmt(fund(x, n))}" for n in (1, 2, 3)))

print("\nDescending along a set: w^2 meets 1, 2, 3, 4 in turn.")
x = parse("w^2")
for n in (1, 2, 3, 4):
    y = fund(x, n)
    print(f"  {fmt(x)}[{n}] = {fmt(y)}")
    x = y
print("  fund_set lands on", fmt(fund_set(parse("w^2"), (1, 2, 3, 4))), "so the set is exactly w^2-size.")

print("\nw-size sets are the ones with one more element than their minimum.")
for s in [(1, 2), (2, 3), (2, 3, 4), (3, 4, 5, 9)]:
    w = parse("w")
    kind = "exact" if is_exact(w, s) else "large" if is_large(w, s) else "small"
    print(f"  {s}: {kind}")

print("\nAll w-size subsets of {1,...,5}:")
print("  ", enumerate_exact(parse("w"), range(1, 6)))

print("\nNorms measure how deep an ordinal sits in the descent from the ceiling.")
print("  ", {a: norm(parse(a)) for a in ("0", "1", "2", "w", "w + 1", "w^2")})

print("\nScattering keeps an element, then skips a block big enough to bring w down to 0.")
print("  ", scatter_list(1, parse("w"), range(1, 80)))

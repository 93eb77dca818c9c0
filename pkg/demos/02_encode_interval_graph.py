"""Encode a small unit interval family and look at its adjacency matrix.

The matrix rows follow left endpoint order, and the block counts printed at
the end bound how many nodes each level of chi_E can have.
"""
from intervalbdd import IntervalSet, count_distinct_blocks, encode, extract_pi_matrix

I = IntervalSet(
    ((0, 8), (4, 12), (6, 14), (11, 20), (16, 24), (19, 28), (32, 40), (36, 44)),
    unit=True,
)
g = encode(I)
print(f"N={I.N}, n={g.n}, chi_E has {g.size()} nodes")
print("edges:", sorted(I.edges()))

m = extract_pi_matrix(g)
print(m.dump())

prof = g.bdd.level_profile(g.chi_E)
xs = g.vec("x")
for k in range(g.n):
    lv = g.bdd.level_of(xs[g.n - 1 - k])
    print(f"k={k}: {count_distinct_blocks(m, k)} distinct blocks, {prof.per_level[lv]} nodes on that level")

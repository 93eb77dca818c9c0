"""Comparison and threshold diagrams over interleaved bit vectors.

Builds ``|x| > |y|`` for two-bit vectors, prints its level profile and a DOT
rendering, then shows that a linear threshold with a handful of terms stays
narrow however many bits the vectors carry.
"""
from intervalbdd import BDD, ThresholdSpec, build_gt, build_threshold
from intervalbdd.builders import threshold_automaton, width_bound

bdd = BDD.interleaved(2, 2)
x, y = bdd.vec(0), bdd.vec(1)
gt = build_gt(bdd, x, y)
prof = bdd.level_profile(gt)
print("GT on 2-bit vectors:", prof.inner, "inner nodes, per level", prof.per_level)
print(bdd.to_dot(gt))

# 2|x| - 3|y| + |z| >= 5 for growing bit widths
spec = ThresholdSpec((2, -3, 1), 5)
print(f"{'n':>3} {'size':>6} {'max width':>10} {'bound':>6}")
for n in (2, 4, 8, 16, 32):
    store = BDD.interleaved(3, n)
    vecs = [store.vec(j) for j in range(3)]
    root, widths = threshold_automaton(store, vecs, spec)
    assert root == build_threshold(store, vecs, spec)
    print(f"{n:>3} {store.size(root):>6} {max(widths):>10} {width_bound(spec):>6}")

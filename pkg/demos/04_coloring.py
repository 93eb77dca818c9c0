"""Color unit and general interval graphs symbolically and compare with a sweep."""
from intervalbdd import coloring_general, coloring_unit, decode_colors, encode, max_overlap
from intervalbdd.generators import random_general_intervals, random_unit_intervals

I = random_unit_intervals(40, seed=1)
g = encode(I)
colors = decode_colors(g, coloring_unit(g))
print("unit:", max(colors) + 1, "colors, max overlap", max_overlap(I))
print(" ", colors)

J = random_general_intervals(40, seed=1)
h = encode(J)
colors = decode_colors(h, coloring_general(h))
bad = [(a, b) for a, b in J.edges() if colors[a] == colors[b]]
print("general:", max(colors) + 1, "colors, max overlap", max_overlap(J), "conflicts", bad)

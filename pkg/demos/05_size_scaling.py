"""How chi_E grows: random unit graphs against the near-worst-case family.

Unit graphs shrink relative to N/log N; the worst-case family grows like
N log N.  Sizes are printed per node so the two trends are easy to see.
"""
import math

from intervalbdd import encode
from intervalbdd.generators import random_unit_intervals, worst_case_instance

print(f"{'N':>6} {'unit size*logN/N':>17} {'worst size/N':>13}")
for e in range(6, 12):
    N = 1 << e
    unit = max(encode(random_unit_intervals(N, s)).size() for s in range(5))
    worst = sum(encode(worst_case_instance(N, s)).size() for s in range(5)) / 5
    print(f"{N:>6} {unit * e / N:>17.2f} {worst / N:>13.2f}")

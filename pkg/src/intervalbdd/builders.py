"""Direct constructions of comparison and threshold predicates.

All builders write into a caller-supplied :class:`~intervalbdd.bdd.BDD`.
Arguments are *bit vectors*: lists of bit indices with the least significant
bit first.  The store's order must test every bit of significance ``i`` (over
all involved vectors) before any bit of significance ``i - 1``, which is what
:meth:`VarOrder.interleaved` produces.  Nodes are created bottom-up through
the store's canonical constructor, so the results are reduced and identical
to what synthesis would produce for the same function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bdd import BDD, FALSE, TRUE

Vector = Sequence[int]

# (value if |x| < |y|, value if equal, value if |x| > |y|)
_RELATIONS = {
    "eq": (0, 1, 0),
    "ne": (1, 0, 1),
    "lt": (1, 0, 0),
    "le": (1, 1, 0),
    "gt": (0, 0, 1),
    "ge": (0, 1, 1),
}


def _groups(bdd: BDD, vectors: Sequence[Vector]) -> list[list[tuple[int, int]]]:
    """Per significance (most significant first): ``(level, vector index)`` sorted by level."""
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise ValueError("all vectors must have the same length")
    groups = []
    prev_max = -1
    for i in range(n - 1, -1, -1):
        g = sorted((bdd.level_of(v[i]), j) for j, v in enumerate(vectors))
        if g[0][0] <= prev_max:
            raise ValueError("order does not test the vectors with decreasing significance")
        prev_max = g[-1][0]
        groups.append(g)
    return groups


def build_compare(bdd: BDD, x: Vector, y: Vector, rel: str) -> int:
    """``|x| rel |y|`` for ``rel`` in eq, ne, lt, le, gt, ge."""
    v_lt, v_eq, v_gt = _RELATIONS[rel]
    mk = bdd._mk
    node = TRUE if v_eq else FALSE
    for g in reversed(_groups(bdd, [x, y])):
        (la, a), (lb, _) = g
        if a == 0:  # x bit tested first
            lo = mk(lb, node, v_lt)
            hi = mk(lb, v_gt, node)
        else:
            lo = mk(lb, node, v_gt)
            hi = mk(lb, v_lt, node)
        node = mk(la, lo, hi)
    bdd.ops.builds += 1
    bdd._touch()
    return node


def build_eq(bdd: BDD, x: Vector, y: Vector) -> int:
    return build_compare(bdd, x, y, "eq")


def build_gt(bdd: BDD, x: Vector, y: Vector) -> int:
    return build_compare(bdd, x, y, "gt")


def build_const_cmp(bdd: BDD, x: Vector, c: int, rel: str) -> int:
    """``|x| rel c`` for a constant ``0 <= c < 2**len(x)``."""
    n = len(x)
    if not 0 <= c < (1 << n):
        raise ValueError(f"constant {c} does not fit in {n} bits")
    v_lt, v_eq, v_gt = _RELATIONS[rel]
    mk = bdd._mk
    levels = [bdd.level_of(b) for b in x]
    if any(levels[i] <= levels[i + 1] for i in range(n - 1)):
        raise ValueError("order does not test x with decreasing significance")
    node = TRUE if v_eq else FALSE
    for i in range(n):
        if (c >> i) & 1:
            node = mk(levels[i], v_lt, node)
        else:
            node = mk(levels[i], node, v_gt)
    bdd.ops.builds += 1
    bdd._touch()
    return node


@dataclass(frozen=True)
class ThresholdSpec:
    """``sum(weights[j] * |x_j|) >= threshold`` with ``|weights[j]| <= W``."""

    weights: tuple[int, ...]
    threshold: int
    W: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        bound = max((abs(w) for w in self.weights), default=0)
        if self.W is None:
            object.__setattr__(self, "W", max(bound, 1))
        elif bound > self.W:
            raise ValueError(f"weight {bound} exceeds the bound W={self.W}")

    @property
    def k(self) -> int:
        return len(self.weights)

    def holds(self, values: Sequence[int]) -> bool:
        return sum(w * v for w, v in zip(self.weights, values)) >= self.threshold


def split_threshold(T: int, n: int) -> tuple[list[int], int]:
    """Digits ``T_0..T_{n-1}`` in {0, 1} and integer ``T_n`` with ``-T = sum T_i 2^i``."""
    low = (-T) % (1 << n)
    top = (-T - low) >> n
    return [(low >> i) & 1 for i in range(n)], top


def width_bound(spec: ThresholdSpec) -> int:
    """Per-level state bound of the carry automaton: ``2**(n-i) * |I| = 6(kW+1)``."""
    return 6 * (spec.k * spec.W + 1)


def threshold_automaton(bdd: BDD, vectors: Sequence[Vector], spec: ThresholdSpec) -> tuple[int, list[int]]:
    """Build the threshold OBDD and report the pre-reduction state count per read.

    States are exact integers: during phase ``i`` a state ``q`` stands for the
    accumulated value ``q / 2**(n-i)``.  Entering phase ``i - 1`` maps ``q`` to
    ``2*q + T_{i-1}``; reading bit ``x_j`` adds ``w_j * x_j``.  After the last
    read of phase ``i >= 1`` the state is accepted or rejected once it is
    farther than ``kW + 1`` from ``-T_n * 2**(n-i)``; phase 0 accepts iff
    ``q >= -T_n * 2**n``.
    """
    if len(vectors) != spec.k:
        raise ValueError(f"spec has {spec.k} weights but {len(vectors)} vectors were given")
    n = len(vectors[0])
    groups = _groups(bdd, vectors)
    t_bits, t_top = split_threshold(spec.threshold, n)
    margin = spec.k * spec.W + 1

    # Flattened reads: (level, weight, phase, closes_phase)
    reads = []
    for gi, g in enumerate(groups):
        phase = n - 1 - gi
        for pos, (lv, j) in enumerate(g):
            reads.append((lv, spec.weights[j], phase, pos == len(g) - 1))
    states: list[set[int]] = [set() for _ in reads]
    memo: dict[tuple[int, int], int] = {}
    mk = bdd._mk
    last = len(reads)

    def after(pos: int, q: int) -> int:
        lv, w, phase, closes = reads[pos]
        if not closes:
            return build(pos + 1, q)
        if phase == 0:
            return TRUE if q >= -t_top << n else FALSE
        centre = -t_top << (n - phase)
        if q >= centre + margin:
            return TRUE
        if q < centre - margin:
            return FALSE
        return build(pos + 1, 2 * q + t_bits[phase - 1])

    def build(pos: int, q: int) -> int:
        key = (pos, q)
        r = memo.get(key)
        if r is not None:
            return r
        states[pos].add(q)
        lv, w, _, _ = reads[pos]
        r = mk(lv, after(pos, q), after(pos, q + w))
        memo[key] = r
        return r

    root = build(0, t_bits[n - 1]) if last else TRUE
    bdd.ops.builds += 1
    bdd._touch()
    return root, [len(s) for s in states]


def build_threshold(bdd: BDD, vectors: Sequence[Vector], spec: ThresholdSpec) -> int:
    root, widths = threshold_automaton(bdd, vectors, spec)
    bound = width_bound(spec)
    if widths and max(widths) > bound:
        raise AssertionError(f"carry automaton width {max(widths)} exceeds {bound}")
    return root


def build_linear_eq(bdd: BDD, vectors: Sequence[Vector], weights: Sequence[int], const: int) -> int:
    """``sum(w_j * |x_j|) == const`` as the conjunction of two thresholds."""
    ge = build_threshold(bdd, vectors, ThresholdSpec(tuple(weights), const))
    le = build_threshold(bdd, vectors, ThresholdSpec(tuple(-w for w in weights), -const))
    return bdd.apply("and", ge, le)


def build_diff_eq(bdd: BDD, x: Vector, y: Vector, d: int) -> int:
    """``|x| - |y| == d``."""
    if abs(d) >= 1 << len(x):
        raise ValueError(f"difference {d} cannot be reached with {len(x)} bits")
    return build_linear_eq(bdd, [x, y], (1, -1), d)


def build_set(bdd: BDD, x: Vector, members) -> int:
    """Characteristic function of a set of integers ``0 <= v < 2**len(x)``."""
    n = len(x)
    levels = [bdd.level_of(b) for b in x]
    mask = [False] * (1 << n)
    for v in members:
        if not 0 <= v < 1 << n:
            raise ValueError(f"member {v} does not fit in {n} bits")
        mask[v] = True
    mk = bdd._mk

    def rec(s: int, base: int) -> int:
        if s == 0:
            return TRUE if mask[base] else FALSE
        s -= 1
        return mk(levels[s], rec(s, base), rec(s, base + (1 << s)))

    root = rec(n, 0)
    bdd.ops.builds += 1
    bdd._touch()
    return root


def build_relation(bdd: BDD, x: Vector, y: Vector, matrix) -> int:
    """``R(x, y) = matrix[|x|][|y|]`` for a square 0/1 matrix of side ``2**n``.

    Built as a quadtree over the matrix, so only the store's canonical
    constructor is involved.
    """
    n = len(x)
    side = 1 << n
    rows = [list(map(bool, r)) for r in matrix]
    if len(rows) != side or any(len(r) != side for r in rows):
        raise ValueError(f"matrix must be {side} x {side}")
    _groups(bdd, [x, y])
    lx = [bdd.level_of(b) for b in x]
    ly = [bdd.level_of(b) for b in y]
    mk = bdd._mk

    def rec(s: int, r0: int, c0: int) -> int:
        if s == 0:
            return TRUE if rows[r0][c0] else FALSE
        s -= 1
        h = 1 << s
        q00 = rec(s, r0, c0)
        q01 = rec(s, r0, c0 + h)
        q10 = rec(s, r0 + h, c0)
        q11 = rec(s, r0 + h, c0 + h)
        if lx[s] < ly[s]:
            return mk(lx[s], mk(ly[s], q00, q01), mk(ly[s], q10, q11))
        return mk(ly[s], mk(lx[s], q00, q10), mk(lx[s], q01, q11))

    root = rec(n, 0, 0)
    bdd.ops.builds += 1
    bdd._touch()
    return root

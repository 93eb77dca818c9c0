"""Symbolic graph algorithms over a shared interleaved store.

Every function works on vectors named after :data:`~intervalbdd.intervals.LAYOUT`
(``"x"``, ``"y"``, ``"z"`` ...), all of which live in one store created by
:func:`~intervalbdd.intervals.new_store`.  Scratch vectors are quantified away
before a result is returned, so results only mention the documented vectors.

Orders passed to :func:`enumerate_order` must be strict: ``O(x, x) = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bdd import BDD
from .builders import build_compare, build_const_cmp, build_linear_eq
from .intervals import LAYOUT, SymbolicGraph


class _Ops:
    """Name-based shorthands around a store laid out as :data:`LAYOUT`."""

    def __init__(self, bdd: BDD):
        if bdd.vectors != len(LAYOUT):
            raise ValueError(f"store must hold the {len(LAYOUT)} layout vectors")
        self.bdd = bdd
        self.n = bdd.bits

    def v(self, name: str) -> list[int]:
        return self.bdd.vec(LAYOUT.index(name))

    def bits(self, *names: str) -> list[int]:
        out = []
        for name in names:
            out.extend(self.v(name))
        return out

    def cmp(self, a: str, b: str, rel: str) -> int:
        return build_compare(self.bdd, self.v(a), self.v(b), rel)

    def const(self, a: str, rel: str, c: int) -> int:
        return build_const_cmp(self.bdd, self.v(a), c, rel)

    def lin(self, names: Sequence[str], weights: Sequence[int], c: int = 0) -> int:
        return build_linear_eq(self.bdd, [self.v(s) for s in names], weights, c)

    def ren(self, f: int, mapping: dict[str, str]) -> int:
        bits = {}
        for src, dst in mapping.items():
            bits.update(zip(self.v(src), self.v(dst)))
        return self.bdd.rename(f, bits)

    def and_(self, *fs: int) -> int:
        return self.bdd.conj(*fs)

    def or_(self, *fs: int) -> int:
        return self.bdd.disj(*fs)

    def not_(self, f: int) -> int:
        return self.bdd.negate(f)

    def ex(self, f: int, *names: str) -> int:
        return self.bdd.exists(f, self.bits(*names))

    def and_ex(self, f: int, g: int, *names: str) -> int:
        return self.bdd.and_exists(f, g, self.bits(*names))


# --------------------------------------------------------------------------
# Closure and ranking


def transitive_closure(bdd: BDD, R: int, x: str = "x", y: str = "y", z: str = "z") -> int:
    """Reflexive-transitive closure of ``R(x, y)`` by ``n + 1`` squaring rounds.

    A sequence of length one is a path, so the result contains ``|x| = |y|``.
    """
    o = _Ops(bdd)
    r = o.or_(R, o.cmp(x, y, "eq"))
    for _ in range(o.n + 1):
        left = o.ren(r, {y: z})
        right = o.ren(r, {x: z})
        r = o.and_ex(left, right, z)
    return r


@dataclass(frozen=True)
class RankRelation:
    """``eo(x, l) = 1`` iff element ``|x|`` has rank ``|l|``."""

    bdd: BDD
    eo: int
    x: tuple[int, ...]
    l: tuple[int, ...]

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.bdd.solutions(self.eo, [self.x, self.l]))

    def ranks(self) -> dict[int, int]:
        """Element to rank; raises if an element has several ranks."""
        out: dict[int, int] = {}
        for e, r in self.pairs():
            if e in out:
                raise ValueError(f"element {e} has ranks {out[e]} and {r}")
            out[e] = r
        return out


def enumerate_order(
    bdd: BDD,
    O: int,
    *,
    domain: int | None = None,
    x: str = "x",
    y: str = "y",
    z: str = "z",
    z2: str = "z2",
    l: str = "l",
    l2: str = "l2",
) -> RankRelation:
    """Rank every element by its distance from the first element of the strict order ``O(x, y)``.

    ``O`` may also be a strict weak order (a strict order on classes); then
    all members of a class share a rank.  Bitstrings outside the support of
    ``O`` have no predecessor and so get rank 0; pass ``domain(x)`` to drop
    them.
    """
    o = _Ops(bdd)
    n = o.n
    # direct successors
    via = o.and_ex(o.ren(O, {y: z}), o.ren(O, {x: z}), z)
    ds = o.and_(O, o.not_(via))
    eo = o.or_(
        o.and_(o.const(l, "eq", 0), o.cmp(x, y, "eq")),
        o.and_(o.const(l, "eq", 1), ds),
    )
    l_bits = o.v(l)
    for i in range(1, n + 1):
        half = 1 << (i - 1)
        near = o.const(l, "le", half)
        far = o.const(l, "gt", half)
        if i < n:
            far = o.and_(far, o.const(l, "le", 1 << i))
        # EO(x, z, half)
        first = bdd.cofactor(o.ren(eo, {y: z}), {b: (half >> k) & 1 for k, b in enumerate(l_bits)})
        # exists l2: EO(z, y, l2) and |l| - |l2| = half
        second = o.and_ex(o.ren(eo, {x: z, l: l2}), o.lin([l, l2], (1, -1), half), l2)
        eo = o.or_(o.and_(near, eo), o.and_(far, o.and_ex(first, second, z)))
    # rank = distance from an element with no predecessor
    minimal = o.not_(o.ex(o.ren(O, {x: z2, y: z}), z2))
    rank = o.and_ex(o.ren(eo, {x: z, y: x}), minimal, z)
    if domain is not None:
        rank = o.and_(rank, domain)
    return RankRelation(bdd, rank, tuple(o.v(x)), tuple(o.v(l)))


# --------------------------------------------------------------------------
# Matching


def successor_edges(g: SymbolicGraph) -> int:
    o = _Ops(g.bdd)
    return o.and_(g.chi_E, o.lin(["y", "x"], (1, -1), 1))


def maximum_matching_unit(g: SymbolicGraph) -> int:
    """Maximum matching of a unit interval graph as a symmetric ``chi_M(x, y)``.

    Each component is a run of consecutive labels joined by ``i -> i+1``
    edges; the matching takes every second edge of each run from its start.
    """
    o = _Ops(g.bdd)
    E = successor_edges(g)
    vx = g.chi_V
    vz = o.ren(vx, {"x": "z"})
    # nodes without a predecessor
    has_pred = o.ren(o.ex(E, "x"), {"y": "z"})
    first = o.and_(vz, o.not_(has_pred))
    # nodes with a successor, as a predicate on y
    has_succ = o.ren(o.ex(E, "y"), {"x": "y"})
    # reachable(z, x): z <= x and every y with z <= y < x has a successor
    gap = o.and_ex(o.and_(o.cmp("z", "y", "le"), o.cmp("y", "x", "lt")), o.not_(has_succ), "y")
    reach = o.and_(o.cmp("z", "x", "le"), o.not_(gap), vz, vx)
    # even distance from the start of the run, d in l
    even = o.lin(["x", "z", "l"], (1, -1, -2), 0)
    F = o.and_ex(o.and_(first, reach), even, "z", "l")
    M = o.and_(E, F)
    return o.or_(M, o.ren(M, {"x": "y", "y": "x"}))


def matching_pairs(g: SymbolicGraph, chi_M: int) -> list[tuple[int, int]]:
    xs, ys = g.vec("x"), g.vec("y")
    return sorted((a, b) for a, b in g.bdd.solutions(chi_M, [xs, ys]) if a < b)


def matching_size(g: SymbolicGraph, chi_M: int) -> int:
    return g.bdd.sat_count(chi_M, g.vec("x") + g.vec("y")) // 2


# --------------------------------------------------------------------------
# Coloring


def complement_edges(g: SymbolicGraph) -> int:
    o = _Ops(g.bdd)
    return o.and_(g.chi_V, o.ren(g.chi_V, {"x": "y"}), o.not_(g.chi_E), o.cmp("x", "y", "ne"))


def _left_count(o: _Ops, Ec: int) -> int:
    """``LE(x, y, l)``: number of left endpoints strictly between ``b_x`` and ``a_y``."""
    H2 = o.and_(o.cmp("x", "z", "lt"), o.cmp("z", "y", "le"), o.ren(Ec, {"y": "z"}))
    smaller = o.and_ex(o.ren(H2, {"z": "z2"}), o.cmp("z2", "z", "lt"), "z2")
    dist = o.lin(["y", "z", "l"], (1, -1, -1), 0)
    return o.and_(o.cmp("x", "y", "le"), o.and_ex(o.and_(H2, o.not_(smaller)), dist, "z"))


def _right_count_unit(o: _Ops, Ec: int) -> int:
    """``RE(x, y, l)`` for unit instances, where right endpoints follow labels."""
    H1 = o.and_(o.cmp("x", "z", "le"), o.cmp("z", "y", "lt"), o.ren(Ec, {"x": "z"}))
    larger = o.and_ex(o.ren(H1, {"z": "z2"}), o.cmp("z2", "z", "gt"), "z2")
    dist = o.lin(["z", "x", "l"], (1, -1, -1), 0)
    return o.and_(o.cmp("x", "y", "le"), o.and_ex(o.and_(H1, o.not_(larger)), dist, "z"))


def _color_from_counts(g: SymbolicGraph, RE: int, LE: int) -> int:
    o = _Ops(g.bdd)
    balanced = o.and_ex(RE, LE, "l")
    earlier = o.and_ex(o.cmp("z", "y", "lt"), o.ren(balanced, {"y": "z"}), "z")
    related = o.and_(balanced, o.not_(earlier))
    same = transitive_closure(g.bdd, related)
    # same(x2, x): x2 starts the chain containing x
    later = o.and_ex(o.ren(same, {"x": "z", "y": "x"}), o.cmp("z", "x", "lt"), "z")
    head = o.and_(o.ren(o.not_(later), {"x": "x2"}), o.ren(same, {"x": "x2", "y": "x"}))
    head_y = o.ren(head, {"x": "y", "x2": "y2"})
    cmp_heads = o.and_ex(head_y, o.cmp("x2", "y2", "lt"), "y2")
    order = o.and_ex(head, cmp_heads, "x2")
    vx, vy = g.chi_V, o.ren(g.chi_V, {"x": "y"})
    order = o.and_(order, vx, vy)
    return enumerate_order(g.bdd, order, domain=vx).eo


def coloring_unit(g: SymbolicGraph) -> int:
    """Optimal coloring ``COLOR(x, l)`` of a unit interval graph."""
    o = _Ops(g.bdd)
    Ec = complement_edges(g)
    return _color_from_counts(g, _right_count_unit(o, Ec), _left_count(o, Ec))


def right_endpoint_order(g: SymbolicGraph, strict: bool = True) -> int:
    """An order ``EO(x, y)`` on right endpoints consistent with some representation of ``g``.

    Interval ``i`` is placed by its reach, the largest label ``j >= i`` it
    meets (itself if none); ties go to the smaller label.  ``strict=False``
    adds ``EO(x, x)`` for every node.
    """
    o = _Ops(g.bdd)
    vx = g.chi_V
    touch = o.or_(g.chi_E, o.and_(o.cmp("x", "y", "eq"), vx))
    # R(x, x2): x2 is the reach of x
    fwd = o.and_(o.cmp("x", "x2", "le"), o.ren(touch, {"y": "x2"}))
    beyond = o.and_ex(o.ren(fwd, {"x2": "x3"}), o.cmp("x3", "x2", "gt"), "x3")
    R = o.and_(fwd, o.not_(beyond))
    Ry = o.ren(R, {"x": "y", "x2": "y2"})
    before = o.or_(o.cmp("x2", "y2", "lt"), o.and_(o.cmp("x2", "y2", "eq"), o.cmp("x", "y", "lt")))
    eo = o.and_ex(R, o.and_ex(Ry, before, "y2"), "x2")
    if not strict:
        eo = o.or_(eo, o.and_(o.cmp("x", "y", "eq"), vx))
    return eo


def coloring_general(g: SymbolicGraph) -> int:
    """Optimal coloring ``COLOR(x, l)`` of an arbitrary interval graph."""
    o = _Ops(g.bdd)
    Ec = complement_edges(g)
    EO = right_endpoint_order(g, strict=True)
    EEO = enumerate_order(g.bdd, EO, domain=g.chi_V).eo
    # z ends at or after x and before a_y
    H1 = o.and_(o.not_(o.ren(EO, {"x": "z", "y": "x"})), o.ren(EO, {"x": "z"}), o.ren(Ec, {"x": "z"}))
    later = o.and_ex(o.ren(H1, {"z": "z2"}), o.ren(EO, {"x": "z", "y": "z2"}), "z2")
    last = o.and_(H1, o.not_(later))
    # rank(z) - rank(x) = l
    rx = o.ren(EEO, {"l": "l2"})
    rz = o.ren(EEO, {"x": "z", "l": "l3"})
    diff = o.and_ex(rz, o.lin(["l3", "l2", "l"], (1, -1, -1), 0), "l3")
    diff = o.and_ex(rx, diff, "l2")
    RE = o.and_(o.cmp("x", "y", "lt"), o.and_ex(last, diff, "z"))
    return _color_from_counts(g, RE, _left_count(o, Ec))


def decode_colors(g: SymbolicGraph, color: int) -> list[int]:
    """Colors of nodes ``0..N-1``; raises unless each node has exactly one."""
    out = [-1] * g.N
    for v, c in g.bdd.solutions(color, [g.vec("x"), g.vec("l")]):
        if v >= g.N:
            raise ValueError(f"non-node {v} received color {c}")
        if out[v] != -1:
            raise ValueError(f"node {v} has colors {out[v]} and {c}")
        out[v] = c
    if -1 in out:
        raise ValueError(f"node {out.index(-1)} has no color")
    return out

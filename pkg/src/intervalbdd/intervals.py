"""Interval sets, their symbolic encoding, and explicit reference algorithms.

Intervals are labelled ``0..N-1`` by ascending left endpoint.  Endpoints are
integers and all ``2N`` of them are distinct, so intersection is never
decided by a tie.

With that labelling, the later intervals that meet interval ``i`` are exactly
the consecutive labels ``i+1 .. reach[i]``.  The encoder exploits this: each
row/column block of the adjacency matrix is decided from block-wise minima
and maxima of ``reach`` without touching individual entries.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .bdd import BDD, FALSE, TRUE
from .builders import build_const_cmp

# Vector roles used by the graph algorithms, in their interleaving order.
LAYOUT = ("x", "y", "z", "z2", "l", "l2", "l3", "x2", "y2", "x3", "y3")


@dataclass(frozen=True)
class IntervalSet:
    """Closed intervals ``[a, b]`` sorted by left endpoint.

    ``unit`` marks a proper (unit) family: right endpoints appear in the same
    order as left endpoints, so no interval contains another.
    """

    intervals: tuple[tuple[int, int], ...]
    unit: bool = False

    def __post_init__(self):
        iv = tuple((int(a), int(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", iv)
        ends = [e for ab in iv for e in ab]
        if len(set(ends)) != len(ends):
            raise ValueError("endpoints must be pairwise distinct")
        for i, (a, b) in enumerate(iv):
            if not a < b:
                raise ValueError(f"interval {i} has a >= b: {(a, b)}")
            if i and iv[i - 1][0] > a:
                raise ValueError("intervals must be sorted by left endpoint")
            if self.unit and i and iv[i - 1][1] > b:
                raise ValueError(f"interval {i - 1} contains interval {i}; not a unit family")

    @classmethod
    def from_unsorted(cls, pairs: Iterable[tuple[int, int]], unit: bool | None = None) -> IntervalSet:
        iv = sorted((int(a), int(b)) for a, b in pairs)
        if unit is None:
            unit = all(iv[i][1] < iv[i + 1][1] for i in range(len(iv) - 1))
        return cls(tuple(iv), unit)

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def N(self) -> int:
        return len(self.intervals)

    @property
    def n(self) -> int:
        """Bits per node label; at least one so the encoding has variables."""
        return max(1, math.ceil(math.log2(self.N))) if self.N > 1 else 1

    @cached_property
    def reach(self) -> list[int]:
        """``reach[i]`` is the largest label ``j >= i`` whose interval meets interval ``i``."""
        lefts = [a for a, _ in self.intervals]
        return [bisect.bisect_left(lefts, b) - 1 for _, b in self.intervals]

    def intersects(self, i: int, j: int) -> bool:
        (a1, b1), (a2, b2) = self.intervals[i], self.intervals[j]
        return a1 <= b2 and a2 <= b1

    def edges(self) -> set[tuple[int, int]]:
        """Undirected edges ``(i, j)`` with ``i < j``."""
        return {(i, j) for i, r in enumerate(self.reach) for j in range(i + 1, r + 1)}

    # ------------------------------------------------------------- text format
    def to_text(self) -> str:
        head = f"{self.N} {'unit' if self.unit else 'general'}"
        return "\n".join([head] + [f"{a} {b}" for a, b in self.intervals]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> IntervalSet:
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty interval file")
        head = lines[0].split()
        if len(head) != 2 or head[1] not in ("unit", "general"):
            raise ValueError(f"bad header line: {lines[0]!r}")
        N = int(head[0])
        body = lines[1:]
        if len(body) != N:
            raise ValueError(f"header announces {N} intervals, found {len(body)}")
        pairs = []
        for ln in body:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad interval line: {ln!r}")
            pairs.append((int(parts[0]), int(parts[1])))
        return cls(tuple(pairs), head[1] == "unit")

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def read(cls, path: str | Path) -> IntervalSet:
        return cls.from_text(Path(path).read_text())


@dataclass
class SymbolicGraph:
    """``chi_E`` over vectors x, y and ``chi_V`` over x in a shared store."""

    bdd: BDD
    chi_E: int
    chi_V: int
    n: int
    N: int
    layout: tuple[str, ...] = LAYOUT
    intervals: IntervalSet | None = field(default=None, repr=False)

    def vec(self, name: str) -> list[int]:
        return self.bdd.vec(self.layout.index(name))

    def rename(self, f: int, mapping: dict[str, str]) -> int:
        """Rename whole vectors, e.g. ``{"x": "z"}``."""
        bits = {}
        for src, dst in mapping.items():
            bits.update(zip(self.vec(src), self.vec(dst)))
        return self.bdd.rename(f, bits)

    def size(self) -> int:
        return self.bdd.level_profile(self.chi_E).size


def new_store(n: int, layout: Sequence[str] = LAYOUT) -> BDD:
    return BDD.interleaved(len(layout), n)


def _block_tables(values: list[int], n: int) -> tuple[list[list[int]], list[list[int]]]:
    """Max and min of ``values`` (padded with -1 to ``2**n``) over aligned blocks of every size."""
    arr = np.full(1 << n, -1, dtype=np.int64)
    arr[: len(values)] = values
    bmax, bmin = [], []
    for s in range(n + 1):
        view = arr.reshape(-1, 1 << s)
        bmax.append(view.max(axis=1).tolist())
        bmin.append(view.min(axis=1).tolist())
    return bmax, bmin


def encode(intervals: IntervalSet, *, method: str = "direct", bdd: BDD | None = None) -> SymbolicGraph:
    """Encode an interval graph as ``chi_E(x, y)`` and ``chi_V(x) = |x| < N``.

    ``method="direct"`` builds ``chi_E`` top-down over matrix blocks;
    ``method="synthesis"`` ORs one range predicate per node and symmetrises.
    Both give the same node because the store is canonical.
    """
    n = intervals.n
    N = intervals.N
    if bdd is None:
        bdd = new_store(n)
    elif bdd.bits != n:
        raise ValueError(f"store uses {bdd.bits}-bit vectors, instance needs {n}")
    x = bdd.vec(LAYOUT.index("x"))
    y = bdd.vec(LAYOUT.index("y"))
    if method == "direct":
        chi_E = _encode_direct(bdd, intervals, x, y)
    elif method == "synthesis":
        chi_E = _encode_synthesis(bdd, intervals, x, y)
    else:
        raise ValueError(f"unknown method {method!r}")
    chi_V = TRUE if N >= 1 << n else build_const_cmp(bdd, x, N, "lt")
    return SymbolicGraph(bdd, chi_E, chi_V, n, N, LAYOUT, intervals)


def _encode_direct(bdd: BDD, intervals: IntervalSet, x: list[int], y: list[int]) -> int:
    n = len(x)
    reach = intervals.reach
    bmax, bmin = _block_tables(reach, n)
    # has_next[i] = number of labels j < i adjacent to j + 1
    has_next = [0] * ((1 << n) + 1)
    for i in range(1 << n):
        has_next[i + 1] = has_next[i] + (i < len(reach) and reach[i] > i)
    lx = [bdd.level_of(b) for b in x]
    ly = [bdd.level_of(b) for b in y]
    for s in range(n - 1):
        if max(lx[s + 1], ly[s + 1]) >= min(lx[s], ly[s]):
            raise ValueError("store order is not interleaved with decreasing significance")
    mk = bdd._mk

    def rec(s: int, r0: int, c0: int) -> int:
        # Block of side 2**s with corner (r0, c0); bits s-1..0 remain.
        L = 1 << s
        if r0 == c0:
            if not has_next[r0 + L - 1] - has_next[r0]:
                return FALSE
        elif r0 > c0:
            j = c0 >> s
            if bmax[s][j] < r0:
                return FALSE
            if bmin[s][j] >= r0 + L - 1:
                return TRUE
        else:
            j = r0 >> s
            if bmax[s][j] < c0:
                return FALSE
            if bmin[s][j] >= c0 + L - 1:
                return TRUE
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


def _encode_synthesis(bdd: BDD, intervals: IntervalSet, x: list[int], y: list[int]) -> int:
    n = len(x)
    acc = FALSE
    for i, r in enumerate(intervals.reach):
        if r <= i:
            continue
        row = build_const_cmp(bdd, x, i, "eq")
        lo = build_const_cmp(bdd, y, i, "gt")
        hi = build_const_cmp(bdd, y, r, "le")
        acc = bdd.apply("or", acc, bdd.conj(row, lo, hi))
    swap = dict(zip(x, y))
    swap.update(zip(y, x))
    return bdd.apply("or", acc, bdd.rename(acc, swap))


# ------------------------------------------------------------ matrix views
@dataclass(frozen=True)
class PiMatrix:
    """π-ordered adjacency matrix as a ``2**n x 2**n`` uint8 array."""

    a: np.ndarray

    @property
    def n(self) -> int:
        return int(self.a.shape[0]).bit_length() - 1

    def block(self, k: int, i: int, j: int) -> np.ndarray:
        L = self.a.shape[0] >> k
        return self.a[i * L:(i + 1) * L, j * L:(j + 1) * L]

    def rows(self) -> list[str]:
        return ["".join(map(str, row)) for row in self.a.tolist()]

    def dump(self) -> str:
        return "\n".join(self.rows()) + "\n"


def extract_pi_matrix(g: SymbolicGraph, *, cap: int = 12) -> PiMatrix:
    """Tabulate ``chi_E``: the l-th tested x (y) variable gives row (column) weight ``2**(n-l-1)``."""
    n = g.n
    if n > cap:
        raise ValueError(f"n = {n} exceeds the matrix cap {cap}")
    bdd = g.bdd
    xs, ys = g.vec("x"), g.vec("y")
    xset = set(xs)
    var_levels = sorted((bdd.level_of(b), 0 if b in xset else 1) for b in xs + ys)
    if not bdd.support(g.chi_E) <= set(xs + ys):
        raise ValueError("chi_E depends on bits outside x and y")
    size = 1 << n
    a = np.zeros((size, size), dtype=np.uint8)

    def fill(u: int, idx: int, r: int, c: int, rs: int, cs: int) -> None:
        if u < 2:
            if u:
                a[r:r + rs, c:c + cs] = 1
            return
        lv, which = var_levels[idx]
        if which == 0:
            h = rs >> 1
            if bdd.level(u) == lv:
                fill(bdd.low(u), idx + 1, r, c, h, cs)
                fill(bdd.high(u), idx + 1, r + h, c, h, cs)
            else:
                fill(u, idx + 1, r, c, h, cs)
                fill(u, idx + 1, r + h, c, h, cs)
        else:
            h = cs >> 1
            if bdd.level(u) == lv:
                fill(bdd.low(u), idx + 1, r, c, rs, h)
                fill(bdd.high(u), idx + 1, r, c + h, rs, h)
            else:
                fill(u, idx + 1, r, c, rs, h)
                fill(u, idx + 1, r, c + h, rs, h)

    fill(g.chi_E, 0, 0, 0, size, size)
    return PiMatrix(a)


def count_distinct_blocks(m: PiMatrix | np.ndarray, k: int) -> int:
    """Number of distinct ``2**(n-k)``-sided blocks in the ``2**k x 2**k`` grid."""
    a = m.a if isinstance(m, PiMatrix) else np.asarray(m)
    size = a.shape[0]
    n = size.bit_length() - 1
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}")
    L = size >> k
    blocks = a.reshape(1 << k, L, 1 << k, L).transpose(0, 2, 1, 3).reshape(-1, L * L)
    return len({row.tobytes() for row in np.ascontiguousarray(blocks)})


def column_runs(m: PiMatrix | np.ndarray, N: int) -> list[int]:
    """Length of the run of ones directly below the diagonal in each column ``< N``."""
    a = m.a if isinstance(m, PiMatrix) else np.asarray(m)
    runs = []
    for j in range(N):
        col = a[j + 1:N, j]
        zeros = np.flatnonzero(col == 0)
        runs.append(int(zeros[0]) if zeros.size else int(col.size))
    return runs


# --------------------------------------------------------- explicit oracles
def components(intervals: IntervalSet) -> list[list[int]]:
    """Connected components as runs of consecutive labels."""
    comps: list[list[int]] = []
    furthest = -1
    for i, r in enumerate(intervals.reach):
        if i > furthest:
            comps.append([])
        comps[-1].append(i)
        furthest = max(furthest, r)
    return comps


def explicit_max_matching(intervals: IntervalSet) -> list[tuple[int, int]]:
    """Scan the labels and pair consecutive nodes inside each component."""
    if not intervals.unit:
        raise ValueError("the scan matching is only maximum on unit interval graphs")
    reach = intervals.reach
    pairs = []
    i = 0
    while i < intervals.N - 1:
        if reach[i] >= i + 1:
            pairs.append((i, i + 1))
            i += 2
        else:
            i += 1
    return pairs


def explicit_greedy_coloring(intervals: IntervalSet) -> list[int]:
    """Stack-based greedy over the sorted endpoints; optimal for interval graphs."""
    events = []
    for i, (a, b) in enumerate(intervals.intervals):
        events.append((a, 1, i))
        events.append((b, 0, i))
    events.sort()
    colors = [-1] * intervals.N
    free: list[int] = []
    used = 0
    for _, is_left, i in events:
        if is_left:
            if free:
                colors[i] = free.pop()
            else:
                colors[i] = used
                used += 1
        else:
            free.append(colors[i])
    return colors


def max_overlap(intervals: IntervalSet) -> int:
    """Largest number of intervals sharing a point (sweep line)."""
    events = sorted([(a, 1) for a, _ in intervals.intervals] + [(b, -1) for _, b in intervals.intervals])
    best = cur = 0
    for _, d in events:
        cur += d
        best = max(best, cur)
    return best

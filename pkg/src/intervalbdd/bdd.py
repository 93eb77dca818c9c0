"""Reduced ordered binary decision diagrams over a fixed variable order.

Nodes live in a single append-only store owned by a :class:`BDD` manager and
are referred to by plain integers.  ``0`` and ``1`` are the constant sinks.
Inner nodes are hash-consed on ``(level, lo, hi)`` so two routes to the same
Boolean function always return the same integer.

Variables are addressed by *bit index* (a flat numbering that does not depend
on the order).  The manager's :class:`VarOrder` maps bit indices to levels;
level 0 is tested first, sinks sit at level ``m``.

For multi-vector functions the convention is: vector ``v`` of ``n`` bits owns
bit indices ``v*n .. v*n+n-1`` and bit ``v*n+i`` has significance ``2**i``.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields
from typing import Iterable, Iterator, Mapping, Sequence

FALSE = 0
TRUE = 1

# Binary operators as 4-bit truth tables: bit (2*f + g) holds op(f, g).
OPS = {
    "and": 0b1000,
    "or": 0b1110,
    "xor": 0b0110,
    "nand": 0b0111,
    "nor": 0b0001,
    "xnor": 0b1001,
    "equiv": 0b1001,
    "imp": 0b1011,  # f -> g
    "diff": 0b0100,  # f and not g
}
_COMMUTATIVE = {0b1000, 0b1110, 0b0110, 0b0111, 0b0001, 0b1001}

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class BDDError(Exception):
    """Raised on invalid levels, bit indices or cross-store use."""


@dataclass(frozen=True)
class VarOrder:
    """A permutation of bit indices; ``perm[level]`` is the bit tested at ``level``."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(b) for b in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a permutation of 0..{len(perm) - 1}: {perm}")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, m: int) -> VarOrder:
        return cls(tuple(range(m)))

    @classmethod
    def interleaved(cls, k: int, n: int) -> VarOrder:
        """k-interleaved order testing bits with decreasing significance.

        The sequence is x1_{n-1}, ..., xk_{n-1}, ..., x1_0, ..., xk_0 where
        bit ``i`` of vector ``v`` has flat index ``v*n + i``.
        """
        if k < 1 or n < 1:
            raise ValueError("k and n must be positive")
        return cls(tuple(v * n + i for i in range(n - 1, -1, -1) for v in range(k)))

    def __len__(self) -> int:
        return len(self.perm)

    def level_of(self) -> list[int]:
        levels = [0] * len(self.perm)
        for level, bit in enumerate(self.perm):
            levels[bit] = level
        return levels


@dataclass
class OpCounter:
    """Counts of functional operations issued through the public API."""

    syntheses: int = 0
    quantifier_bit_ops: int = 0
    quantifier_blocks: int = 0
    negations: int = 0
    restrictions: int = 0
    renames: int = 0
    builds: int = 0
    peak_store_nodes: int = 0

    def snapshot(self) -> OpCounter:
        return OpCounter(**self.as_dict())

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def since(self, earlier: OpCounter) -> OpCounter:
        """Counts accumulated after ``earlier``; the peak is kept absolute."""
        d = {k: v - getattr(earlier, k) for k, v in self.as_dict().items()}
        d["peak_store_nodes"] = self.peak_store_nodes
        return OpCounter(**d)


@dataclass(frozen=True)
class LevelProfile:
    per_level: tuple[int, ...]
    sinks: int
    inner: int = field(init=False)
    size: int = field(init=False)
    width: int = field(init=False)

    def __post_init__(self):
        inner = sum(self.per_level)
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "size", inner + self.sinks)
        object.__setattr__(self, "width", max(self.per_level, default=0))


class BDD:
    """Shared node store plus the operations on it.

    Not thread safe: every operation mutates the unique table and caches.
    """

    def __init__(self, order: VarOrder | int, *, vectors: int | None = None, bits: int | None = None):
        if isinstance(order, int):
            order = VarOrder.identity(order)
        self.order = order
        self.num_vars = m = len(order)
        self._level_of_bit = order.level_of()
        # Per-node arrays; sinks carry level m.
        self._level = [m, m]
        self._lo = [0, 1]
        self._hi = [0, 1]
        self._unique: dict[int, int] = {}
        self._cache: dict[int, int] = {}
        self._not_cache: dict[int, int] = {}
        self._quant_caches: dict[frozenset, dict] = {}
        self._rename_caches: dict[tuple, dict] = {}
        self._ite_var_cache: dict[int, int] = {}
        self.ops = OpCounter()
        # Optional vector geometry for interleaved stores.
        self.vectors = vectors
        self.bits = bits

    @classmethod
    def interleaved(cls, k: int, n: int) -> BDD:
        """Store over ``k`` vectors of ``n`` bits in k-interleaved decreasing order."""
        return cls(VarOrder.interleaved(k, n), vectors=k, bits=n)

    # ------------------------------------------------------------------ basics
    def __len__(self) -> int:
        return len(self._level)

    def vec(self, v: int) -> list[int]:
        """Bit indices of vector ``v`` by increasing significance."""
        if self.bits is None or self.vectors is None:
            raise BDDError("store was not created with vector geometry")
        if not 0 <= v < self.vectors:
            raise BDDError(f"vector {v} out of range")
        n = self.bits
        return list(range(v * n, v * n + n))

    def level_of(self, bit: int) -> int:
        if not 0 <= bit < self.num_vars:
            raise BDDError(f"bit {bit} out of range 0..{self.num_vars - 1}")
        return self._level_of_bit[bit]

    def level(self, u: int) -> int:
        return self._level[u]

    def low(self, u: int) -> int:
        return self._lo[u]

    def high(self, u: int) -> int:
        return self._hi[u]

    def is_const(self, u: int) -> bool:
        return u < 2

    def _check(self, u: int) -> None:
        if not 0 <= u < len(self._level):
            raise BDDError(f"node {u} does not belong to this store")

    def _touch(self) -> None:
        if len(self._level) > self.ops.peak_store_nodes:
            self.ops.peak_store_nodes = len(self._level)

    def clear_caches(self) -> None:
        self._cache.clear()
        self._not_cache.clear()
        self._quant_caches.clear()
        self._rename_caches.clear()
        self._ite_var_cache.clear()

    def mk_node(self, level: int, lo: int, hi: int) -> int:
        """Canonical constructor: returns the unique node for ``(level, lo, hi)``."""
        if not 0 <= level < self.num_vars:
            raise BDDError(f"level {level} out of range")
        self._check(lo)
        self._check(hi)
        if self._level[lo] <= level or self._level[hi] <= level:
            raise BDDError("children must lie strictly below the new node")
        u = self._mk(level, lo, hi)
        self._touch()
        return u

    def _mk(self, level: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (((level << 32) | lo) << 32) | hi
        u = self._unique.get(key)
        if u is None:
            u = len(self._level)
            self._level.append(level)
            self._lo.append(lo)
            self._hi.append(hi)
            self._unique[key] = u
        return u

    def var(self, bit: int) -> int:
        u = self._mk(self.level_of(bit), FALSE, TRUE)
        self._touch()
        return u

    def nvar(self, bit: int) -> int:
        u = self._mk(self.level_of(bit), TRUE, FALSE)
        self._touch()
        return u

    # ------------------------------------------------------------- synthesis
    def apply(self, op: str | int, f: int, g: int) -> int:
        """Binary synthesis ``f op g``; ``op`` is a name from :data:`OPS` or a truth table."""
        table = OPS[op] if isinstance(op, str) else op
        self._check(f)
        self._check(g)
        self.ops.syntheses += 1
        r = self._apply(table, f, g)
        self._touch()
        return r

    def _apply(self, op: int, f: int, g: int) -> int:
        level = self._level
        lo_ = self._lo
        hi_ = self._hi
        cache = self._cache
        mk = self._mk
        commutative = op in _COMMUTATIVE
        # Rows of the truth table for constant f / constant g.
        f0 = (op & 1, (op >> 1) & 1)  # op(0, 0), op(0, 1)
        f1 = ((op >> 2) & 1, (op >> 3) & 1)  # op(1, 0), op(1, 1)
        g0 = (op & 1, (op >> 2) & 1)  # op(0, 0), op(1, 0)
        g1 = ((op >> 1) & 1, (op >> 3) & 1)  # op(0, 1), op(1, 1)
        diag = (op & 1, (op >> 3) & 1)  # op(0, 0), op(1, 1)

        def rec(f, g):
            if f < 2 and g < 2:
                return (op >> (2 * f + g)) & 1
            if f < 2:
                row = f1 if f else f0
                if row[0] == row[1]:
                    return row[0]
                if row == (0, 1):
                    return g
            if g < 2:
                row = g1 if g else g0
                if row[0] == row[1]:
                    return row[0]
                if row == (0, 1):
                    return f
            if f == g:
                if diag[0] == diag[1]:
                    return diag[0]
                if diag == (0, 1):
                    return f
            if commutative and f > g:
                f, g = g, f
            key = (((f << 32) | g) << 4) | op
            r = cache.get(key)
            if r is not None:
                return r
            lf = level[f]
            lg = level[g]
            if lf == lg:
                top = lf
                r = mk(top, rec(lo_[f], lo_[g]), rec(hi_[f], hi_[g]))
            elif lf < lg:
                top = lf
                r = mk(top, rec(lo_[f], g), rec(hi_[f], g))
            else:
                top = lg
                r = mk(top, rec(f, lo_[g]), rec(f, hi_[g]))
            cache[key] = r
            return r

        return rec(f, g)

    def conj(self, *fs: int) -> int:
        r = TRUE
        for f in fs:
            r = self.apply("and", r, f)
        return r

    def disj(self, *fs: int) -> int:
        r = FALSE
        for f in fs:
            r = self.apply("or", r, f)
        return r

    def negate(self, f: int) -> int:
        self._check(f)
        self.ops.negations += 1
        r = self._not(f)
        self._touch()
        return r

    def _not(self, f: int) -> int:
        level = self._level
        lo_ = self._lo
        hi_ = self._hi
        cache = self._not_cache
        mk = self._mk

        def rec(f):
            if f < 2:
                return 1 - f
            r = cache.get(f)
            if r is None:
                r = mk(level[f], rec(lo_[f]), rec(hi_[f]))
                cache[f] = r
            return r

        return rec(f)

    def ite(self, i: int, t: int, e: int) -> int:
        """``(i and t) or (not i and e)`` as three syntheses and a negation."""
        return self.apply("or", self.apply("and", i, t), self.apply("and", self.negate(i), e))

    # ------------------------------------------------------------ restriction
    def restrict(self, f: int, bit: int, value: int) -> int:
        """Cofactor ``f|bit=value``."""
        return self.cofactor(f, {bit: value})

    def cofactor(self, f: int, assignment: Mapping[int, int]) -> int:
        """Replace every bit in ``assignment`` by its constant."""
        self._check(f)
        fix = {}
        for bit, value in assignment.items():
            if value not in (0, 1, True, False):
                raise BDDError(f"value for bit {bit} must be 0 or 1")
            fix[self.level_of(bit)] = int(value)
        self.ops.restrictions += 1
        if not fix:
            return f
        level = self._level
        lo_ = self._lo
        hi_ = self._hi
        mk = self._mk
        last = max(fix)
        memo: dict[int, int] = {}

        def rec(u):
            lv = level[u]
            if lv > last:
                return u
            r = memo.get(u)
            if r is not None:
                return r
            c = fix.get(lv)
            if c is None:
                r = mk(lv, rec(lo_[u]), rec(hi_[u]))
            else:
                r = rec(hi_[u] if c else lo_[u])
            memo[u] = r
            return r

        r = rec(f)
        self._touch()
        return r

    # --------------------------------------------------------- quantification
    def quantify(self, f: int, bits: Iterable[int], q: str = "exists") -> int:
        """Existential or universal quantification over ``bits``."""
        bits = list(bits)
        if q == "exists":
            return self.exists(f, bits)
        if q == "forall":
            return self.forall(f, bits)
        raise ValueError(f"unknown quantifier {q!r}")

    def exists(self, f: int, bits: Iterable[int]) -> int:
        return self.and_exists(f, TRUE, bits, _count_synthesis=False)

    def forall(self, f: int, bits: Iterable[int]) -> int:
        return self.negate(self.exists(self.negate(f), bits))

    def and_exists(self, f: int, g: int, bits: Iterable[int], *, _count_synthesis: bool = True) -> int:
        """Relational product ``exists bits: f and g`` in one pass."""
        self._check(f)
        self._check(g)
        levels = frozenset(self.level_of(b) for b in bits)
        if _count_synthesis:
            self.ops.syntheses += 1
        self.ops.quantifier_bit_ops += len(levels)
        self.ops.quantifier_blocks += 1
        if not levels:
            r = self._apply(OPS["and"], f, g)
            self._touch()
            return r
        cache = self._quant_caches.get(levels)
        if cache is None:
            cache = self._quant_caches[levels] = {}
        level = self._level
        lo_ = self._lo
        hi_ = self._hi
        mk = self._mk
        apply_and = self._apply
        AND = OPS["and"]
        OR = OPS["or"]
        last = max(levels)

        def rec(f, g):
            if f == 0 or g == 0:
                return 0
            if f == 1 and g == 1:
                return 1
            if f > g:
                f, g = g, f
            lf = level[f]
            lg = level[g]
            top = lf if lf < lg else lg
            if top > last:
                return apply_and(AND, f, g)
            key = (f << 32) | g
            r = cache.get(key)
            if r is not None:
                return r
            if lf == top:
                f0, f1 = lo_[f], hi_[f]
            else:
                f0 = f1 = f
            if lg == top:
                g0, g1 = lo_[g], hi_[g]
            else:
                g0 = g1 = g
            if top in levels:
                r0 = rec(f0, g0)
                if r0 == 1:
                    r = 1
                else:
                    r = apply_and(OR, r0, rec(f1, g1))
            else:
                r = mk(top, rec(f0, g0), rec(f1, g1))
            cache[key] = r
            return r

        r = rec(f, g)
        self._touch()
        return r

    # --------------------------------------------------------------- renaming
    def rename(self, f: int, mapping: Mapping[int, int]) -> int:
        """Substitute variables: bit ``b`` of ``f`` is replaced by bit ``mapping[b]``.

        The mapping must be injective on the bits ``f`` depends on; it need
        not respect the variable order.
        """
        self._check(f)
        self.ops.renames += 1
        lmap = {}
        for src, dst in mapping.items():
            if src != dst:
                lmap[self.level_of(src)] = self.level_of(dst)
        if not lmap:
            return f
        if len(set(lmap.values())) != len(lmap):
            raise BDDError("rename mapping is not injective")
        key = tuple(sorted(lmap.items()))
        memo = self._rename_caches.get(key)
        if memo is None:
            memo = self._rename_caches[key] = {}
        level = self._level
        lo_ = self._lo
        hi_ = self._hi
        ite_var = self._ite_var
        last = max(lmap)
        get = lmap.get

        def rec(u):
            lv = level[u]
            if lv > last:
                return u
            r = memo.get(u)
            if r is not None:
                return r
            r = ite_var(get(lv, lv), rec(hi_[u]), rec(lo_[u]))
            memo[u] = r
            return r

        r = rec(f)
        self._touch()
        return r

    def _ite_var(self, lv: int, h: int, l: int) -> int:
        """Node for ``ite(var at level lv, h, l)`` without building the variable."""
        level = self._level
        lo_ = self._lo
        hi_ = self._hi
        mk = self._mk
        cache = self._ite_var_cache

        def rec(h, l):
            if h == l:
                return h
            th = level[h]
            tl = level[l]
            if lv < th and lv < tl:
                return mk(lv, l, h)
            key = (((lv << 32) | h) << 32) | l
            r = cache.get(key)
            if r is not None:
                return r
            top = min(th, tl)
            if top == lv:
                h1 = hi_[h] if th == lv else h
                l0 = lo_[l] if tl == lv else l
                r = mk(lv, l0, h1)
            else:
                if th == top:
                    h0, h1 = lo_[h], hi_[h]
                else:
                    h0 = h1 = h
                if tl == top:
                    l0, l1 = lo_[l], hi_[l]
                else:
                    l0 = l1 = l
                r = mk(top, rec(h0, l0), rec(h1, l1))
            cache[key] = r
            return r

        return rec(h, l)

    def reorder_args(self, f: int, perm: Sequence[int], k: int | None = None, n: int | None = None) -> int:
        """Argument reordering: result(x1..xk) = f(x_perm[0], ..., x_perm[k-1]).

        ``f`` is read as a function of ``k`` vectors of ``n`` bits each (flat
        layout ``v*n + i``); ``perm`` is zero-based.
        """
        k = len(perm) if k is None else k
        if n is None:
            if self.num_vars % k:
                raise BDDError("k*n must equal the number of variables")
            n = self.num_vars // k
        if k * n != self.num_vars:
            raise BDDError(f"k*n = {k * n} but the store has {self.num_vars} variables")
        if sorted(perm) != list(range(k)):
            raise BDDError(f"{perm} is not a permutation of 0..{k - 1}")
        # f's argument position j is fed by vector perm[j].
        mapping = {j * n + i: perm[j] * n + i for j in range(k) for i in range(n)}
        return self.rename(f, mapping)

    # ------------------------------------------------------------- inspection
    def evaluate(self, f: int, assignment: Sequence[int] | Mapping[int, int]) -> int:
        """Follow the path selected by ``assignment`` (indexed by bit) to a sink."""
        self._check(f)
        perm = self.order.perm
        level = self._level
        lo_ = self._lo
        hi_ = self._hi
        u = f
        while u > 1:
            bit = perm[level[u]]
            u = hi_[u] if assignment[bit] else lo_[u]
        return u

    def support(self, f: int) -> set[int]:
        perm = self.order.perm
        return {perm[self._level[u]] for u in self.descendants([f]) if u > 1}

    def descendants(self, roots: Iterable[int]) -> set[int]:
        lo_ = self._lo
        hi_ = self._hi
        seen: set[int] = set()
        stack = [r for r in roots]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            if u > 1:
                stack.append(lo_[u])
                stack.append(hi_[u])
        return seen

    def level_profile(self, f: int | Iterable[int]) -> LevelProfile:
        """Reachable node counts per level for one root or a shared forest."""
        roots = [f] if isinstance(f, int) else list(f)
        for r in roots:
            self._check(r)
        counts = [0] * self.num_vars
        sinks = 0
        level = self._level
        for u in self.descendants(roots):
            if u < 2:
                sinks += 1
            else:
                counts[level[u]] += 1
        return LevelProfile(tuple(counts), sinks)

    def size(self, f: int | Iterable[int]) -> int:
        return self.level_profile(f).size

    def sat_count(self, f: int, bits: Iterable[int] | None = None) -> int:
        """Number of satisfying assignments over ``bits`` (default: all variables)."""
        self._check(f)
        if bits is None:
            levels = list(range(self.num_vars))
        else:
            levels = sorted({self.level_of(b) for b in bits})
        sup = {self._level[u] for u in self.descendants([f]) if u > 1}
        if not sup <= set(levels):
            raise BDDError("function depends on bits outside the counted set")
        # rank[l] = number of counted levels strictly above level l
        rank = {lv: i for i, lv in enumerate(levels)}
        total = len(levels)
        level = self._level
        lo_ = self._lo
        hi_ = self._hi
        memo: dict[int, int] = {}

        def pos(u):
            return total if u < 2 else rank[level[u]]

        def rec(u):
            if u < 2:
                return u
            r = memo.get(u)
            if r is None:
                p = rank[level[u]]
                lo, hi = lo_[u], hi_[u]
                r = (rec(lo) << (pos(lo) - p - 1)) + (rec(hi) << (pos(hi) - p - 1))
                memo[u] = r
            return r

        return rec(f) << pos(f)

    def solutions(self, f: int, groups: Sequence[Sequence[int]]) -> Iterator[tuple[int, ...]]:
        """Enumerate satisfying assignments decoded as integers.

        ``groups`` lists bit vectors (least significant bit first); ``f`` may
        only depend on bits inside them.  Yields one tuple per assignment.
        """
        self._check(f)
        perm = self.order.perm
        owner = {}
        for gi, bits in enumerate(groups):
            for sig, b in enumerate(bits):
                owner[b] = (gi, sig)
        levels = sorted(self.level_of(b) for b in owner)
        sup = {self._level[u] for u in self.descendants([f]) if u > 1}
        if not sup <= set(levels):
            raise BDDError("function depends on bits outside the decoded groups")
        level = self._level
        lo_ = self._lo
        hi_ = self._hi
        k = len(groups)

        def walk(u, idx, vals):
            if u == 0:
                return
            if idx == len(levels):
                yield tuple(vals)
                return
            lv = levels[idx]
            gi, sig = owner[perm[lv]]
            if u > 1 and level[u] == lv:
                branches = ((0, lo_[u]), (1, hi_[u]))
            else:
                branches = ((0, u), (1, u))
            for bit, child in branches:
                if bit:
                    vals[gi] |= 1 << sig
                yield from walk(child, idx + 1, vals)
                if bit:
                    vals[gi] &= ~(1 << sig)

        yield from walk(f, 0, [0] * k)

    def to_dot(self, roots: int | Iterable[int], names: Mapping[int, str] | None = None) -> str:
        """Graphviz source: lo edges dashed, hi edges solid."""
        roots = [roots] if isinstance(roots, int) else list(roots)
        perm = self.order.perm
        lines = ["digraph bdd {"]
        for u in sorted(self.descendants(roots)):
            if u < 2:
                lines.append(f'  n{u} [shape=box, label="{u}"];')
                continue
            bit = perm[self._level[u]]
            label = names.get(bit, f"b{bit}") if names else f"b{bit}"
            lines.append(f'  n{u} [label="{label}"];')
            lines.append(f"  n{u} -> n{self._lo[u]} [style=dashed];")
            lines.append(f"  n{u} -> n{self._hi[u]};")
        for i, r in enumerate(roots):
            lines.append(f'  r{i} [shape=plaintext, label="f{i}"];')
            lines.append(f"  r{i} -> n{r};")
        lines.append("}")
        return "\n".join(lines)

    def check_reduced(self) -> None:
        """Scan the store for redundant or duplicated nodes; raise on violation."""
        seen = set()
        for u in range(2, len(self._level)):
            lv, lo, hi = self._level[u], self._lo[u], self._hi[u]
            if lo == hi:
                raise BDDError(f"redundant node {u}")
            if self._level[lo] <= lv or self._level[hi] <= lv:
                raise BDDError(f"node {u} violates the order")
            t = (lv, lo, hi)
            if t in seen:
                raise BDDError(f"duplicate node {t}")
            seen.add(t)

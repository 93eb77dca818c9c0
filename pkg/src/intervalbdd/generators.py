"""Random instances: unit graphs from balanced strings, general and worst-case families.

Every generator is a pure function of its arguments and an integer seed.  The
pseudo-random source is Python's ``random.Random`` (MT19937 with the
``randrange`` rejection sampler), recorded as :data:`RNG_ID` in file headers.

Balanced strings map to unit interval families as follows: the i-th ``'['``
opens interval ``i`` and the i-th ``']'`` closes it, both at their character
positions.  Closing in opening order makes the family proper, and intervals
``i < j`` meet iff interval ``i`` closes after interval ``j`` opens.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .intervals import IntervalSet

RNG_ID = "python-random-mt19937"


def random_balanced_string(N: int, seed: int) -> str:
    """Uniformly random balanced string of ``N`` pairs of brackets.

    Sequential choice with exact probabilities.  With ``r`` symbols left and
    ``h`` unmatched openers, the number of completions is the ballot number
    ``B(r, h) = C(r, (r+h)/2) - C(r, (r+h)/2 + 1)`` and the ratio
    ``B(r-1, h+1) / B(r, h)`` simplifies to ``(r-h)(h+2) / (2r(h+1))``,
    drawn as an integer comparison so no rounding enters.
    """
    if N < 1:
        raise ValueError("N must be positive")
    rng = random.Random(seed)
    out = []
    h = 0
    for r in range(2 * N, 0, -1):
        num = (r - h) * (h + 2)
        den = 2 * r * (h + 1)
        if num and rng.randrange(den) < num:
            out.append("[")
            h += 1
        else:
            out.append("]")
            h -= 1
    return "".join(out)


def is_balanced(s: str) -> bool:
    h = 0
    for ch in s:
        if ch == "[":
            h += 1
        elif ch == "]":
            h -= 1
            if h < 0:
                return False
        else:
            return False
    return h == 0


def string_to_unit_intervals(s: str) -> IntervalSet:
    if not s or not is_balanced(s):
        raise ValueError(f"not a nonnegative balanced string: {s!r}")
    opens = [p for p, ch in enumerate(s) if ch == "["]
    closes = [p for p, ch in enumerate(s) if ch == "]"]
    return IntervalSet(tuple(zip(opens, closes)), unit=True)


def random_unit_intervals(N: int, seed: int) -> IntervalSet:
    return string_to_unit_intervals(random_balanced_string(N, seed))


def random_general_intervals(N: int, seed: int, span: int | None = None) -> IntervalSet:
    """``N`` intervals from ``2N`` distinct endpoints drawn from ``range(span)``."""
    if N < 1:
        raise ValueError("N must be positive")
    span = 4 * N if span is None else span
    if span < 2 * N:
        raise ValueError(f"span {span} cannot hold {2 * N} distinct endpoints")
    rng = random.Random(seed)
    pts = rng.sample(range(span), 2 * N)
    pairs = [(min(pts[2 * i], pts[2 * i + 1]), max(pts[2 * i], pts[2 * i + 1])) for i in range(N)]
    return IntervalSet.from_unsorted(pairs, unit=False)


@dataclass(frozen=True)
class WorstCaseSpec:
    """Column run lengths of the randomised near-worst-case adjacency matrix.

    Column ``j < N/2`` has a run drawn from ``N/2 - j .. N - 1 - j``; column
    ``j >= N/2`` runs to the last row.
    """

    N: int
    runs: tuple[int, ...]

    def __post_init__(self):
        N = self.N
        if N < 2 or N & (N - 1):
            raise ValueError("N must be a power of two >= 2")
        if len(self.runs) != N:
            raise ValueError("need one run per column")
        for j, r in enumerate(self.runs):
            lo, hi = (N // 2 - j, N - 1 - j) if j < N // 2 else (N - 1 - j, N - 1 - j)
            if not lo <= r <= hi:
                raise ValueError(f"run {r} of column {j} outside {lo}..{hi}")

    @classmethod
    def random(cls, N: int, seed: int) -> WorstCaseSpec:
        rng = random.Random(seed)
        half = N // 2
        runs = [rng.randint(half - j, N - 1 - j) for j in range(half)]
        runs += [N - 1 - j for j in range(half, N)]
        return cls(N, tuple(runs))

    @classmethod
    def extreme(cls, N: int, maximal: bool) -> WorstCaseSpec:
        half = N // 2
        first = [(N - 1 - j) if maximal else (half - j) for j in range(half)]
        return cls(N, tuple(first + [N - 1 - j for j in range(half, N)]))


def intervals_from_reach(reach: Sequence[int]) -> IntervalSet:
    """Realise a reach vector: interval ``i`` meets exactly ``i+1 .. reach[i]`` among later ones.

    Left endpoints are ``i * S`` with ``S = N + 1``; the right endpoint of
    interval ``i`` is ``reach[i] * S + 1 + i``, strictly between the left
    endpoints of ``reach[i]`` and ``reach[i] + 1`` and distinct from all others.
    """
    N = len(reach)
    S = N + 1
    pairs = []
    for i, r in enumerate(reach):
        if not i <= r < N:
            raise ValueError(f"reach[{i}] = {r} out of range")
        pairs.append((i * S, r * S + 1 + i))
    unit = all(reach[i] <= reach[i + 1] for i in range(N - 1))
    return IntervalSet(tuple(pairs), unit=unit)


def worst_case_instance(spec: WorstCaseSpec | int, seed: int | None = None) -> IntervalSet:
    if isinstance(spec, int):
        spec = WorstCaseSpec.random(spec, 0 if seed is None else seed)
    return intervals_from_reach([j + r for j, r in enumerate(spec.runs)])


def generate(kind: str, N: int, seed: int) -> IntervalSet:
    if kind == "unit":
        return random_unit_intervals(N, seed)
    if kind == "general":
        return random_general_intervals(N, seed)
    if kind == "worstcase":
        return worst_case_instance(WorstCaseSpec.random(N, seed))
    raise ValueError(f"unknown instance kind {kind!r}")

"""Benchmark driver: ``python -m intervalbdd <command>``.

Commands
--------
generate      write a random instance (or ``--count`` of them plus a manifest)
encode-stats  size of chi_E and its per-level profile
match         implicit maximum matching on a unit instance
color         implicit coloring (``--mode unit|general``)
sweep         run a JSON-configured grid and write one CSV row per run

CSV columns are the :class:`BenchRecord` fields in declaration order.  All
columns except ``wall_time_seconds`` are deterministic for a given config.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Callable, Sequence

from . import algorithms as alg
from .generators import RNG_ID, generate, random_balanced_string
from .intervals import (
    IntervalSet,
    SymbolicGraph,
    encode,
    explicit_greedy_coloring,
    explicit_max_matching,
    max_overlap,
)

DEFAULT_MAX_N = 1 << 14
ALGORITHMS = ("encode", "match", "color-unit", "color-general")


class CheckFailure(RuntimeError):
    """Implicit result disagrees with the explicit reference."""


@dataclass
class BenchRecord:
    N: int
    n: int
    seed: int
    algorithm: str
    wall_time_seconds: float
    peak_store_nodes: int
    result_size: int
    op_counts: dict
    chi_E_size: int
    per_level_sizes: list

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def row(self) -> list[str]:
        d = asdict(self)
        d["wall_time_seconds"] = f"{self.wall_time_seconds:.6f}"
        d["op_counts"] = json.dumps(self.op_counts, sort_keys=True, separators=(",", ":"))
        d["per_level_sizes"] = " ".join(map(str, self.per_level_sizes))
        return [str(d[c]) for c in self.columns()]


def _chi_E_profile(g: SymbolicGraph) -> tuple[int, list[int]]:
    prof = g.bdd.level_profile(g.chi_E)
    levels = sorted(g.bdd.level_of(b) for b in g.vec("x") + g.vec("y"))
    return prof.size, [prof.per_level[lv] for lv in levels]


def _check_matching(I: IntervalSet, g: SymbolicGraph, chi_M: int) -> None:
    pairs = alg.matching_pairs(g, chi_M)
    want = len(explicit_max_matching(I))
    edges = I.edges()
    seen = set()
    for a, b in pairs:
        if (a, b) not in edges:
            raise CheckFailure(f"matched pair {(a, b)} is not an edge")
        if a in seen or b in seen:
            raise CheckFailure(f"node of {(a, b)} matched twice")
        seen.update((a, b))
    if len(pairs) != want:
        raise CheckFailure(f"implicit matching has {len(pairs)} pairs, scan found {want}")


def _check_coloring(I: IntervalSet, colors: list[int]) -> None:
    for a, b in I.edges():
        if colors[a] == colors[b]:
            raise CheckFailure(f"adjacent nodes {a} and {b} share color {colors[a]}")
    want = max_overlap(I)
    got = max(colors) + 1
    if got != want:
        raise CheckFailure(f"coloring uses {got} colors, optimum is {want}")
    greedy = max(explicit_greedy_coloring(I)) + 1
    if greedy != want:
        raise CheckFailure(f"greedy reference uses {greedy} colors, sweep says {want}")


def run(I: IntervalSet, algorithm: str, seed: int = 0, check: bool = False) -> tuple[BenchRecord, object]:
    """Encode ``I``, run ``algorithm`` in a fresh store and return the record and decoded output.

    Output is the edge count for ``encode``, the pair list for ``match`` and the
    color list for the coloring algorithms.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    t0 = time.perf_counter()
    g = encode(I)
    start = g.bdd.ops.snapshot()
    if algorithm == "encode":
        elapsed = time.perf_counter() - t0
        out = g.bdd.sat_count(g.chi_E, g.vec("x") + g.vec("y")) // 2
        size = out
    elif algorithm == "match":
        chi_M = alg.maximum_matching_unit(g)
        elapsed = time.perf_counter() - t0
        size = alg.matching_size(g, chi_M)
        out = alg.matching_pairs(g, chi_M)
        if check:
            _check_matching(I, g, chi_M)
    else:
        fn = alg.coloring_unit if algorithm == "color-unit" else alg.coloring_general
        color = fn(g)
        elapsed = time.perf_counter() - t0
        out = alg.decode_colors(g, color)
        size = max(out) + 1
        if check:
            _check_coloring(I, out)
    ops = g.bdd.ops.since(start)
    chi_size, per_level = _chi_E_profile(g)
    counts = ops.as_dict()
    peak = counts.pop("peak_store_nodes")
    rec = BenchRecord(I.N, g.n, seed, algorithm, elapsed, peak, size, counts, chi_size, per_level)
    return rec, out


def write_csv(records: Sequence[BenchRecord], handle) -> None:
    w = csv.writer(handle, lineterminator="\n")
    w.writerow(BenchRecord.columns())
    for r in records:
        w.writerow(r.row())


def _emit(records: Sequence[BenchRecord], path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)


def _seed_of(path: str) -> int:
    for line in Path(path).read_text().splitlines():
        if line.startswith("#") and "seed=" in line:
            for tok in line[1:].split():
                if tok.startswith("seed="):
                    return int(tok[5:])
    return 0


def instance_text(kind: str, N: int, seed: int) -> str:
    I = generate(kind, N, seed)
    return f"# kind={kind} N={N} seed={seed} rng={RNG_ID}\n" + I.to_text()


# ------------------------------------------------------------------ commands
def cmd_generate(args) -> int:
    if args.string:
        if args.kind != "unit":
            raise SystemExit("--string only applies to unit instances")
        text = f"# N={args.N} seed={args.seed} rng={RNG_ID}\n{random_balanced_string(args.N, args.seed)}\n"
        _write_text(text, args.out)
        return 0
    if args.count is None:
        _write_text(instance_text(args.kind, args.N, args.seed), args.out)
        return 0
    if not args.out:
        raise SystemExit("--count needs --out DIR")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = [f"# kind={args.kind} N={args.N} rng={RNG_ID}", "seed file"]
    for seed in range(args.seed, args.seed + args.count):
        name = f"{args.kind}_N{args.N}_s{seed}.txt"
        (out / name).write_text(instance_text(args.kind, args.N, seed))
        manifest.append(f"{seed} {name}")
    (out / "manifest.txt").write_text("\n".join(manifest) + "\n")
    return 0


def _write_text(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> tuple[IntervalSet, int]:
    return IntervalSet.read(path), _seed_of(path)


def cmd_encode_stats(args) -> int:
    I, seed = _load(args.input)
    rec, _ = run(I, "encode", seed)
    _emit([rec], args.csv)
    return 0


def cmd_match(args) -> int:
    I, seed = _load(args.input)
    if not I.unit:
        raise SystemExit("match needs a unit instance")
    rec, pairs = run(I, "match", seed, check=args.check)
    if args.out:
        Path(args.out).write_text("".join(f"{a} {b}\n" for a, b in pairs or []))
    _emit([rec], args.csv)
    return 0


def cmd_color(args) -> int:
    I, seed = _load(args.input)
    mode = args.mode or ("unit" if I.unit else "general")
    if mode == "unit" and not I.unit:
        raise SystemExit("--mode unit needs a unit instance")
    rec, colors = run(I, f"color-{mode}", seed, check=args.check)
    if args.out:
        Path(args.out).write_text("".join(f"{v} {c}\n" for v, c in enumerate(colors)))
    _emit([rec], args.csv)
    return 0


def sweep(config: dict, max_n: int = DEFAULT_MAX_N, check: bool = False,
          log: Callable[[str], None] | None = None) -> tuple[list[BenchRecord], list[str]]:
    """Run every (kind, N, seed, algorithm) in ``config``; failures are collected, not raised.

    ``config`` keys: ``kinds``, ``sizes``, ``seeds`` (a list, or a count starting
    at 0), ``algorithms`` and optional ``check``.
    """
    kinds = config.get("kinds", [])
    sizes = sorted(config.get("sizes", []))
    seeds = config.get("seeds", [])
    if isinstance(seeds, int):
        seeds = list(range(seeds))
    algos = config.get("algorithms", [])
    check = check or bool(config.get("check", False))
    records, failures = [], []
    for kind in kinds:
        for N in sizes:
            if N > max_n:
                if log:
                    log(f"skip N={N} > max-n {max_n}")
                continue
            for seed in seeds:
                try:
                    I = generate(kind, N, seed)
                except Exception as exc:  # noqa: BLE001 - recorded and reported
                    failures.append(f"{kind} N={N} seed={seed}: {exc}")
                    continue
                for name in algos:
                    if name in ("match", "color-unit") and not I.unit:
                        continue
                    try:
                        rec, _ = run(I, name, seed, check=check)
                    except Exception as exc:  # noqa: BLE001
                        failures.append(f"{kind} N={N} seed={seed} {name}: {exc}")
                        continue
                    records.append(rec)
    return records, failures


def cmd_sweep(args) -> int:
    config = json.loads(Path(args.config).read_text()) if args.config else {}
    records, failures = sweep(config, args.max_n, args.check, log=lambda m: print(m, file=sys.stderr))
    _emit(records, args.csv)
    for f in failures:
        print(f"FAILED {f}", file=sys.stderr)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="intervalbdd", description="Symbolic interval graph benchmarks")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", help="write a random instance")
    s.add_argument("kind", choices=("unit", "general", "worstcase"))
    s.add_argument("N", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="file, or directory with --count")
    s.add_argument("--count", type=int, help="write seeds seed..seed+count-1 and a manifest")
    s.add_argument("--string", action="store_true", help="emit the balanced string (unit only)")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("encode-stats", help="chi_E size and level profile")
    s.add_argument("input")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_encode_stats)

    s = sub.add_parser("match", help="implicit maximum matching (unit instances)")
    s.add_argument("input")
    s.add_argument("--check", action="store_true")
    s.add_argument("--out", help="write matched pairs")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_match)

    s = sub.add_parser("color", help="implicit coloring")
    s.add_argument("input")
    s.add_argument("--check", action="store_true")
    s.add_argument("--mode", choices=("unit", "general"))
    s.add_argument("--out", help="write node colors")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("sweep", help="grid of runs from a JSON config")
    s.add_argument("config", nargs="?")
    s.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    s.add_argument("--check", action="store_true")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CheckFailure as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 2


def csv_text(records: Sequence[BenchRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()

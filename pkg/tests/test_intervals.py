import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intervalbdd import (
    BDD,
    IntervalSet,
    build_relation,
    count_distinct_blocks,
    encode,
    explicit_greedy_coloring,
    explicit_max_matching,
    extract_pi_matrix,
    max_overlap,
    random_general_intervals,
    random_unit_intervals,
)
from intervalbdd.intervals import column_runs, components
from oracles import EXAMPLE_EDGES, from_table, vector_values


def edges_of(g):
    xs, ys = g.vec("x"), g.vec("y")
    return {(a, b) for a, b in g.bdd.solutions(g.chi_E, [xs, ys]) if a < b}


def test_example8_edges(example8):
    assert example8.edges() == EXAMPLE_EDGES
    assert edges_of(encode(example8)) == EXAMPLE_EDGES


def test_example8_matrix_rows(example8):
    m = extract_pi_matrix(encode(example8))
    assert m.rows()[0] == "01100000"
    assert m.rows() == [
        "01100000",
        "10110000",
        "11010000",
        "01101100",
        "00010100",
        "00011000",
        "00000001",
        "00000010",
    ]
    assert m.dump().count("\n") == 8


def test_example8_direct_equals_synthesis(example8):
    g = encode(example8)
    assert encode(example8, method="synthesis", bdd=g.bdd).chi_E == g.chi_E


def test_example8_size_matches_minimal_diagram(example8):
    g = encode(example8)
    m = [[(a, b) in EXAMPLE_EDGES or (b, a) in EXAMPLE_EDGES for b in range(8)] for a in range(8)]
    assert build_relation(g.bdd, g.vec("x"), g.vec("y"), m) == g.chi_E
    # the same relation on a bare two-vector store is minimal by construction
    bdd = BDD.interleaved(2, 3)
    vx, vy = vector_values(6, [bdd.vec(0), bdd.vec(1)])
    table = np.array([m[a][b] for a, b in zip(vx, vy)])
    small = from_table(bdd, table)
    assert bdd.size(small) == g.bdd.size(g.chi_E)


def test_single_interval():
    g = encode(IntervalSet(((0, 1),)))
    assert g.chi_E == 0
    assert g.size() == 1
    assert explicit_max_matching(IntervalSet(((0, 1),), unit=True)) == []


def test_invalid_sets():
    with pytest.raises(ValueError):
        IntervalSet(((0, 2), (2, 3)))
    with pytest.raises(ValueError):
        IntervalSet(((3, 1),))
    with pytest.raises(ValueError):
        IntervalSet(((5, 6), (0, 1)))
    with pytest.raises(ValueError):
        IntervalSet(((0, 10), (1, 2)), unit=True)


def test_text_roundtrip(example8):
    text = example8.to_text()
    assert text.splitlines()[0] == "8 unit"
    assert IntervalSet.from_text(text) == example8
    with pytest.raises(ValueError):
        IntervalSet.from_text("3 unit\n0 1\n")


def test_text_ignores_comments():
    I = IntervalSet.from_text("# made by hand\n2 general\n0 5\n1 2  # nested\n")
    assert I.intervals == ((0, 5), (1, 2))


def test_chi_v_masks_non_nodes():
    I = random_unit_intervals(5, 1)
    g = encode(I)
    xs = g.vec("x")
    assert sorted(v for (v,) in g.bdd.solutions(g.chi_V, [xs])) == list(range(5))


def test_empty_graph_matrix():
    I = IntervalSet(tuple((3 * i, 3 * i + 1) for i in range(4)), unit=True)
    m = extract_pi_matrix(encode(I))
    assert not m.a.any()


def test_matrix_cap():
    I = random_unit_intervals(40, 0)
    with pytest.raises(ValueError):
        extract_pi_matrix(encode(I), cap=5)


@pytest.mark.parametrize("seed", range(50))
def test_encoding_matches_intersection(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(1, 65))
    I = random_general_intervals(N, seed) if seed % 2 else random_unit_intervals(N, seed)
    g = encode(I)
    want = {(i, j) for i in range(N) for j in range(i + 1, N) if I.intersects(i, j)}
    assert edges_of(g) == want
    # symmetric and irreflexive as identities
    bdd = g.bdd
    assert g.rename(g.chi_E, {"x": "y", "y": "x"}) == g.chi_E
    assert bdd.apply("and", g.chi_E, bdd.negate(bdd.apply("or", bdd.negate(g.chi_V), bdd.negate(g.rename(g.chi_V, {"x": "y"}))))) == g.chi_E
    m = extract_pi_matrix(g)
    assert np.array_equal(m.a, m.a.T)
    assert not np.diag(m.a).any()


@pytest.mark.parametrize("seed", range(20))
def test_consecutive_ones_and_unit_monotone_runs(seed):
    I = random_unit_intervals(48, seed)
    m = extract_pi_matrix(encode(I))
    N = I.N
    runs = column_runs(m, N)
    for j in range(N):
        col = m.a[j + 1:, j]
        assert not col[runs[j]:].any()
    # for unit graphs the last row reached by column j never decreases
    ends = [j + r for j, r in enumerate(runs)]
    assert all(ends[j] <= ends[j + 1] or runs[j + 1] == 0 and ends[j] <= j + 1 for j in range(N - 1))
    # consecutive labels in one component are adjacent
    for comp in components(I):
        for a, b in zip(comp, comp[1:]):
            assert m.a[a, b] == 1


@pytest.mark.parametrize("seed", range(10))
def test_blocks_bound_level_widths(seed):
    I = random_general_intervals(40, seed) if seed % 2 else random_unit_intervals(40, seed)
    g = encode(I)
    m = extract_pi_matrix(g)
    n = g.n
    prof = g.bdd.level_profile(g.chi_E)
    xs = g.vec("x")
    assert count_distinct_blocks(m, 0) == 1
    assert count_distinct_blocks(m, n) <= 2
    for k in range(n):
        level = g.bdd.level_of(xs[n - 1 - k])
        assert count_distinct_blocks(m, k) >= prof.per_level[level]


def test_matching_oracle_example8(example8):
    assert explicit_max_matching(example8) == [(0, 1), (2, 3), (4, 5), (6, 7)]
    with pytest.raises(ValueError):
        explicit_max_matching(IntervalSet(((0, 10), (1, 2))))


@pytest.mark.parametrize("seed", range(100))
def test_matching_oracle_equals_component_bound(seed):
    I = random_unit_intervals(1 + seed, seed)
    assert len(explicit_max_matching(I)) == sum(len(c) // 2 for c in components(I))


def test_coloring_oracle_example8(example8):
    colors = explicit_greedy_coloring(example8)
    assert max(colors) + 1 == 3 == max_overlap(example8)


def test_coloring_disjoint():
    I = IntervalSet(tuple((3 * i, 3 * i + 1) for i in range(5)))
    assert explicit_greedy_coloring(I) == [0] * 5


@pytest.mark.parametrize("seed", range(100))
def test_greedy_coloring_optimal(seed):
    I = random_general_intervals(1 + seed % 60, seed)
    colors = explicit_greedy_coloring(I)
    assert all(colors[a] != colors[b] for a, b in I.edges())
    assert max(colors) + 1 == max_overlap(I)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 200), st.integers(1, 30)), min_size=1, max_size=30, unique_by=lambda t: t[0]))
def test_encode_property(raw):
    pairs = []
    used = set()
    for a, length in raw:
        a2, b2 = 2 * a, 2 * (a + length) + 1
        if a2 in used or b2 in used:
            continue
        used.update((a2, b2))
        pairs.append((a2, b2))
    I = IntervalSet.from_unsorted(pairs)
    g = encode(I)
    assert edges_of(g) == I.edges()

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intervalbdd import BDD, BDDError, OpCounter, VarOrder, build_eq, build_gt
from oracles import (
    from_table,
    minimal_obdd_size,
    node_table,
    random_program,
    reorder_table,
    subfunction_counts,
    vector_values,
)


def gt2():
    bdd = BDD.interleaved(2, 2)
    return bdd, build_gt(bdd, bdd.vec(0), bdd.vec(1))


def test_interleaved_order_decreasing_significance():
    order = VarOrder.interleaved(3, 2)
    # x^(1)_1, x^(2)_1, x^(3)_1, x^(1)_0, ...
    assert order.perm == (1, 3, 5, 0, 2, 4)


def test_varorder_rejects_non_permutation():
    with pytest.raises(ValueError):
        VarOrder((0, 0, 1))


def test_mk_node_redundant_and_canonical():
    bdd = BDD(3)
    t = bdd.var(2)
    assert bdd.mk_node(0, t, t) == t
    a = bdd.mk_node(1, 0, t)
    assert bdd.mk_node(1, 0, t) == a


def test_mk_node_level_errors():
    bdd = BDD(3)
    with pytest.raises(BDDError):
        bdd.mk_node(3, 0, 1)
    u = bdd.var(0)
    with pytest.raises(BDDError):
        bdd.mk_node(0, u, 1)


def test_gt2_shape():
    bdd, f = gt2()
    prof = bdd.level_profile(f)
    assert prof.inner == 5
    assert prof.sinks == 2
    assert prof.per_level == (1, 2, 1, 1)
    assert prof.width == 2


def test_gt2_evaluate():
    bdd, f = gt2()
    x, y = bdd.vec(0), bdd.vec(1)
    a = [0] * 4
    a[x[0]] = 1  # |x| = 1, |y| = 0
    assert bdd.evaluate(f, a) == 1
    assert bdd.evaluate(f, {x[0]: 0, x[1]: 0, y[0]: 1, y[1]: 0}) == 0


def test_apply_identities():
    bdd, f = gt2()
    assert bdd.apply("and", f, 1) == f
    assert bdd.apply("xor", f, f) == 0
    assert bdd.apply("or", f, bdd.negate(f)) == 1


def test_eq_and_gt_disjoint():
    bdd = BDD.interleaved(2, 2)
    x, y = bdd.vec(0), bdd.vec(1)
    h = bdd.apply("and", build_eq(bdd, x, y), build_gt(bdd, x, y))
    assert h == 0
    assert not node_table(bdd, h, 4).any()


def test_negate():
    bdd = BDD.interleaved(2, 3)
    x, y = bdd.vec(0), bdd.vec(1)
    assert bdd.negate(0) == 1
    eq = build_eq(bdd, x, y)
    assert bdd.negate(bdd.negate(eq)) == eq
    vx, vy = vector_values(6, [x, y])
    assert np.array_equal(node_table(bdd, bdd.negate(eq), 6), vx != vy)


def test_restrict_gt_to_constant():
    bdd = BDD.interleaved(2, 3)
    x, y = bdd.vec(0), bdd.vec(1)
    gt = build_gt(bdd, x, y)
    c = 5
    f = bdd.cofactor(gt, {b: (c >> i) & 1 for i, b in enumerate(y)})
    assert not set(y) & bdd.support(f)
    vx, _ = vector_values(6, [x, y])
    assert np.array_equal(node_table(bdd, f, 6), vx > c)
    assert bdd.restrict(1, 0, 0) == 1
    with pytest.raises(BDDError):
        bdd.restrict(gt, 6, 0)


def test_quantify():
    bdd = BDD.interleaved(2, 2)
    x, y = bdd.vec(0), bdd.vec(1)
    eq = build_eq(bdd, x, y)
    gt = build_gt(bdd, x, y)
    assert bdd.quantify(eq, [], "exists") == eq
    assert bdd.quantify(eq, y, "exists") == 1
    assert bdd.quantify(gt, y, "forall") == 0
    with pytest.raises(ValueError):
        bdd.quantify(eq, y, "some")


def test_and_exists_matches_two_steps():
    bdd = BDD.interleaved(3, 3)
    x, y, z = bdd.vec(0), bdd.vec(1), bdd.vec(2)
    f = build_gt(bdd, x, z)
    g = build_gt(bdd, z, y)
    assert bdd.and_exists(f, g, z) == bdd.exists(bdd.apply("and", f, g), z)


def test_reorder_args():
    bdd = BDD.interleaved(2, 3)
    x, y = bdd.vec(0), bdd.vec(1)
    gt = build_gt(bdd, x, y)
    eq = build_eq(bdd, x, y)
    assert bdd.reorder_args(gt, [0, 1]) == gt
    swapped = bdd.reorder_args(gt, [1, 0])
    assert swapped == build_gt(bdd, y, x)
    assert swapped == bdd.apply("and", bdd.negate(gt), bdd.negate(eq))
    with pytest.raises(BDDError):
        bdd.reorder_args(gt, [0, 1], n=2)


def test_level_profile_constants():
    bdd = BDD(2)
    prof = bdd.level_profile(0)
    assert (prof.size, prof.width) == (1, 0)


def test_shared_forest_profile():
    bdd = BDD.interleaved(2, 2)
    x, y = bdd.vec(0), bdd.vec(1)
    eq, gt = build_eq(bdd, x, y), build_gt(bdd, x, y)
    both = bdd.level_profile([eq, gt]).size
    assert both <= bdd.size(eq) + bdd.size(gt)
    assert both >= max(bdd.size(eq), bdd.size(gt))


def test_sat_count_and_solutions():
    bdd = BDD.interleaved(2, 3)
    x, y = bdd.vec(0), bdd.vec(1)
    gt = build_gt(bdd, x, y)
    assert bdd.sat_count(gt) == 28
    sols = list(bdd.solutions(gt, [x, y]))
    assert sorted(sols) == [(a, b) for a in range(8) for b in range(8) if a > b]


def test_op_counter_snapshot():
    bdd = BDD(3)
    start = bdd.ops.snapshot()
    bdd.apply("and", bdd.var(0), bdd.var(1))
    bdd.exists(bdd.var(2), [2])
    d = bdd.ops.since(start)
    assert isinstance(d, OpCounter)
    assert d.syntheses == 1
    assert d.quantifier_blocks == 1 and d.quantifier_bit_ops == 1
    assert d.peak_store_nodes == len(bdd)


def test_to_dot():
    bdd, f = gt2()
    dot = bdd.to_dot(f)
    assert dot.startswith("digraph")
    assert "dashed" in dot


def test_store_mismatch_detected():
    a = BDD(2)
    with pytest.raises(BDDError):
        a.negate(57)


@pytest.mark.parametrize("seed", range(40))
def test_random_programs_match_tables(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 8)
    perm = list(range(m))
    rng.shuffle(perm)
    bdd = BDD(VarOrder(tuple(perm)))
    for node, table in random_program(rng, bdd, m, 25):
        assert np.array_equal(node_table(bdd, node, m), table)
        assert from_table(bdd, table) == node
    bdd.check_reduced()


@pytest.mark.parametrize("seed", range(20))
def test_size_equals_subfunction_count(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 9))
    perm = tuple(int(v) for v in rng.permutation(m))
    bdd = BDD(VarOrder(perm))
    table = rng.random(1 << m) < rng.uniform(0.1, 0.9)
    f = from_table(bdd, table)
    prof = bdd.level_profile(f)
    counts, sinks = subfunction_counts(table, perm)
    assert list(prof.per_level) == counts
    assert prof.sinks == sinks
    assert prof.size == minimal_obdd_size(table, perm)


@settings(max_examples=60, deadline=None)
@given(
    k=st.integers(1, 3),
    n=st.integers(1, 3),
    data=st.data(),
)
def test_reorder_args_property(k, n, data):
    m = k * n
    table = np.array(data.draw(st.lists(st.booleans(), min_size=1 << m, max_size=1 << m)))
    perm = data.draw(st.permutations(range(k)))
    bdd = BDD.interleaved(k, n)
    f = from_table(bdd, table)
    g = bdd.reorder_args(f, perm)
    assert np.array_equal(node_table(bdd, g, m), reorder_table(table, k, n, perm))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.data())
def test_canonicity_property(m, data):
    """Two different construction routes give the same node."""
    table = np.array(data.draw(st.lists(st.booleans(), min_size=1 << m, max_size=1 << m)))
    bdd = BDD(m)
    direct = from_table(bdd, table)
    # OR of minterms
    acc = 0
    for a in np.flatnonzero(table):
        term = 1
        for b in range(m):
            term = bdd.apply("and", term, bdd.var(b) if (a >> b) & 1 else bdd.nvar(b))
        acc = bdd.apply("or", acc, term)
    assert acc == direct
    bdd.check_reduced()

"""Reduced ordered BDDs and symbolic algorithms on interval graphs."""
from .algorithms import (
    RankRelation,
    coloring_general,
    coloring_unit,
    decode_colors,
    enumerate_order,
    matching_pairs,
    matching_size,
    maximum_matching_unit,
    right_endpoint_order,
    transitive_closure,
)
from .bdd import BDD, FALSE, OPS, TRUE, BDDError, LevelProfile, OpCounter, VarOrder
from .builders import (
    ThresholdSpec,
    build_compare,
    build_const_cmp,
    build_diff_eq,
    build_eq,
    build_gt,
    build_linear_eq,
    build_relation,
    build_set,
    build_threshold,
)
from .generators import (
    WorstCaseSpec,
    random_balanced_string,
    random_general_intervals,
    random_unit_intervals,
    string_to_unit_intervals,
    worst_case_instance,
)
from .intervals import (
    LAYOUT,
    IntervalSet,
    PiMatrix,
    SymbolicGraph,
    count_distinct_blocks,
    encode,
    explicit_greedy_coloring,
    explicit_max_matching,
    extract_pi_matrix,
    max_overlap,
    new_store,
)

__version__ = "0.1.0"

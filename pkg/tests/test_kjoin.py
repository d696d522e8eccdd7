import pytest

from core.basic import classify_basic
from core.cs_builder import basic_cs_separator
from core.errors import PreconditionViolation
from core.kjoin import (
    JoinSide,
    KJoinInterface,
    KLeaf,
    KNode,
    build_closure_separator,
    ck_separator,
    generalized_k_join,
    lift_to_ck,
    make_leaf,
    part_violation,
    product_separator,
    recombine_k_join,
    tree_leaves,
    validate_parts,
)
from core.oracles import all_cuts_oracle
from core.separation import all_cuts, verify_cs_separator
from core.trigraph import STRONG_ANTIEDGE, STRONG_EDGE, Trigraph, mask_of
from utils.fixtures import fixture
from utils.generator import generate


def two_by_one():
    """T1: parts {0}, {1} and marker 2 (complete to {0} only);
    T2: part {0, 1} and markers 2 (complete), 3 (anticomplete)"""
    T1 = Trigraph.from_edges(3, [(0, 1), (0, 2)])
    T2 = Trigraph.from_edges(4, [(0, 1), (0, 2), (1, 2)], switchable=[(2, 3)])
    side1 = JoinSide((mask_of([0]), mask_of([1])), (2,))
    side2 = JoinSide((mask_of([0, 1]),), (2, 3))
    return T1, side1, T2, side2, KJoinInterface(((1,), (0,)))


@pytest.mark.parametrize("pattern", [(), ((),), ((1, 0), (1,)), ((2,),)])
def test_interface_patterns_must_be_0_1_matrices(pattern):
    with pytest.raises(PreconditionViolation):
        KJoinInterface(pattern)


def test_interface_size_is_bounded_by_k():
    iface = KJoinInterface(((1, 0), (0, 1)))
    assert (iface.r, iface.s) == (2, 2)
    assert iface.describe() == "[10;01]"
    iface.check_k(2)
    with pytest.raises(PreconditionViolation):
        iface.check_k(1)


def test_parts_must_partition_the_vertices():
    with pytest.raises(PreconditionViolation):
        validate_parts(3, [[0, 1], [1, 2]])
    with pytest.raises(PreconditionViolation):
        validate_parts(3, [[0, 1]])
    with pytest.raises(PreconditionViolation):
        validate_parts(3, [[0, 1, 2]], k=2)


def test_lift_makes_parts_switchable():
    T = lift_to_ck(fixture("P4"), [[0, 1], [2, 3]], 2)
    assert T.switchable_pairs() == [(0, 1), (2, 3)]
    assert T.value(1, 2) == STRONG_EDGE
    assert part_violation(T, [[0, 1], [2, 3]]) is None
    assert part_violation(T, [[0, 1, 2], [3]]) is not None


def test_lift_needs_a_graph():
    with pytest.raises(PreconditionViolation):
        lift_to_ck(fixture("pair"), [[0], [1]], 1)


def test_generalized_k_join():
    T1, side1, T2, side2, iface = two_by_one()
    T, layout = generalized_k_join(T1, side1, T2, side2, iface)
    assert T.n == 4
    assert layout.origin == ((1, 0), (1, 1), (2, 0), (2, 1))
    assert layout.a_parts == (mask_of([0]), mask_of([1]))
    assert layout.b_parts == (mask_of([2, 3]),)
    assert T.value(0, 2) == T.value(0, 3) == STRONG_EDGE
    assert T.value(1, 2) == T.value(1, 3) == STRONG_ANTIEDGE
    assert T.value(0, 1) == T.value(2, 3) == STRONG_EDGE


def test_marker_must_follow_the_interface():
    T1, side1, T2, side2, iface = two_by_one()
    broken = Trigraph.from_edges(4, [(0, 1), (0, 2)], switchable=[(2, 3)])
    with pytest.raises(PreconditionViolation):
        generalized_k_join(T1, side1, broken, side2, iface)


def test_recombined_separator_sizes_add_up():
    T1, side1, T2, side2, iface = two_by_one()
    T, layout = generalized_k_join(T1, side1, T2, side2, iface)
    F = recombine_k_join(T, layout, side1, side2, all_cuts(T1), all_cuts(T2))
    assert len(F) == 8 + 16
    assert verify_cs_separator(T, F)[0]


def test_recombination_checks_operand_sizes():
    T1, side1, T2, side2, iface = two_by_one()
    T, layout = generalized_k_join(T1, side1, T2, side2, iface)
    with pytest.raises(PreconditionViolation):
        recombine_k_join(T, layout, side1, side2, all_cuts(T2), all_cuts(T2))


def test_product_separator_of_every_cut_is_every_cut():
    F = product_separator(all_cuts(fixture("P3")), 2)
    assert len(F) == 8


def test_product_separator_needs_positive_k():
    with pytest.raises(PreconditionViolation):
        product_separator(all_cuts(fixture("P3")), 0)


@pytest.mark.parametrize("parts", [[[0, 1], [2, 3], [4, 5]], [[0, 3], [1, 4], [2, 5]], [[0], [1, 2], [3], [4, 5]]])
def test_lifted_separator(c6, parts):
    T = lift_to_ck(c6, parts, 2)
    F = basic_cs_separator(c6, classify_basic(c6))
    assert verify_cs_separator(T, ck_separator(T, parts, F, 2))[0]


def test_lifted_separator_checks_the_parts(c6):
    T = lift_to_ck(c6, [[0, 1], [2, 3], [4, 5]], 2)
    with pytest.raises(PreconditionViolation):
        ck_separator(T, [[0], [1], [2, 3], [4, 5]], all_cuts(c6), 2)


def test_make_leaf_normalizes_parts():
    leaf = make_leaf(fixture("P3"), [[1, 0], [2]], 2)
    assert leaf.parts == ((0, 1), (2,))
    assert leaf.realization == fixture("P3")


@pytest.mark.parametrize("recipe, seed", [
    ("kjoin(p1, leaf(C4), leaf(P3))", 1),
    ("kjoin(p10_01, leaf(C4), leaf(P4))", 2),
    ("kjoin(p1, kjoin(p0, leaf(C5), leaf(P3)), leaf(K3))", 3),
])
def test_closure_separator_of_generated_trees(recipe, seed):
    instance = generate(recipe, seed, k=2, run_checks=False)
    tree = instance.kjoin_tree
    assert isinstance(tree, KNode)
    assert sum(leaf.trigraph.n for leaf in tree_leaves(tree)) > tree.trigraph.n
    for p0 in (0, 12):
        F = build_closure_separator(tree, all_cuts_oracle, k=2, p0=p0)
        assert F.n == tree.trigraph.n
        assert verify_cs_separator(tree.trigraph, F)[0]


def test_closure_leaf_below_p0_takes_every_cut():
    leaf = make_leaf(fixture("P3"), [[0], [1], [2]], 1)
    assert isinstance(leaf, KLeaf)
    assert len(build_closure_separator(leaf, all_cuts_oracle, k=1, p0=3)) == 8

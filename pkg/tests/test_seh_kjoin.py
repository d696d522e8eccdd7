from fractions import Fraction

import pytest

from core.errors import PreconditionViolation
from core.kjoin import KNode
from core.oracles import bipartite_biclique_oracle, exhaustive_biclique_oracle
from core.seh_kjoin import (
    contract_k_join,
    extract_biclique_kjoin,
    is_c_balanced,
    kjoin_corollary_biclique,
    verify_simple_model,
)
from core.weights import verify_biclique
from utils.generator import generate


def small_tree():
    return generate("kjoin(p10_01, leaf(C4), leaf(P3))", 5, k=2, run_checks=False).kjoin_tree


def lopsided_tree():
    """42 vertices, the A-side holding 40 of them"""
    return generate("kjoin(p0, leaf(bipartite(40, 3)), leaf(P2))", 1, k=1, run_checks=False).kjoin_tree


def test_c_balance():
    assert is_c_balanced([1] * 10, Fraction(1, 10))
    assert not is_c_balanced([2] + [1] * 9, Fraction(1, 10))


@pytest.mark.parametrize("c, k", [(Fraction(1, 2), 1), (Fraction(1, 4), 2), (Fraction(1, 3), 2), (Fraction(0), 1)])
def test_ratio_must_satisfy_2ck_below_1(c, k):
    with pytest.raises(PreconditionViolation):
        kjoin_corollary_biclique(small_tree(), c, k, exhaustive_biclique_oracle)


def test_few_vertices_give_a_strong_pair():
    tree = small_tree()
    extraction = kjoin_corollary_biclique(tree, Fraction(1, 20), 2, exhaustive_biclique_oracle)
    assert extraction.exit == "strong-pair"
    assert verify_biclique(tree.trigraph, extraction.biclique) is None


def test_heavy_opposite_part_exits_early():
    tree = small_tree()
    n = tree.trigraph.n
    c = Fraction(1, n)
    extraction = extract_biclique_kjoin(tree, [1] * n, c, 2, exhaustive_biclique_oracle)
    assert extraction.exit == "early-exit"
    assert extraction.contractions == 0
    assert verify_biclique(tree.trigraph, extraction.biclique) is None


def test_unbalanced_weight_is_refused():
    tree = small_tree()
    weights = [0] * tree.trigraph.n
    weights[0] = 1
    with pytest.raises(PreconditionViolation):
        extract_biclique_kjoin(tree, weights, Fraction(1, 20), 2, exhaustive_biclique_oracle)


def test_contraction_keeps_the_heavier_operand():
    tree = lopsided_tree()
    assert isinstance(tree, KNode)
    contraction = contract_k_join([1] * tree.trigraph.n, tree)
    assert contraction.operand == 1
    assert sum(contraction.weights) == tree.trigraph.n
    assert sorted(contraction.weights)[-1] == 2
    teams = contraction.preimage
    ok, violation = verify_simple_model(tree.trigraph, [1] * tree.trigraph.n, contraction.tree.trigraph,
                                        contraction.weights, teams)
    assert ok, violation


def test_leaf_oracle_after_one_contraction():
    tree = lopsided_tree()
    n = tree.trigraph.n
    extraction = kjoin_corollary_biclique(tree, Fraction(1, 10), 1, bipartite_biclique_oracle)
    assert extraction.exit == "leaf-oracle"
    assert extraction.contractions == 1
    b = extraction.biclique
    assert verify_biclique(tree.trigraph, b) is None
    assert 10 * b.weight >= n

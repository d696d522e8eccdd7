import pytest

from core.errors import PreconditionViolation
from core.trigraph import Trigraph, mask_of
from core.weights import (
    Biclique,
    BicliqueKind,
    PartitionMap,
    WeightedTrigraph,
    is_balanced_weight,
    is_virgin,
    make_biclique,
    verify_biclique,
    verify_model,
)
from utils.fixtures import fixture


def test_weight_vectors_must_match_the_vertices():
    with pytest.raises(PreconditionViolation):
        WeightedTrigraph(fixture("P3"), (1, 1), (0, 0, 0), (0, 0, 0))


def test_weights_are_non_negative():
    with pytest.raises(PreconditionViolation):
        WeightedTrigraph.virgin(fixture("P3"), [1, -1, 1])


def test_pair_weights_only_on_switchable_pairs():
    T = fixture("P3")
    with pytest.raises(PreconditionViolation):
        WeightedTrigraph(T, (1, 1, 1), (0, 0, 0), (0, 0, 0), pair_c={(0, 1): 2})


def test_totals_count_pairs_inside_the_set():
    T = Trigraph.from_edges(3, [(1, 2)], switchable=[(0, 1)])
    w = WeightedTrigraph(T, (1, 2, 3), (1, 0, 0), (0, 0, 1), pair_c={(0, 1): 4}, pair_ac={(0, 1): 5})
    assert w.wr() == 6
    assert w.wc() == 1 + 4
    assert w.wac() == 1 + 5
    assert w.total == 17
    assert w.wc(mask_of([0, 2])) == 1
    assert w.crossing(mask_of([0]), mask_of([1])) == (4, 5)
    assert not is_virgin(w)
    assert is_virgin(w.virginized())


def test_uniform_weight():
    w = WeightedTrigraph.uniform(fixture("C6"))
    assert w.total == 6
    assert is_virgin(w)


def test_balance_needs_55_vertices_of_unit_weight():
    assert is_balanced_weight(WeightedTrigraph.uniform(Trigraph.empty(55))) == (True, None)
    balanced, violation = is_balanced_weight(WeightedTrigraph.uniform(Trigraph.empty(54)))
    assert not balanced
    assert "real weight" in violation


def test_balance_bounds_the_total_extra_weight():
    T = Trigraph.empty(60)
    extra = (1,) * 10 + (0,) * 50
    w = WeightedTrigraph(T, (1,) * 60, extra, (0,) * 60)
    balanced, violation = is_balanced_weight(w)
    assert not balanced
    assert "total extra weight" in violation


def test_identity_map_is_a_model(c6):
    w = WeightedTrigraph.uniform(c6)
    assert verify_model(c6, w, w, PartitionMap.identity(c6)) == (True, None)


def test_overlapping_teams_are_not_a_model(c4):
    w = WeightedTrigraph.uniform(c4)
    beta = PartitionMap((0b0011, 0b0010, 0b0100, 0b1000), (0,) * 4, (0,) * 4)
    ok, violation = verify_model(c4, w, w, beta)
    assert not ok
    assert violation.startswith("partition")


def test_model_of_a_weighted_original_is_refused(c4):
    w = WeightedTrigraph(c4, (1,) * 4, (1, 0, 0, 0), (0,) * 4)
    with pytest.raises(PreconditionViolation):
        verify_model(c4, w, w, PartitionMap.identity(c4))


def test_verify_biclique(c4):
    assert verify_biclique(c4, make_biclique(0b0101, 0b1010, BicliqueKind.COMPLETE)) is None
    assert verify_biclique(c4, make_biclique(0b0001, 0b0100, BicliqueKind.ANTICOMPLETE)) is None
    assert verify_biclique(c4, make_biclique(0b0001, 0b0010, BicliqueKind.ANTICOMPLETE)) is not None
    assert verify_biclique(c4, Biclique(0b0011, 0b0010, BicliqueKind.COMPLETE, 1)) == "sides intersect"
    assert "recorded weight" in verify_biclique(c4, Biclique(0b0101, 0b1010, BicliqueKind.COMPLETE, 3))


def test_weighted_biclique_weight():
    b = make_biclique(0b0011, 0b0100, BicliqueKind.ANTICOMPLETE, real=[2, 3, 4, 0])
    assert b.weight == 4
    assert b.flipped().kind == BicliqueKind.COMPLETE

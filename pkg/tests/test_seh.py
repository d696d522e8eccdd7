import random

import pytest

from core.basic import BasicKind, classify_polynomial
from core.decomposition import region_split_finder
from core.errors import InvariantBroken, PreconditionViolation
from core.seh import (
    basic_biclique,
    compose_partition_map,
    contract_two_join,
    extract_biclique,
    extract_biclique_unweighted,
    first_strong_pair,
    orient_split,
    run_extraction,
)
from core.trigraph import Trigraph, mask_of
from core.weights import BicliqueKind, PartitionMap, WeightedTrigraph, verify_biclique, verify_model
from utils.fixtures import fixture
from utils.generator import compose_two_join, random_bipartite


def claw_with_tail(n: int) -> Trigraph:
    """Centre 0 with leaves 1, 2, 3 and a tail 3 - 4 - ... - (n-1)"""
    return Trigraph.from_edges(n, [(0, 1), (0, 2), (0, 3)] + [(i, i + 1) for i in range(3, n - 1)])


def path_with_triangle(m: int, at: int) -> Trigraph:
    """Path 0 - ... - (m-1) with a triangle on m, m+1 and `at`"""
    return Trigraph.from_edges(m + 2, [(i, i + 1) for i in range(m - 1)] + [(at, m), (at, m + 1), (m, m + 1)])


def ring(main: int, gadget: int, triangle_at: int) -> Trigraph:
    """claw_with_tail(main) closed by a path with a triangle: vertex 1 meets
    the first path vertex (main) and main-1 meets the last one"""
    T, _ = compose_two_join(claw_with_tail(main), 1 << 1, 1 << (main - 1),
                            path_with_triangle(gadget, triangle_at), 1 << 0, 1 << (gadget - 1))
    return T


def segment(main: int, first: int) -> int:
    """Four consecutive path vertices of a ring, starting at path index `first`"""
    return mask_of(range(main + first, main + first + 4))


def long_spider_join():
    """61 vertices, not basic: a claw with a tail of 26 (X1, 30 vertices)
    2-joined to a path of 29 carrying a triangle (X2, 31 vertices); both
    A-to-B paths have length 28"""
    return compose_two_join(claw_with_tail(30), 1 << 1, 1 << 29, path_with_triangle(29, 14), 1 << 0, 1 << 28)


def test_first_strong_pair(c4):
    b = first_strong_pair(c4)
    assert (b.x, b.y, b.kind) == (0b01, 0b10, BicliqueKind.COMPLETE)


def test_first_strong_pair_may_be_an_antiedge():
    b = first_strong_pair(fixture("S3"))
    assert (b.x, b.y, b.kind) == (0b01, 0b10, BicliqueKind.ANTICOMPLETE)


def test_small_trigraphs_answer_with_a_strong_pair(c6):
    extraction = extract_biclique_unweighted(c6)
    assert extraction.exit == "strong-pair"
    assert verify_biclique(c6, extraction.biclique) is None


def test_too_few_vertices():
    with pytest.raises(PreconditionViolation):
        extract_biclique_unweighted(fixture("K2"))


def test_no_strong_pair_at_all():
    T = Trigraph.from_edges(3, [], switchable=[(0, 1), (1, 2), (0, 2)])
    with pytest.raises(InvariantBroken):
        extract_biclique_unweighted(T, check_preconditions=False)


def test_orientation_keeps_the_heavier_side(odd_cycle_join):
    T, split = odd_cycle_join
    w = WeightedTrigraph.virgin(T, [1, 1, 1, 1, 2, 1, 1, 1])
    assert orient_split(w, split).x1 == split.x2
    assert orient_split(WeightedTrigraph.uniform(T), split).x1 == split.x1


def test_contraction_moves_c2_onto_the_marker_pair(odd_cycle_join):
    T, split = odd_cycle_join
    w = WeightedTrigraph.uniform(T)
    contracted, record = contract_two_join(w, split)
    assert contracted.n == 6
    assert contracted.total == w.total == 8
    assert contracted.real == (1, 1, 1, 1, 1, 1)
    assert dict(contracted.pair_ac) == {(4, 5): 2}
    assert dict(contracted.pair_c) == {}


def test_contraction_is_a_model(odd_cycle_join):
    T, split = odd_cycle_join
    w = WeightedTrigraph.uniform(T)
    contracted, _ = contract_two_join(w, split)
    beta = compose_partition_map(PartitionMap.identity(T), w, split)
    assert beta.pair_anti[(4, 5)] == mask_of([5, 6])
    assert verify_model(T, w, contracted, beta) == (True, None)


def test_basic_biclique_of_a_long_cycle():
    T = fixture("C60")
    cert = classify_polynomial(T)
    assert cert.kind == BasicKind.BIPARTITE
    b = basic_biclique(WeightedTrigraph.uniform(T), cert)
    assert b.kind == BicliqueKind.ANTICOMPLETE
    assert b.weight == 2
    assert verify_biclique(T, b) is None


def test_basic_biclique_needs_a_balanced_weight():
    T = fixture("C6")
    with pytest.raises(PreconditionViolation):
        basic_biclique(WeightedTrigraph.uniform(T), classify_polynomial(T))


@pytest.mark.parametrize("seed", range(4))
def test_extraction_on_random_bipartite_graphs(seed):
    T = random_bipartite(60, random.Random(seed))
    extraction = run_extraction(T, WeightedTrigraph.uniform(T), check_preconditions=False)
    assert extraction.exit == "basic"
    b = extraction.biclique
    assert verify_biclique(T, b) is None
    assert 55 * b.weight >= T.n


def test_extract_biclique_returns_the_certificate():
    T = random_bipartite(60, random.Random(0))
    w = WeightedTrigraph.uniform(T)
    b = extract_biclique(T, w, check_preconditions=False)
    assert b == run_extraction(T, w, check_preconditions=False).biclique
    assert 55 * b.weight >= w.total


def test_extraction_stops_at_two_heavy_interior_sets():
    T, split = long_spider_join()
    extraction = extract_biclique_unweighted(T, split_finder=region_split_finder([split.x1]),
                                             check_preconditions=False)
    b = extraction.biclique
    assert extraction.exit == "marker-team"
    assert extraction.contractions == 0
    assert b.kind == BicliqueKind.ANTICOMPLETE
    assert b.weight == 28
    assert verify_biclique(T, b) is None


def test_weight_on_another_trigraph(c4, c6):
    with pytest.raises(PreconditionViolation):
        run_extraction(c4, WeightedTrigraph.uniform(c6))


def test_original_weight_must_be_balanced(c6):
    with pytest.raises(PreconditionViolation):
        run_extraction(c6, WeightedTrigraph.uniform(c6))


def test_extraction_contracts_a_light_side():
    T, split = compose_two_join(claw_with_tail(60), 1 << 1, 1 << 59, path_with_triangle(7, 3), 1 << 0, 1 << 6)
    w = WeightedTrigraph.virgin(T, [1] * 60 + [0] * 9)
    extraction = run_extraction(T, w, split_finder=region_split_finder([split.x1]), check_preconditions=False)
    assert (extraction.exit, extraction.contractions) == ("basic", 1)
    b = extraction.biclique
    assert verify_biclique(T, b, w.real) is None
    assert 55 * b.weight >= w.total


def test_contracted_pair_weight_gives_an_extra_team():
    # an odd segment of real weight 1 becomes a pair of extra weight 1, which
    # with the real weight 1 around it outweighs w/55 for w = 57
    T = ring(55, 10, 7)
    real = [1] * 55 + [0] * 12
    real[55 + 2] = real[55 + 6] = 1
    w = WeightedTrigraph.virgin(T, real)
    finder = region_split_finder([segment(55, 1), mask_of(range(55, 67))], fallback=False)
    extraction = run_extraction(T, w, split_finder=finder, check_preconditions=False)
    assert (extraction.exit, extraction.contractions) == ("extra-team", 1)
    b = extraction.biclique
    assert b.kind == BicliqueKind.ANTICOMPLETE
    assert b.weight == 2
    assert verify_biclique(T, b, w.real) is None


def test_accumulated_extra_weight_gives_the_extra_total():
    # nine odd segments of real weight 7 against w/55 = 8: eight contractions
    # leave extra weight 56 = 7w/55, the ninth segment pushes it over
    T = ring(49, 48, 46)
    real = [8] * 47 + [1, 0] + [0] * 50
    segments = []
    for i in range(9):
        first = 5 * i + 1
        real[49 + first + 1], real[49 + first + 2] = 4, 3
        segments.append(segment(49, first))
    w = WeightedTrigraph.virgin(T, real)
    assert w.total == 440
    extraction = run_extraction(T, w, split_finder=region_split_finder(segments, fallback=False),
                                check_preconditions=False)
    assert (extraction.exit, extraction.contractions) == ("extra-total", 8)
    b = extraction.biclique
    assert b.kind == BicliqueKind.ANTICOMPLETE
    assert b.weight == 14
    assert verify_biclique(T, b, w.real) is None


def test_small_model_with_zero_weight():
    T = fixture("C5")
    w = WeightedTrigraph.virgin(T, [0] * 5)
    extraction = run_extraction(T, w, check_preconditions=False)
    assert (extraction.exit, extraction.contractions) == ("small-model", 0)
    assert verify_biclique(T, extraction.biclique, w.real) is None

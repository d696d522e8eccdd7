import random

import networkx as nx
import pytest

from core.basic import (
    BasicCertificate,
    BasicKind,
    classify_basic,
    classify_polynomial,
    find_good_partition,
    is_bipartite_trigraph,
    is_line_trigraph,
    validate_certificate,
    validate_good_partition,
)
from core.errors import CapExceeded
from core.trigraph import Trigraph, complement, induced, is_berge
from utils.fixtures import fixture
from utils.generator import random_bipartite


def test_c4_is_bipartite(c4):
    assert is_bipartite_trigraph(c4) == (0b0101, 0b1010)


def test_triangle_is_not_bipartite():
    assert is_bipartite_trigraph(fixture("K3")) is None


def test_switchable_pair_splits_into_singletons():
    assert is_bipartite_trigraph(fixture("pair")) == (0b01, 0b10)


def test_c6_is_a_line_trigraph(c6):
    root = is_line_trigraph(c6)
    assert root is not None
    assert nx.is_bipartite(root.graph)
    assert root.graph.number_of_edges() == 6
    assert all(d == 2 for _, d in root.graph.degree())


def test_triangle_with_a_switchable_pair_is_not_line():
    T = Trigraph.from_edges(3, [(0, 1), (1, 2)], switchable=[(0, 2)])
    assert is_line_trigraph(T) is None


def test_triangle_is_the_line_graph_of_a_claw():
    root = is_line_trigraph(fixture("K3"))
    assert root is not None
    assert sorted(d for _, d in root.graph.degree()) == [1, 1, 1, 3]


def test_c5_is_not_line():
    assert is_line_trigraph(fixture("C5")) is None


def test_line_cap():
    with pytest.raises(CapExceeded):
        is_line_trigraph(Trigraph.empty(5), cap=4)


def test_c4_has_a_good_partition(c4):
    partition = find_good_partition(c4)
    assert partition is not None
    assert validate_good_partition(c4, *partition) is None


def test_empty_trigraph_has_a_good_partition():
    assert find_good_partition(Trigraph.empty(0)) == (0, 0)


def test_good_partition_must_keep_switchable_pairs_on_one_side():
    T = fixture("pair")
    assert validate_good_partition(T, 0b01, 0b10) is not None
    assert validate_good_partition(T, 0b11, 0) is None


def test_good_partition_cap():
    with pytest.raises(CapExceeded):
        find_good_partition(Trigraph.empty(17))


@pytest.mark.parametrize("name, kind", [
    ("C4", BasicKind.BIPARTITE),
    ("C6", BasicKind.BIPARTITE),
    ("K4", BasicKind.CO_BIPARTITE),
    ("prism", BasicKind.CO_BIPARTITE),
    ("C5", BasicKind.NOT_BASIC),
    ("claw", BasicKind.BIPARTITE),
])
def test_classification_order(name, kind):
    cert = classify_basic(fixture(name))
    assert cert.kind == kind
    assert validate_certificate(fixture(name), cert) is None


def test_complement_of_c6_is_co_bipartite(c6):
    assert classify_basic(complement(c6)).kind == BasicKind.CO_BIPARTITE


def test_c7_complement_is_not_basic():
    assert classify_basic(complement(fixture("C7"))).kind == BasicKind.NOT_BASIC


def test_polynomial_classes_skip_the_doubled_search(c4):
    assert classify_polynomial(c4).kind == BasicKind.BIPARTITE
    assert classify_polynomial(fixture("C5")).kind == BasicKind.NOT_BASIC


def test_certificate_with_a_wrong_bipartition(c4):
    cert = BasicCertificate(BasicKind.BIPARTITE, bipartition=(0b0011, 0b1100))
    assert validate_certificate(c4, cert) is not None


@pytest.mark.parametrize("seed", range(10))
def test_bipartite_duality(seed):
    T = random_bipartite(4 + seed % 6, random.Random(seed))
    assert classify_basic(T).kind == BasicKind.BIPARTITE
    assert classify_basic(complement(T)).kind in (BasicKind.CO_BIPARTITE, BasicKind.BIPARTITE)


@pytest.mark.parametrize("name", ["C4", "C6", "K4", "prism", "claw", "P5", "S3", "pair"])
def test_basic_trigraphs_are_berge(name):
    T = fixture(name)
    assert classify_basic(T).is_basic
    assert is_berge(T)[0]


@pytest.mark.parametrize("name", ["C6", "prism", "claw"])
def test_induced_subtrigraphs_of_basic_trigraphs_are_basic(name):
    T = fixture(name)
    for X in range(1 << T.n):
        assert classify_basic(induced(T, X)[0]).is_basic

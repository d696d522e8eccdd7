import networkx as nx
import pytest

from core.edge_split import bipartite_multigraph_split, disjoint_pair_count, score
from core.errors import PreconditionViolation


def _multi(graph: nx.Graph) -> nx.MultiGraph:
    return nx.MultiGraph(graph)


def test_disjoint_pairs_of_c4():
    assert disjoint_pair_count(_multi(nx.cycle_graph(4))) == 2


def test_parallel_edges_multiply():
    G = nx.MultiGraph()
    G.add_edges_from([(0, 1), (0, 1), (2, 3), (2, 3), (2, 3)])
    assert disjoint_pair_count(G) == 6


def test_score():
    G = _multi(nx.path_graph(4))
    assert score(G, {0, 1}) == 1
    assert score(G, {0, 2}) == 0


def test_no_edges():
    G = nx.MultiGraph()
    G.add_nodes_from(range(3))
    with pytest.raises(PreconditionViolation):
        bipartite_multigraph_split(G)


def test_odd_cycle_is_not_bipartite():
    with pytest.raises(PreconditionViolation):
        bipartite_multigraph_split(_multi(nx.cycle_graph(9)))


def test_star_has_a_heavy_vertex():
    with pytest.raises(PreconditionViolation):
        bipartite_multigraph_split(_multi(nx.star_graph(6)))


@pytest.mark.parametrize("n", [12, 20, 30])
def test_derandomized_split_of_even_cycles(n):
    G = _multi(nx.cycle_graph(n))
    split = bipartite_multigraph_split(G)
    m = G.number_of_edges()
    assert 8 * split.score >= split.gamma
    assert all(48 * s >= m for s in split.sizes)
    for u, v, _ in split.first:
        assert u in split.side and v in split.side
    for u, v, _ in split.second:
        assert u not in split.side and v not in split.side


def test_derandomized_split_is_deterministic():
    G = _multi(nx.grid_2d_graph(4, 4))
    assert bipartite_multigraph_split(G).side == bipartite_multigraph_split(G).side


def test_random_split():
    G = _multi(nx.cycle_graph(20))
    split = bipartite_multigraph_split(G, strategy="random", seed=3)
    assert all(48 * s >= 20 for s in split.sizes)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        bipartite_multigraph_split(_multi(nx.cycle_graph(12)), strategy="greedy")

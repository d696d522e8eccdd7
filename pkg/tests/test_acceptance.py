import functools
import itertools
import random

import networkx as nx
import pytest

from conftest import make_random_trigraph
from core.basic import classify_basic
from core.cs_builder import basic_cs_separator, build_cs_separator_report
from core.decomposition import build_block, find_any_two_join, find_balanced_skew_partition
from core.edge_split import bipartite_multigraph_split
from core.errors import UnrealizableRecipe
from core.kjoin import product_separator
from core.separation import extend_maximal_separator, maximal_clique_family, verify_cs_separator
from core.trigraph import (
    complement,
    enumerate_cliques,
    enumerate_stable_sets,
    full_mask,
    is_berge,
    is_in_class_F,
    members,
    realizations,
    semirealizations,
    size,
)
from utils.fixtures import fixture
from utils.generator import generate, precondition_failure, random_bipartite, random_line

pytestmark = pytest.mark.slow

CYCLE_RECIPES = [
    "join2(odd, leaf(C6), leaf(C6))",
    "join2(odd, leaf(C6), leaf(C8))",
    "join2(odd, leaf(C8), leaf(C8))",
    "join2(odd, leaf(C6), leaf(C10))",
    "join2(odd, leaf(C8), leaf(C10))",
    "join2(even, leaf(C8), leaf(C8))",
    "join2(even, leaf(C8), leaf(C10))",
    "join2(even, leaf(C10), leaf(C10))",
    "cojoin2(odd, leaf(prism), leaf(prism))",
    "join2(odd, leaf(C6), join2(even, leaf(C8), leaf(C8)))",
]

# random leaves; a seed may be refused by the generator
MIXED_RECIPES = [
    "join2(odd, leaf(bipartite(8)), leaf(C6))",
    "join2(even, leaf(line(7)), leaf(C8))",
    "join2(odd, leaf(prism), leaf(bipartite(7)))",
]

BASIC_FIXTURES = ["C4", "C6", "C8", "C10", "C12", "C14", "K3", "K5", "K8", "S3", "S5", "S8", "prism"]

RANDOM_ATTEMPTS = 50

CORPUS = (
    [("recipe", recipe, seed) for recipe in CYCLE_RECIPES for seed in range(20)]
    + [("recipe", recipe, seed) for recipe in MIXED_RECIPES for seed in range(10)]
    + [("fixture", name, co) for name in BASIC_FIXTURES for co in (False, True)]
    + [("random", None, seed) for seed in range(40)]
)


def corpus_id(entry) -> str:
    source, name, detail = entry
    if source == "fixture":
        return f"co-{name}" if detail else name
    return f"{source}-{name}-{detail}" if name else f"{source}-{detail}"


@functools.lru_cache(maxsize=None)
def corpus_trigraph(entry):
    """The instance behind a corpus entry, or None when the seed yields none"""
    source, name, detail = entry
    if source == "recipe":
        try:
            return generate(name, detail, run_checks=False).trigraph
        except UnrealizableRecipe:
            return None
    if source == "fixture":
        T = fixture(name)
        return complement(T) if detail else T
    n, switchable = 5 + detail % 4, detail % 3
    for attempt in range(RANDOM_ATTEMPTS):
        T = make_random_trigraph(1000 * detail + attempt, n, switchable=switchable)
        if precondition_failure(T) is None:
            return T
    return None


def instance(entry):
    T = corpus_trigraph(entry)
    if T is None:
        pytest.skip("no instance in class F without a balanced skew-partition for this seed")
    return T


@pytest.mark.parametrize("entry", CORPUS, ids=corpus_id)
def test_built_separator_verifies(entry):
    T = instance(entry)
    build = build_cs_separator_report(T, verify=True)
    assert build.verified is True
    assert len(build.separator) == build.total


@pytest.mark.parametrize("entry", CORPUS, ids=corpus_id)
def test_extension_accounting(entry):
    T = instance(entry)
    F = maximal_clique_family(T)
    extended = extend_maximal_separator(T, F)
    assert len(extended) == len(F) + 2 * T.n + 4 * len(T.switchable_pairs())
    assert verify_cs_separator(T, extended)[0]


@pytest.mark.parametrize("entry", CORPUS, ids=corpus_id)
def test_blocks_stay_in_class_F_without_a_balanced_skew_partition(entry):
    T = instance(entry)
    split = find_any_two_join(T)
    if split is None:
        pytest.skip("no 2-join")
    for side, X in ((1, split.x1), (2, split.x2)):
        assert size(X) >= 4
        block, _ = build_block(T, split, side)
        assert is_in_class_F(block)[0]
        assert find_balanced_skew_partition(block) is None


def random_bipartite_multigraph(seed: int, max_edges: int = 40) -> nx.MultiGraph:
    """Resampled until every degree is below m/3"""
    rng = random.Random(seed)
    while True:
        m = rng.randint(12, max_edges)
        left, right = rng.randint(4, 8), rng.randint(4, 8)
        G = nx.MultiGraph()
        G.add_edges_from((rng.randrange(left), left + rng.randrange(right)) for _ in range(m))
        if 3 * max(d for _, d in G.degree()) < m:
            return G


def brute_disjoint_pairs(G: nx.MultiGraph) -> int:
    return sum(1 for e, f in itertools.combinations(G.edges(keys=True), 2) if not {e[0], e[1]} & {f[0], f[1]})


@pytest.mark.parametrize("seed", range(200))
def test_edge_split_bounds(seed):
    G = random_bipartite_multigraph(seed)
    m = G.number_of_edges()
    split = bipartite_multigraph_split(G)
    assert all(48 * s >= m for s in split.sizes)
    inside = {v for u, w, _ in split.first for v in (u, w)}
    outside = {v for u, w, _ in split.second for v in (u, w)}
    assert not inside & outside
    if m <= 20:
        gamma = brute_disjoint_pairs(G)
        assert split.gamma == gamma
        assert 6 * gamma >= m * m
        assert 8 * split.score >= gamma


@pytest.mark.parametrize("seed", range(100))
def test_berge_agrees_with_every_realization(seed):
    T = make_random_trigraph(seed, 5 + seed % 6, switchable=seed % 7)
    berge = is_berge(T)[0]
    assert berge == all(is_berge(R)[0] for R in realizations(T))
    if len(T.switchable_pairs()) <= 4:
        assert berge == all(is_berge(R)[0] for R in semirealizations(T))


def product_case(name: str):
    kind, _, seed = name.partition("-")
    if kind == "bipartite":
        return random_bipartite(10, random.Random(int(seed)))
    if kind == "line":
        return random_line(9, random.Random(int(seed)))
    return fixture(name)


def unions_of_two(subsets) -> set:
    subsets = list(subsets)
    return {a | b for a in subsets for b in subsets}


def cut_rows(F, n: int, clique_side: bool) -> list[int]:
    rows = [0] * n
    for i, cut in enumerate(F.cuts):
        for v in members(cut.clique_side if clique_side else cut.stable_side):
            rows[v] |= 1 << i
    return rows


def common_cuts(rows: list[int], subset: int, everything: int) -> int:
    for v in members(subset):
        everything &= rows[v]
    return everything


@pytest.mark.parametrize("name", [
    "C4", "C6", "C10", "P6", "P10", "prism", "K5", "S6",
    "bipartite-0", "bipartite-1", "bipartite-2", "line-0", "line-1", "line-2",
])
def test_product_separator_separates_unions_of_two(name):
    T = product_case(name)
    assert T.n <= 10
    F = basic_cs_separator(T, classify_basic(T))
    assert verify_cs_separator(T, F)[0]
    product = product_separator(F, 2)
    assert len(product) <= len(F) ** 4

    everything = full_mask(len(product))
    in_clique = cut_rows(product, T.n, True)
    in_stable = cut_rows(product, T.n, False)
    cliques = {K: common_cuts(in_clique, K, everything) for K in unions_of_two(enumerate_cliques(T))}
    stables = {S: common_cuts(in_stable, S, everything) for S in unions_of_two(enumerate_stable_sets(T))}
    missed = [(members(K), members(S)) for K, k_cuts in cliques.items() for S, s_cuts in stables.items()
              if not K & S and not k_cuts & s_cuts]
    assert missed == []

"""Shared fixtures for the test suite"""

import random

import numpy as np
import pytest

from core.trigraph import Trigraph
from utils.fixtures import fixture


def make_random_trigraph(seed: int, n: int, switchable: int = 2) -> Trigraph:
    """Random graph on n vertices with up to `switchable` pairs turned switchable"""
    rng = random.Random(seed)
    theta = np.full((n, n), -1, dtype=np.int8)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for u, v in pairs:
        if rng.random() < 0.5:
            theta[u, v] = theta[v, u] = 1
    for u, v in rng.sample(pairs, min(switchable, len(pairs))):
        theta[u, v] = theta[v, u] = 0
    return Trigraph(theta)


@pytest.fixture
def random_trigraph():
    return make_random_trigraph


@pytest.fixture
def even_block():
    """a=0, c=1, b=2 with a-c-b switchable, ab a strong antiedge, and
    vertex 3 strongly adjacent to a and b"""
    return Trigraph.from_edges(4, [(0, 3), (2, 3)], switchable=[(0, 1), (1, 2)])


@pytest.fixture
def c4():
    return fixture("C4")


@pytest.fixture
def c6():
    return fixture("C6")


@pytest.fixture
def tmp_trigraph_file(tmp_path):
    """Write a trigraph file and return its path"""

    def write(text: str, name: str = "input.tri"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def odd_cycle_join():
    """C8 as the odd 2-join of two P4s glued at their ends"""
    from utils.generator import compose_two_join

    P4 = fixture("P4")
    return compose_two_join(P4, 1 << 0, 1 << 3, P4, 1 << 0, 1 << 3)


@pytest.fixture
def spider_join():
    """19 vertices, not basic: a claw with a long tail (X1) 2-joined to a
    path carrying a triangle (X2); both A-to-B paths have length 7"""
    from utils.generator import compose_two_join

    T1 = Trigraph.from_edges(9, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)])
    T2 = Trigraph.from_edges(10, [(i, i + 1) for i in range(7)] + [(4, 8), (4, 9), (8, 9)])
    return compose_two_join(T1, 1 << 1, 1 << 8, T2, 1 << 0, 1 << 7)

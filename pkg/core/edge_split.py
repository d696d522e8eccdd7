"""Edge split of a bipartite multigraph: two endpoint-disjoint edge sets
each holding at least m/48 of the m edges, when every degree is below m/3."""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Optional

import networkx as nx

from .config import SPLIT_DENOMINATOR
from .errors import InvariantBroken, PreconditionViolation

logger = logging.getLogger(__name__)

Edge = tuple[Hashable, Hashable, Hashable]


@dataclass(frozen=True)
class EdgeSplit:
    side: frozenset          # U; the other side is every remaining node
    first: tuple[Edge, ...]  # edges inside U
    second: tuple[Edge, ...]  # edges inside the other side
    score: int
    gamma: int

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.first), len(self.second)


def _ordered_nodes(G: nx.MultiGraph) -> list:
    try:
        return sorted(G.nodes())
    except TypeError:
        return list(G.nodes())


def _simple_edges(G: nx.MultiGraph) -> Counter:
    """Multiplicity of every simple edge, with endpoints in a fixed order."""
    order = {v: i for i, v in enumerate(_ordered_nodes(G))}
    counts: Counter = Counter()
    for u, v in G.edges():
        if u == v:
            raise PreconditionViolation(f"loop at {u!r}")
        counts[(u, v) if order[u] < order[v] else (v, u)] += 1
    return counts


def disjoint_pair_count(G: nx.MultiGraph) -> int:
    """gamma: unordered pairs of edges without a common endpoint."""
    simple = list(_simple_edges(G).items())
    gamma = 0
    for i, ((u, v), mu) in enumerate(simple):
        for (x, y), mx in simple[i + 1:]:
            if not {u, v} & {x, y}:
                gamma += mu * mx
    return gamma


def score(G: nx.MultiGraph, side: set) -> int:
    """S(U, U') = |E inside U| * |E inside U'|."""
    inside = outside = 0
    for (u, v), mult in _simple_edges(G).items():
        if u in side and v in side:
            inside += mult
        elif u not in side and v not in side:
            outside += mult
    return inside * outside


def _expected_score(simple: list, q: dict) -> int:
    """16 times the conditional expectation of S.

    q[v] is twice P(v in U): 2 (in U), 0 (in U') or 1 (undecided).
    """
    p_in = [(e, mult, q[e[0]] * q[e[1]], (2 - q[e[0]]) * (2 - q[e[1]])) for e, mult in simple]
    total = 0
    for (e, me, pe_in, _) in p_in:
        if not pe_in:
            continue
        for (f, mf, _, pf_out) in p_in:
            if pf_out and not set(e) & set(f):
                total += me * mf * pe_in * pf_out
    return total


def _check_preconditions(G: nx.MultiGraph) -> int:
    m = G.number_of_edges()
    if m < 1:
        raise PreconditionViolation("the multigraph has no edges")
    if not nx.is_bipartite(G):
        raise PreconditionViolation("the multigraph is not bipartite")
    max_degree = max(d for _, d in G.degree())
    if 3 * max_degree >= m:
        raise PreconditionViolation(f"maximum degree {max_degree} is not below m/3 (m={m})")
    return m


def _result(G: nx.MultiGraph, side: set, gamma: int) -> EdgeSplit:
    first = tuple(e for e in G.edges(keys=True) if e[0] in side and e[1] in side)
    second = tuple(e for e in G.edges(keys=True) if e[0] not in side and e[1] not in side)
    return EdgeSplit(frozenset(side), first, second, len(first) * len(second), gamma)


def _qualifies(split: EdgeSplit, m: int) -> bool:
    return all(SPLIT_DENOMINATOR * s >= m for s in split.sizes)


def bipartite_multigraph_split(G: nx.MultiGraph, strategy: str = "derandomized",
                               seed: Optional[int] = None, retries: int = 200) -> EdgeSplit:
    """Derandomized by conditional expectation over the nodes in order;
    a node goes to U unless U' has strictly larger expectation."""
    m = _check_preconditions(G)
    gamma = disjoint_pair_count(G)
    if strategy == "random":
        rng = random.Random(seed)
        nodes = _ordered_nodes(G)
        for attempt in range(retries):
            side = {v for v in nodes if rng.random() < 0.5}
            split = _result(G, side, gamma)
            if _qualifies(split, m):
                logger.debug("random edge split found after %d attempts", attempt + 1)
                return split
        raise InvariantBroken(f"no qualifying random partition in {retries} attempts")
    if strategy != "derandomized":
        raise ValueError(f"Unsupported edge split strategy: {strategy}")

    simple = list(_simple_edges(G).items())
    q = {v: 1 for v in G.nodes()}
    for v in _ordered_nodes(G):
        q[v] = 2
        in_u = _expected_score(simple, q)
        q[v] = 0
        in_other = _expected_score(simple, q)
        q[v] = 2 if in_u >= in_other else 0
    side = {v for v, x in q.items() if x == 2}
    split = _result(G, side, gamma)
    if 8 * split.score < gamma or not _qualifies(split, m):
        raise InvariantBroken(f"edge split sizes {split.sizes} for m={m}, gamma={gamma}")
    return split

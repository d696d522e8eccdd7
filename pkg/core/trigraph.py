"""Trigraph representation, realizations, Berge / class-F recognition and
clique / stable-set enumeration.

Vertices are the indices 0..n-1. Vertex subsets are Python ints used as
bitsets (bit v set <=> v in the subset); every exhaustive oracle in the
package works on these masks.
"""

from __future__ import annotations

import hashlib
import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

import networkx as nx
import numpy as np

from .config import BERGE_CAP, CLIQUE_CAP, REALIZATION_CAP
from .errors import PreconditionViolation, check_cap

logger = logging.getLogger(__name__)

VertexSubset = int

STRONG_EDGE = 1
SWITCHABLE = 0
STRONG_ANTIEDGE = -1


# ---------------------------------------------------------------------------
# bitset helpers
# ---------------------------------------------------------------------------

def mask_of(vertices: Iterable[int]) -> VertexSubset:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSubset) -> tuple[int, ...]:
    """Vertices of a mask in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def lowest(mask: VertexSubset) -> int:
    return (mask & -mask).bit_length() - 1


def size(mask: VertexSubset) -> int:
    return mask.bit_count()


def full_mask(n: int) -> VertexSubset:
    return (1 << n) - 1


# ---------------------------------------------------------------------------
# Trigraph
# ---------------------------------------------------------------------------

class Trigraph:
    """Immutable trigraph backed by a symmetric int8 theta matrix.

    Neighbourhood masks are precomputed for the four relations used
    everywhere: adjacent (theta >= 0), strongly adjacent (theta = 1),
    antiadjacent (theta <= 0) and strongly antiadjacent (theta = -1).
    """

    __slots__ = ("n", "_theta", "adj", "strong", "anti", "strong_anti", "switch")

    def __init__(self, theta):
        matrix = np.array(theta, dtype=np.int8, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise PreconditionViolation(f"theta must be a square matrix, got shape {matrix.shape}")
        if not np.array_equal(matrix, matrix.T):
            raise PreconditionViolation("theta must be symmetric")
        if matrix.size and (matrix.min() < -1 or matrix.max() > 1):
            raise PreconditionViolation("theta values must lie in {-1, 0, 1}")
        n = matrix.shape[0]
        np.fill_diagonal(matrix, 0)
        matrix.setflags(write=False)

        self.n = n
        self._theta = matrix
        self.adj = []
        self.strong = []
        self.anti = []
        self.strong_anti = []
        self.switch = []
        for v in range(n):
            row = matrix[v]
            strong = mask_of(np.flatnonzero(row == STRONG_EDGE).tolist())
            switch = mask_of(np.flatnonzero(row == SWITCHABLE).tolist()) & ~(1 << v)
            strong_anti = mask_of(np.flatnonzero(row == STRONG_ANTIEDGE).tolist())
            self.strong.append(strong)
            self.switch.append(switch)
            self.strong_anti.append(strong_anti)
            self.adj.append(strong | switch)
            self.anti.append(strong_anti | switch)

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls, n: int = 0) -> "Trigraph":
        """n vertices, every pair a strong antiedge."""
        return cls(np.full((n, n), STRONG_ANTIEDGE, dtype=np.int8))

    @classmethod
    def from_pairs(cls, n: int, values: Mapping[tuple[int, int], int],
                   default: int = STRONG_ANTIEDGE) -> "Trigraph":
        matrix = np.full((n, n), default, dtype=np.int8)
        for (u, v), val in values.items():
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise PreconditionViolation(f"invalid pair ({u}, {v}) for n={n}")
            matrix[u, v] = matrix[v, u] = val
        return cls(matrix)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   switchable: Iterable[tuple[int, int]] = ()) -> "Trigraph":
        """Graph with strong edges `edges`; pairs in `switchable` get theta 0."""
        values = {tuple(sorted(e)): STRONG_EDGE for e in edges}
        values.update({tuple(sorted(p)): SWITCHABLE for p in switchable})
        return cls.from_pairs(n, values)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Trigraph":
        """Graph to trigraph; nodes are relabelled in sorted order."""
        order = sorted(graph.nodes())
        index = {v: i for i, v in enumerate(order)}
        return cls.from_edges(len(order), ((index[u], index[v]) for u, v in graph.edges()))

    # -- accessors ----------------------------------------------------------

    @property
    def theta(self) -> np.ndarray:
        return self._theta

    @property
    def vertex_mask(self) -> VertexSubset:
        return full_mask(self.n)

    def value(self, u: int, v: int) -> int:
        return int(self._theta[u, v])

    def is_adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def is_antiadjacent(self, u: int, v: int) -> bool:
        return bool(self.anti[u] >> v & 1)

    def closed_neighborhood(self, v: int) -> VertexSubset:
        return self.adj[v] | (1 << v)

    def switchable_pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.switch[u]) if u < v]

    def has_switchable_pairs(self) -> bool:
        return any(self.switch)

    def adjacency_graph(self, strong_only: bool = False) -> nx.Graph:
        """networkx graph of adjacent pairs (the full realization by default)."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        rows = self.strong if strong_only else self.adj
        graph.add_edges_from((u, v) for u in range(self.n) for v in members(rows[u]) if u < v)
        return graph

    def fingerprint(self) -> str:
        digest = hashlib.sha256()
        digest.update(str(self.n).encode())
        digest.update(self._theta.tobytes())
        return digest.hexdigest()[:16]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trigraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._theta, other._theta)

    def __hash__(self) -> int:
        return hash((self.n, self._theta.tobytes()))

    def __repr__(self) -> str:
        strong = sum(size(m) for m in self.strong) // 2
        return f"Trigraph(n={self.n}, strong_edges={strong}, switchable={len(self.switchable_pairs())})"


# ---------------------------------------------------------------------------
# basic operations
# ---------------------------------------------------------------------------

def complement(T: Trigraph) -> Trigraph:
    return Trigraph(-T.theta.astype(np.int8))


def induced(T: Trigraph, X: VertexSubset) -> tuple[Trigraph, tuple[int, ...]]:
    """Subtrigraph on X plus the relabelling (new index -> old vertex)."""
    if X >> T.n:
        raise PreconditionViolation(f"subset {members(X)} is out of range for n={T.n}")
    kept = members(X)
    index = np.array(kept, dtype=np.intp)
    return Trigraph(T.theta[np.ix_(index, index)]), kept


def full_realization(T: Trigraph) -> Trigraph:
    matrix = T.theta.copy()
    matrix[matrix == SWITCHABLE] = STRONG_EDGE
    return Trigraph(matrix)


def _assign(T: Trigraph, pairs: list[tuple[int, int]], values: Iterable[int]) -> Trigraph:
    matrix = T.theta.copy()
    for (u, v), val in zip(pairs, values):
        matrix[u, v] = matrix[v, u] = val
    return Trigraph(matrix)


def realizations(T: Trigraph, cap: Optional[int] = REALIZATION_CAP) -> Iterator[Trigraph]:
    """All 2^|sigma| graphs obtained by deciding every switchable pair."""
    pairs = T.switchable_pairs()
    check_cap("realizations (|sigma|)", len(pairs), cap)
    for values in itertools.product((STRONG_ANTIEDGE, STRONG_EDGE), repeat=len(pairs)):
        yield _assign(T, pairs, values)


def semirealizations(T: Trigraph, cap: Optional[int] = REALIZATION_CAP) -> Iterator[Trigraph]:
    """All 3^|sigma| partial decisions; a pair may also stay switchable."""
    pairs = T.switchable_pairs()
    check_cap("semirealizations (|sigma|)", len(pairs), cap)
    for values in itertools.product((STRONG_ANTIEDGE, SWITCHABLE, STRONG_EDGE), repeat=len(pairs)):
        yield _assign(T, pairs, values)


def switchable_graph(T: Trigraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(T.n))
    graph.add_edges_from(T.switchable_pairs())
    return graph


def switchable_components(T: Trigraph) -> list[tuple[int, ...]]:
    comps = (tuple(sorted(c)) for c in nx.connected_components(switchable_graph(T)))
    return sorted(comps)


# ---------------------------------------------------------------------------
# set relations
# ---------------------------------------------------------------------------

def is_clique(T: Trigraph, K: VertexSubset) -> bool:
    return all((T.adj[v] | (1 << v)) & K == K for v in members(K))


def is_stable_set(T: Trigraph, S: VertexSubset) -> bool:
    return all((T.anti[v] | (1 << v)) & S == S for v in members(S))


def is_strong_clique(T: Trigraph, K: VertexSubset) -> bool:
    return all((T.strong[v] | (1 << v)) & K == K for v in members(K))


def is_strong_stable_set(T: Trigraph, S: VertexSubset) -> bool:
    return all((T.strong_anti[v] | (1 << v)) & S == S for v in members(S))


def strongly_complete(T: Trigraph, X: VertexSubset, Y: VertexSubset) -> bool:
    return all(T.strong[v] & Y == Y for v in members(X))


def strongly_anticomplete(T: Trigraph, X: VertexSubset, Y: VertexSubset) -> bool:
    return all(T.strong_anti[v] & Y == Y for v in members(X))


def _components(rows: list[int], mask: VertexSubset) -> list[VertexSubset]:
    comps = []
    remaining = mask
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            v = lowest(frontier)
            frontier &= frontier - 1
            new = rows[v] & remaining & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        remaining &= ~comp
    return comps


def components(T: Trigraph, X: Optional[VertexSubset] = None) -> list[VertexSubset]:
    """Components of the full realization of T[X]."""
    return _components(T.adj, T.vertex_mask if X is None else X)


def anticomponents(T: Trigraph, X: Optional[VertexSubset] = None) -> list[VertexSubset]:
    """Components of the full realization of the complement of T[X]."""
    return _components(T.anti, T.vertex_mask if X is None else X)


def is_connected(T: Trigraph, X: VertexSubset) -> bool:
    return len(components(T, X)) <= 1


def is_anticonnected(T: Trigraph, X: VertexSubset) -> bool:
    return len(anticomponents(T, X)) <= 1


# ---------------------------------------------------------------------------
# Berge recognition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OddCycleWitness:
    kind: str  # "hole" or "antihole"
    vertices: tuple[int, ...]


def _find_odd_hole(adj: list[int], anti: list[int], n: int) -> Optional[tuple[int, ...]]:
    """DFS over induced paths whose first vertex is the smallest one.

    Consecutive vertices must be adjacent (`adj`), all other pairs
    antiadjacent (`anti`); a switchable pair qualifies for both.
    """

    def extend(path: list[int], in_path: int, ok: int) -> Optional[tuple[int, ...]]:
        # ok: vertices antiadjacent to every interior path vertex
        first, last = path[0], path[-1]
        for u in members(adj[last] & ok & ~in_path):
            length = len(path) + 1
            if adj[first] >> u & 1 and length >= 5 and length % 2 == 1:
                return tuple(path + [u])
            if anti[first] >> u & 1:
                found = extend(path + [u], in_path | (1 << u), ok & anti[last])
                if found:
                    return found
        return None

    for start in range(n):
        above = full_mask(n) & ~full_mask(start + 1)
        for second in members(adj[start] & above):
            found = extend([start, second], (1 << start) | (1 << second), above)
            if found:
                return found
    return None


def find_odd_hole(T: Trigraph, cap: Optional[int] = BERGE_CAP) -> Optional[tuple[int, ...]]:
    check_cap("odd hole search (n)", T.n, cap)
    return _find_odd_hole(T.adj, T.anti, T.n)


def find_odd_antihole(T: Trigraph, cap: Optional[int] = BERGE_CAP) -> Optional[tuple[int, ...]]:
    check_cap("odd antihole search (n)", T.n, cap)
    return _find_odd_hole(T.anti, T.adj, T.n)


def is_berge(T: Trigraph, cap: Optional[int] = BERGE_CAP) -> tuple[bool, Optional[OddCycleWitness]]:
    hole = find_odd_hole(T, cap)
    if hole:
        return False, OddCycleWitness("hole", hole)
    antihole = find_odd_antihole(T, cap)
    if antihole:
        return False, OddCycleWitness("antihole", antihole)
    return True, None


def class_F_structure_violation(T: Trigraph) -> Optional[str]:
    """Switchable-component conditions of class F (everything but Berge)."""
    for comp in switchable_components(T):
        edges = sum(size(T.switch[v] & mask_of(comp)) for v in comp) // 2
        if edges > 2:
            return f"switchable component {comp} has {edges} edges"
    everything = T.vertex_mask
    for v in range(T.n):
        if size(T.switch[v]) != 2:
            continue
        x, y = members(T.switch[v])
        rest = everything & ~mask_of((v, x, y))
        if T.strong[v] & rest == rest and T.value(x, y) == STRONG_EDGE:
            continue
        if T.strong_anti[v] & rest == rest and T.value(x, y) == STRONG_ANTIEDGE:
            continue
        return f"vertex {v} with switchable neighbours {x},{y} satisfies neither completeness alternative"
    return None


def is_in_class_F(T: Trigraph, cap: Optional[int] = BERGE_CAP) -> tuple[bool, Optional[str]]:
    violation = class_F_structure_violation(T)
    if violation:
        return False, violation
    berge, witness = is_berge(T, cap)
    if not berge:
        return False, f"odd {witness.kind} {witness.vertices}"
    return True, None


def clique_stable_intersection_ok(T: Trigraph, K: VertexSubset, S: VertexSubset) -> bool:
    """In class F a clique and a stable set share one vertex or one switchable pair at most."""
    common = members(K & S)
    if len(common) <= 1:
        return True
    return len(common) == 2 and T.value(*common) == SWITCHABLE


# ---------------------------------------------------------------------------
# clique / stable set enumeration
# ---------------------------------------------------------------------------

def _all_cliques(adj: list[int], candidates: int, current: int) -> Iterator[VertexSubset]:
    yield current
    while candidates:
        v = lowest(candidates)
        candidates &= candidates - 1
        yield from _all_cliques(adj, candidates & adj[v], current | (1 << v))


def _maximal_cliques(adj: list[int], R: int, P: int, X: int) -> Iterator[VertexSubset]:
    # Bron-Kerbosch with pivoting on bitsets
    if not P and not X:
        yield R
        return
    pivot = max(members(P | X), key=lambda u: size(P & adj[u]))
    for v in members(P & ~adj[pivot]):
        yield from _maximal_cliques(adj, R | (1 << v), P & adj[v], X & adj[v])
        P &= ~(1 << v)
        X |= 1 << v


def enumerate_cliques(T: Trigraph, maximal_only: bool = False,
                      cap: Optional[int] = CLIQUE_CAP) -> Iterator[VertexSubset]:
    check_cap("clique enumeration (n)", T.n, cap)
    if maximal_only:
        return _maximal_cliques(T.adj, 0, T.vertex_mask, 0)
    return _all_cliques(T.adj, T.vertex_mask, 0)


def enumerate_stable_sets(T: Trigraph, maximal_only: bool = False,
                          cap: Optional[int] = CLIQUE_CAP) -> Iterator[VertexSubset]:
    check_cap("stable set enumeration (n)", T.n, cap)
    if maximal_only:
        return _maximal_cliques(T.anti, 0, T.vertex_mask, 0)
    return _all_cliques(T.anti, T.vertex_mask, 0)

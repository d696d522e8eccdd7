"""Recognition of the five basic trigraph classes, with certificates."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import networkx as nx

from .config import BASIC_CAP, LINE_CAP
from .errors import InvariantBroken, check_cap
from .trigraph import (
    Trigraph,
    VertexSubset,
    anticomponents,
    complement,
    components,
    is_strong_stable_set,
    mask_of,
    members,
    size,
    switchable_components,
)

logger = logging.getLogger(__name__)


class BasicKind(str, Enum):
    BIPARTITE = "bipartite"
    CO_BIPARTITE = "co-bipartite"
    LINE = "line"
    CO_LINE = "co-line"
    DOUBLED = "doubled"
    NOT_BASIC = "not-basic"

    @property
    def uncomplemented(self) -> "BasicKind":
        """Kind of the complement for the two co-classes."""
        return {BasicKind.CO_BIPARTITE: BasicKind.BIPARTITE, BasicKind.CO_LINE: BasicKind.LINE}[self]


RootNode = tuple[str, int]


@dataclass(frozen=True, eq=False)
class LineRoot:
    """Bipartite root R with one R-edge per trigraph vertex.

    Nodes are ("P", i) and ("Q", j); `edge_of[v]` is the R-edge of v.
    """

    graph: nx.Graph
    edge_of: tuple[tuple[RootNode, RootNode], ...]

    @property
    def vertex_of(self) -> dict[tuple[RootNode, RootNode], int]:
        return {edge: v for v, edge in enumerate(self.edge_of)}

    def star(self, node: RootNode) -> VertexSubset:
        """Trigraph vertices whose R-edge is incident to `node`."""
        return mask_of(v for v, edge in enumerate(self.edge_of) if node in edge)


@dataclass(frozen=True, eq=False)
class BasicCertificate:
    kind: BasicKind
    bipartition: Optional[tuple[VertexSubset, VertexSubset]] = None
    root: Optional[LineRoot] = None
    good_partition: Optional[tuple[VertexSubset, VertexSubset]] = None
    notes: dict = field(default_factory=dict)

    @property
    def is_basic(self) -> bool:
        return self.kind != BasicKind.NOT_BASIC


# ---------------------------------------------------------------------------
# bipartite
# ---------------------------------------------------------------------------

def is_bipartite_trigraph(T: Trigraph) -> Optional[tuple[VertexSubset, VertexSubset]]:
    """Two strong stable sets covering V(T), via 2-colouring the adjacent pairs."""
    graph = T.adjacency_graph()
    if not nx.is_bipartite(graph):
        return None
    if T.n == 0:
        return 0, 0
    colour = nx.bipartite.color(graph)
    first = mask_of(v for v in range(T.n) if colour[v] == colour[0])
    return first, T.vertex_mask & ~first


# ---------------------------------------------------------------------------
# line trigraphs
# ---------------------------------------------------------------------------

def _has_weak_triangle(T: Trigraph) -> bool:
    """Some clique of size 3 contains a switchable pair."""
    return any(T.adj[u] & T.adj[v] for u, v in T.switchable_pairs())


def _two_colour_edges(T: Trigraph) -> Optional[dict[tuple[int, int], int]]:
    """Colour the edges of the full realization so that edges sharing a
    triangle agree and the two edges of an induced P3 differ."""
    constraints = nx.Graph()
    for v in range(T.n):
        nbrs = members(T.adj[v])
        for e in nbrs:
            constraints.add_node((min(v, e), max(v, e)))
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                constraints.add_edge((min(v, x), max(v, x)), (min(v, y), max(v, y)),
                                     differ=not T.is_adjacent(x, y))
    colour: dict[tuple[int, int], int] = {}
    for root in sorted(constraints.nodes()):
        if root in colour:
            continue
        colour[root] = 0
        queue = [root]
        while queue:
            e = queue.pop()
            for f, data in constraints[e].items():
                wanted = colour[e] ^ int(data["differ"])
                if f not in colour:
                    colour[f] = wanted
                    queue.append(f)
                elif colour[f] != wanted:
                    return None
    return colour


def _classes(n: int, pairs: list[tuple[int, int]]) -> list[int]:
    """Class index per vertex for the equivalence generated by `pairs`."""
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(pairs)
    comps = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    index = [0] * n
    for i, comp in enumerate(comps):
        for v in comp:
            index[v] = i
    return index


def is_line_trigraph(T: Trigraph, cap: Optional[int] = LINE_CAP) -> Optional[LineRoot]:
    check_cap("line trigraph recognition (n)", T.n, cap)
    if _has_weak_triangle(T):
        return None
    colour = _two_colour_edges(T)
    if colour is None:
        return None
    p_class = _classes(T.n, [e for e, c in colour.items() if c == 0])
    q_class = _classes(T.n, [e for e, c in colour.items() if c == 1])
    root = nx.Graph()
    edge_of = []
    for v in range(T.n):
        edge = (("P", p_class[v]), ("Q", q_class[v]))
        root.add_edge(*edge, vertex=v)
        edge_of.append(edge)
    candidate = LineRoot(root, tuple(edge_of))
    if validate_line_root(T, candidate):
        return None
    return candidate


def validate_line_root(T: Trigraph, root: LineRoot) -> Optional[str]:
    if len(root.edge_of) != T.n or len(set(root.edge_of)) != T.n:
        return "root edges are not in bijection with the vertices"
    if not nx.is_bipartite(root.graph):
        return "root graph is not bipartite"
    for u in range(T.n):
        for v in range(u + 1, T.n):
            share = bool(set(root.edge_of[u]) & set(root.edge_of[v]))
            if share != T.is_adjacent(u, v):
                return f"pair {u},{v}: adjacency does not match the root"
    if _has_weak_triangle(T):
        return "a clique of size 3 is not strong"
    return None


# ---------------------------------------------------------------------------
# doubled trigraphs
# ---------------------------------------------------------------------------

def validate_good_partition(T: Trigraph, X: VertexSubset, Y: VertexSubset) -> Optional[str]:
    if X & Y or X | Y != T.vertex_mask:
        return "X, Y do not partition V(T)"
    for u, v in T.switchable_pairs():
        if (X >> u & 1) != (X >> v & 1):
            return f"switchable pair {u}{v} meets both X and Y"
    x_comps = components(T, X)
    if any(size(c) > 2 for c in x_comps):
        return "a component of T[X] has more than two vertices"
    y_comps = anticomponents(T, Y)
    if any(size(c) > 2 for c in y_comps):
        return "an anticomponent of T[Y] has more than two vertices"
    for cx in x_comps:
        for cy in y_comps:
            for v in members(cx | cy):
                other = cy if cx >> v & 1 else cx
                if size(T.strong[v] & other) > 1 or size(T.strong_anti[v] & other) > 1:
                    return f"vertex {v} has two strong edges or antiedges between {members(cx)} and {members(cy)}"
    return None


def find_good_partition(T: Trigraph, cap: Optional[int] = BASIC_CAP) -> Optional[tuple[VertexSubset, VertexSubset]]:
    """Exhaustive search; whole switchable components are placed at once."""
    check_cap("good partition search (n)", T.n, cap)
    blocks = [mask_of(c) for c in switchable_components(T)]
    for choice in range(1 << len(blocks)):
        X = 0
        for i, block in enumerate(blocks):
            if choice >> i & 1:
                X |= block
        Y = T.vertex_mask & ~X
        if validate_good_partition(T, X, Y) is None:
            return X, Y
    return None


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def validate_certificate(T: Trigraph, cert: BasicCertificate) -> Optional[str]:
    kind = cert.kind
    if kind in (BasicKind.BIPARTITE, BasicKind.CO_BIPARTITE):
        host = T if kind == BasicKind.BIPARTITE else complement(T)
        if cert.bipartition is None:
            return "missing bipartition"
        S1, S2 = cert.bipartition
        if S1 & S2 or S1 | S2 != T.vertex_mask:
            return "bipartition does not partition V(T)"
        if not (is_strong_stable_set(host, S1) and is_strong_stable_set(host, S2)):
            return "bipartition parts are not strong stable sets"
        return None
    if kind in (BasicKind.LINE, BasicKind.CO_LINE):
        if cert.root is None:
            return "missing root"
        return validate_line_root(T if kind == BasicKind.LINE else complement(T), cert.root)
    if kind == BasicKind.DOUBLED:
        if cert.good_partition is None:
            return "missing good partition"
        return validate_good_partition(T, *cert.good_partition)
    return None


def classify_polynomial(T: Trigraph) -> BasicCertificate:
    """The four classes with polynomial recognizers, in the fixed order."""
    parts = is_bipartite_trigraph(T)
    if parts is not None:
        return BasicCertificate(BasicKind.BIPARTITE, bipartition=parts)
    co = complement(T)
    parts = is_bipartite_trigraph(co)
    if parts is not None:
        return BasicCertificate(BasicKind.CO_BIPARTITE, bipartition=parts)
    root = is_line_trigraph(T)
    if root is not None:
        return BasicCertificate(BasicKind.LINE, root=root)
    root = is_line_trigraph(co)
    if root is not None:
        return BasicCertificate(BasicKind.CO_LINE, root=root)
    return BasicCertificate(BasicKind.NOT_BASIC)


def classify_basic(T: Trigraph, cap: Optional[int] = BASIC_CAP) -> BasicCertificate:
    """First class matching in the order bipartite, co-bipartite, line,
    co-line, doubled; NOT_BASIC otherwise."""
    cert = classify_polynomial(T)
    if not cert.is_basic:
        partition = find_good_partition(T, cap)
        if partition is not None:
            cert = BasicCertificate(BasicKind.DOUBLED, good_partition=partition)
    problem = validate_certificate(T, cert)
    if problem:
        raise InvariantBroken(f"{cert.kind.value} certificate failed re-validation: {problem}")
    logger.debug("classified %r as %s", T, cert.kind.value)
    return cert

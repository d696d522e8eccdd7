"""Seeded corpus generator: recipe terms to trigraphs with ground truth.

Algorithm ``trigraph-gen/1``. A single ``random.Random(seed)`` stream is
consumed depth-first, left operand before right, unless a leaf carries its
own integer seed. Leaves:

* a fixture name (``C6``, ``P4``, ``claw``, ...), optionally wrapped in ``leaf(...)``
* ``bipartite(n[, seed])``: connected random bipartite graph
* ``line(m[, seed])``: line graph of a connected random bipartite root with m edges
* ``doubled(x, y[, seed])``: doubled graph with x components and y anticomponents

Compositions:

* ``join2(even|odd, L, R)`` and ``cojoin2(even|odd, L, R)``: 2-join (or
  complement 2-join) of the two operands read as blocks. Each operand gives
  up its markers (an edge for odd, a path a-c-b for even; taken in the
  complement for ``cojoin2``); A and B are the marker neighbourhoods. Marker
  choices are retried until the result is in class F without a balanced
  skew-partition, as far as the exhaustive caps can tell.
  ``join2(odd, C6, C6)`` is C8, ``join2(even, C8, C8)`` is C10.
* ``kjoin(p<rows>, L, R)``: generalized k-join; R must be a leaf
"""

import logging
import random
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Union

import networkx as nx
import numpy as np

from core.basic import classify_basic, classify_polynomial
from core.config import BASIC_CAP, BERGE_CAP, BSP_CAP
from core.decomposition import (
    JoinKind,
    Parity,
    TwoJoinSplit,
    check_decomposition_preconditions,
    find_balanced_skew_partition,
    two_join_parity,
    validate_two_join,
)
from core.errors import BergeViolation, ClassViolation, FormatError, InvalidSplit, UnrealizableRecipe
from core.kjoin import CompositionTree, JoinSide, KJoinInterface, make_leaf, make_node
from core.trigraph import (
    STRONG_ANTIEDGE,
    STRONG_EDGE,
    Trigraph,
    VertexSubset,
    complement,
    full_mask,
    induced,
    is_in_class_F,
    mask_of,
    members,
    size,
)
from utils.fixtures import fixture, is_fixture_name
from utils.recipes import Term, parse_pattern, parse_recipe

logger = logging.getLogger(__name__)

GENERATOR_VERSION = "trigraph-gen/1"
JOIN_ATTEMPTS = 64
EDGE_DENSITY = 40  # percent, for extra bipartite edges


@dataclass
class GroundTruth:
    regions: list[VertexSubset] = field(default_factory=list)
    joins: list[dict] = field(default_factory=list)
    leaves: list[dict] = field(default_factory=list)
    checks: dict = field(default_factory=dict)


@dataclass
class GeneratedInstance:
    recipe: str
    seed: int
    trigraph: Trigraph
    truth: GroundTruth
    kjoin_tree: Optional[CompositionTree] = None
    k: Optional[int] = None
    version: str = GENERATOR_VERSION


# ---------------------------------------------------------------------------
# random leaves
# ---------------------------------------------------------------------------

def random_bipartite(n: int, rng: random.Random, density: int = EDGE_DENSITY) -> Trigraph:
    """Random spanning tree with alternating colours, plus extra cross edges."""
    if n < 2:
        raise UnrealizableRecipe(f"bipartite leaf needs at least 2 vertices, got {n}")
    colour = [0]
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        colour.append(1 - colour[u])
        edges.add((u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if colour[u] != colour[v] and (u, v) not in edges and rng.randrange(100) < density:
                edges.add((u, v))
    return Trigraph.from_edges(n, sorted(edges))


def random_line(m: int, rng: random.Random) -> Trigraph:
    """Line graph of a connected bipartite root with m edges."""
    if m < 2:
        raise UnrealizableRecipe(f"line leaf needs at least 2 root edges, got {m}")
    smallest = next(k for k in range(2, m + 2) if (k // 2) * ((k + 1) // 2) >= m)
    nodes = rng.randint(smallest, m + 1)
    root = nx.Graph()
    root.add_node(0)
    colour = {0: 0}
    for v in range(1, nodes):
        u = rng.randrange(v)
        colour[v] = 1 - colour[u]
        root.add_edge(u, v)
    candidates = [(u, v) for u in range(nodes) for v in range(u + 1, nodes)
                  if colour[u] != colour[v] and not root.has_edge(u, v)]
    rng.shuffle(candidates)
    missing = m - root.number_of_edges()
    if missing > len(candidates):
        root = nx.path_graph(m + 1)
    else:
        root.add_edges_from(candidates[:missing])
    return Trigraph.from_networkx(nx.line_graph(root))


def random_doubled(x: int, y: int, rng: random.Random) -> Trigraph:
    """x components of size 1 or 2 (X side), then y anticomponents of size
    1 or 2 (Y side); between a component and an anticomponent every vertex
    has at most one neighbour and at most one non-neighbour."""
    if x < 0 or y < 0 or x + y == 0:
        raise UnrealizableRecipe(f"doubled leaf needs some components, got {x} and {y}")
    groups_x, groups_y, n = [], [], 0
    for groups, count in ((groups_x, x), (groups_y, y)):
        for _ in range(count):
            width = rng.randint(1, 2)
            groups.append(list(range(n, n + width)))
            n += width
    edges = set()
    for g in groups_x:
        if len(g) == 2:
            edges.add(tuple(g))
    y_vertices = [v for g in groups_y for v in g]
    for i, u in enumerate(y_vertices):
        for v in y_vertices[i + 1:]:
            if not any(u in g and v in g for g in groups_y):
                edges.add((u, v))
    for gx in groups_x:
        for gy in groups_y:
            if len(gx) == 2 and len(gy) == 2:
                (p, q), (r, s) = gx, gy
                edges.update([(p, r), (q, s)] if rng.random() < 0.5 else [(p, s), (q, r)])
            elif len(gx) == 1 and len(gy) == 1:
                if rng.random() < 0.5:
                    edges.add((gx[0], gy[0]))
            else:
                (single,), pair = (gx, gy) if len(gx) == 1 else (gy, gx)
                edges.add(tuple(sorted((single, rng.choice(pair)))))
    return Trigraph.from_edges(n, sorted(edges))


# ---------------------------------------------------------------------------
# 2-join composition
# ---------------------------------------------------------------------------

def compose_two_join(T1: Trigraph, a1: VertexSubset, b1: VertexSubset,
                     T2: Trigraph, a2: VertexSubset, b2: VertexSubset,
                     kind: JoinKind = JoinKind.DIRECT) -> tuple[Trigraph, TwoJoinSplit]:
    """X1 = T1 on 0..n1-1, X2 = T2 after it; A1-A2 and B1-B2 become strongly
    complete in the host (T, or its complement for a complement 2-join)."""
    h1, h2 = (T1, T2) if kind == JoinKind.DIRECT else (complement(T1), complement(T2))
    n1, n = T1.n, T1.n + T2.n
    matrix = np.full((n, n), STRONG_ANTIEDGE, dtype=np.int8)
    matrix[:n1, :n1] = h1.theta
    matrix[n1:, n1:] = h2.theta
    for s1, s2 in ((a1, a2), (b1, b2)):
        for u in members(s1):
            for v in members(s2):
                matrix[u, n1 + v] = matrix[n1 + v, u] = STRONG_EDGE
    host = Trigraph(matrix)
    T = host if kind == JoinKind.DIRECT else complement(host)
    x1 = full_mask(n1)
    a2, b2 = a2 << n1, b2 << n1
    split = TwoJoinSplit(a1, b1, x1 & ~(a1 | b1), a2, b2, full_mask(n) & ~x1 & ~(a2 | b2), kind)
    return T, split


def marker_choices(host: Trigraph, parity: Parity) -> list[tuple[VertexSubset, VertexSubset, VertexSubset]]:
    """Ways of reading the host as a 2-join block: (markers, A, B).

    Odd blocks carry a marker edge a-b, even blocks a marker path a-c-b
    whose middle has no other neighbour. A and B are the neighbours of a
    and b off the markers; they must be non-empty and disjoint, the side
    left over needs at least four vertices, and no switchable pair may
    touch a marker.
    """
    ends: list[tuple[int, int, VertexSubset]] = []
    if parity == Parity.ODD:
        ends = [(a, b, (1 << a) | (1 << b)) for a in range(host.n) for b in members(host.strong[a])]
    else:
        for c in range(host.n):
            if host.switch[c] or size(host.strong[c]) != 2:
                continue
            a, b = members(host.strong[c])
            if host.strong_anti[a] >> b & 1:
                markers = (1 << a) | (1 << b) | (1 << c)
                ends += [(a, b, markers), (b, a, markers)]
    choices = []
    for a, b, markers in ends:
        rest = host.vertex_mask & ~markers
        if size(rest) < 4 or any(host.switch[m] for m in members(markers)):
            continue
        A, B = host.strong[a] & rest, host.strong[b] & rest
        if A and B and not A & B:
            choices.append((markers, A, B))
    return choices


def relabel(mask: VertexSubset, kept: tuple[int, ...]) -> VertexSubset:
    """Old-vertex mask in the numbering of induced(T, X)."""
    return mask_of(i for i, v in enumerate(kept) if mask >> v & 1)


def precondition_failure(T: Trigraph) -> Optional[str]:
    """Why the decomposition precheck would refuse T, within the caps."""
    if T.n <= BERGE_CAP:
        try:
            check_decomposition_preconditions(T)
        except ClassViolation as error:
            return str(error)
    elif T.n <= BSP_CAP and find_balanced_skew_partition(T) is not None:
        return "trigraph has a balanced skew-partition"
    return None


# ---------------------------------------------------------------------------
# k-join operands
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _MarkerRequest:
    """An operand must expose `parts` parts and `markers` markers; marker i
    is strongly complete to part p iff wants(p, i)."""

    parts: int
    markers: int
    wants: Callable[[int, int], bool]


@dataclass(frozen=True)
class _Operand:
    tree: CompositionTree
    parts: tuple[VertexSubset, ...]
    markers: tuple[int, ...]


# ---------------------------------------------------------------------------
# builder
# ---------------------------------------------------------------------------

class _Builder:
    def __init__(self, rng: random.Random, k: int):
        self.rng = rng
        self.k = k
        self.truth = GroundTruth()

    # -- leaves --------------------------------------------------------------

    def _stream(self, term: Term, index: int) -> random.Random:
        if index >= len(term.args):
            return self.rng
        arg = term.args[index]
        if isinstance(arg, int):
            return random.Random(arg)
        if isinstance(arg, Term) and arg.name == "seed" and not arg.args:
            return self.rng
        raise FormatError(f"seed argument of {term.name} must be an integer or 'seed', got {arg}")

    def graph(self, term: Term) -> Trigraph:
        if term.name == "leaf":
            term.expect_arity(1)
            return self.graph(term.arg_term(0))
        if term.name == "bipartite":
            term.expect_arity(1, 2)
            T = random_bipartite(term.arg_int(0), self._stream(term, 1))
        elif term.name == "line":
            term.expect_arity(1, 2)
            T = random_line(term.arg_int(0), self._stream(term, 1))
        elif term.name == "doubled":
            term.expect_arity(2, 3)
            T = random_doubled(term.arg_int(0), term.arg_int(1), self._stream(term, 2))
        elif is_fixture_name(term.name) and not term.args:
            T = fixture(term.name)
        else:
            raise FormatError(f"unknown recipe leaf {term}")
        cert = classify_basic(T) if T.n <= BASIC_CAP else classify_polynomial(T)
        self.truth.leaves.append({"term": str(term), "n": T.n, "basic": cert.kind.value})
        return T

    # -- 2-joins -------------------------------------------------------------

    def trigraph(self, term: Term) -> tuple[Trigraph, list[VertexSubset]]:
        if term.name in ("join2", "cojoin2"):
            return self.two_join(term)
        if term.name == "kjoin":
            raise FormatError("kjoin terms cannot be operands of a 2-join")
        return self.graph(term), []

    def two_join(self, term: Term) -> tuple[Trigraph, list[VertexSubset]]:
        term.expect_arity(3)
        try:
            parity = Parity(term.arg_name(0))
        except ValueError:
            raise FormatError(f"parity of {term.name} must be even or odd, got {term.args[0]}")
        kind = JoinKind.DIRECT if term.name == "join2" else JoinKind.COMPLEMENT
        T1, regions1 = self.trigraph(term.arg_term(1))
        T2, regions2 = self.trigraph(term.arg_term(2))
        hosts = (T1, T2) if kind == JoinKind.DIRECT else (complement(T1), complement(T2))
        choices1, choices2 = (marker_choices(h, parity) for h in hosts)
        if not choices1 or not choices2:
            raise UnrealizableRecipe(f"{term}: an operand has no {parity.value} marker "
                                     "with disjoint attachments")
        candidates = [(c1, c2) for c1 in choices1 for c2 in choices2]
        self.rng.shuffle(candidates)
        for attempt, ((m1, a1, b1), (m2, a2, b2)) in enumerate(candidates[:JOIN_ATTEMPTS]):
            X1, kept1 = induced(T1, T1.vertex_mask & ~m1)
            X2, kept2 = induced(T2, T2.vertex_mask & ~m2)
            T, split = compose_two_join(X1, relabel(a1, kept1), relabel(b1, kept1),
                                        X2, relabel(a2, kept2), relabel(b2, kept2), kind)
            if validate_two_join(T, split):
                continue
            try:
                found = two_join_parity(T, split, full_check=True)
            except (BergeViolation, InvalidSplit):
                continue
            if found != parity:
                continue
            failure = precondition_failure(T)
            if failure is not None:
                logger.debug("%s attempt %d refused: %s", term.name, attempt, failure)
                continue
            split = replace(split, parity=found)
            logger.debug("%s composed on attempt %d: n=%d", term.name, attempt, T.n)
            self.truth.joins.append({"kind": kind.value, "parity": parity.value, "n": T.n,
                                     "split": split.describe()})
            inner = [relabel(r, kept1) for r in regions1] + [relabel(r, kept2) << X1.n for r in regions2]
            return T, [r for r in inner if r] + [split.x1]
        raise UnrealizableRecipe(f"{term}: no marker choice gives a {parity.value} 2-join in class F "
                                 f"without a balanced skew-partition after "
                                 f"{min(len(candidates), JOIN_ATTEMPTS)} attempts")

    # -- k-joins -------------------------------------------------------------

    def _chunks(self, vertices) -> list[list[int]]:
        order = list(vertices)
        self.rng.shuffle(order)
        chunks = []
        while order:
            width = self.rng.randint(1, self.k)
            chunks.append(order[:width])
            order = order[width:]
        return chunks

    def _spread(self, vertices, count: int, first: Optional[list[int]] = None) -> dict[int, int]:
        """Part index per vertex; parts in `first` (default all) each get a vertex."""
        first = list(range(count)) if first is None else first
        order = list(vertices)
        if len(order) < len(first):
            raise UnrealizableRecipe(f"{len(order)} vertices cannot fill {len(first)} parts")
        self.rng.shuffle(order)
        part_of = {v: p for v, p in zip(order, first)}
        for v in order[len(first):]:
            part_of[v] = self.rng.randrange(count)
        return part_of

    def _leaf_graph(self, term: Term) -> Trigraph:
        G = self.graph(term)
        if G.has_switchable_pairs():
            raise UnrealizableRecipe(f"k-join leaf {term} must be a graph")
        return G

    def closure(self, term: Term, request: Optional[_MarkerRequest] = None) -> _Operand:
        if term.name == "kjoin":
            return self.k_join(term, request)
        G = self._leaf_graph(term)
        if request is None:
            return _Operand(make_leaf(G, self._chunks(range(G.n)), self.k), (), ())
        part_of = self._spread(range(G.n), request.parts)
        markers = tuple(range(G.n, G.n + request.markers))
        matrix = np.full((G.n + request.markers,) * 2, STRONG_ANTIEDGE, dtype=np.int8)
        matrix[:G.n, :G.n] = G.theta
        for i, m in enumerate(markers):
            for v in range(G.n):
                if request.wants(part_of[v], i):
                    matrix[v, m] = matrix[m, v] = STRONG_EDGE
        lift = self._chunks(range(G.n)) + [list(markers)]
        parts = tuple(mask_of(v for v in range(G.n) if part_of[v] == p) for p in range(request.parts))
        return _Operand(make_leaf(Trigraph(matrix), lift, self.k), parts, markers)

    def k_join(self, term: Term, request: Optional[_MarkerRequest]) -> _Operand:
        term.expect_arity(3)
        iface = KJoinInterface(parse_pattern(term.arg_name(0)))
        iface.check_k(self.k)
        right_term = term.arg_term(2)
        if right_term.name == "kjoin":
            raise UnrealizableRecipe(f"{term}: the right operand of a k-join must be a leaf")
        outer = request if request is not None and request.markers else None

        # markers asked of this node go to the right leaf as one extra B-part,
        # constant towards every A-part of the left operand
        left_rows, value = None, None
        if outer is not None:
            zero = [p for p in range(outer.parts) if not any(outer.wants(p, i) for i in range(outer.markers))]
            one = [p for p in range(outer.parts) if all(outer.wants(p, i) for i in range(outer.markers))]
            if not zero and not one:
                raise UnrealizableRecipe(f"{term}: some outer part must be complete or anticomplete "
                                         "to every marker")
            left_rows, value = (zero, 0) if zero else (one, 1)
            iface = KJoinInterface(tuple(row + (value,) for row in iface.pattern))
            iface.check_k(self.k)
        r, s = iface.r, iface.s
        base_s = s - 1 if outer is not None else s

        left = self.closure(term.arg_term(1), _MarkerRequest(r, s, iface.complete))
        G = self._leaf_graph(right_term)
        inner_part = self._spread(range(G.n), base_s)
        q = outer.markers if outer is not None else 0
        a_markers = list(range(G.n, G.n + r))
        b_markers = list(range(G.n + r, G.n + r + q))
        total = G.n + r + q
        matrix = np.full((total, total), STRONG_ANTIEDGE, dtype=np.int8)
        matrix[:G.n, :G.n] = G.theta
        for j, a in enumerate(a_markers):
            for v in range(G.n):
                if iface.complete(j, inner_part[v]):
                    matrix[a, v] = matrix[v, a] = STRONG_EDGE
            for b in b_markers:
                if value == 1:
                    matrix[a, b] = matrix[b, a] = STRONG_EDGE

        outer_part: dict[int, int] = {}
        if outer is not None:
            left_vertices = [v for p in left.parts for v in members(p)]
            left_part = {v: self.rng.choice(left_rows) for v in left_vertices}
            missing = [p for p in range(outer.parts) if p not in set(left_part.values())]
            outer_part = self._spread(range(G.n), outer.parts, missing)
            for i, b in enumerate(b_markers):
                for v in range(G.n):
                    if outer.wants(outer_part[v], i):
                        matrix[b, v] = matrix[v, b] = STRONG_EDGE

        lift = self._chunks(range(G.n)) + [a_markers] + ([b_markers] if b_markers else [])
        right = make_leaf(Trigraph(matrix), lift, self.k)
        b_parts = tuple(mask_of(v for v in range(G.n) if inner_part[v] == i) for i in range(base_s))
        if b_markers:
            b_parts += (mask_of(b_markers),)
        node = make_node(left.tree, JoinSide(left.parts, left.markers), right,
                         JoinSide(b_parts, tuple(a_markers)), iface)
        self.truth.joins.append({"kind": "k-join", "pattern": iface.describe(), "n": node.trigraph.n})
        if outer is None:
            return _Operand(node, (), ())

        first, second = node.layout.position(1), node.layout.position(2)
        parts = []
        for p in range(outer.parts):
            U = mask_of(first[v] for v, part in left_part.items() if part == p)
            U |= mask_of(second[v] for v in range(G.n) if outer_part[v] == p)
            parts.append(U)
        return _Operand(node, tuple(parts), tuple(second[b] for b in b_markers))


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def _checks(T: Trigraph) -> dict:
    checks: dict = {"class_F": None, "balanced_skew_partition": None}
    if T.n <= BERGE_CAP:
        checks["class_F"] = is_in_class_F(T)[0]
    if T.n <= BSP_CAP:
        checks["balanced_skew_partition"] = find_balanced_skew_partition(T) is not None
    return checks


def generate(recipe: Union[str, Term], seed: int, k: int = 2, closure: Optional[bool] = None,
             run_checks: bool = True) -> GeneratedInstance:
    """Build the trigraph of a recipe with ground truth.

    2-join recipes record the X1 side of every join as a region hint;
    k-join recipes (``closure``) also return the composition tree.
    """
    term = parse_recipe(recipe) if isinstance(recipe, str) else recipe
    if closure is None:
        closure = term.name == "kjoin"
    builder = _Builder(random.Random(seed), k)
    tree = None
    if closure:
        tree = builder.closure(term).tree
        T = tree.trigraph
    else:
        T, regions = builder.trigraph(term)
        builder.truth.regions = regions
    if run_checks:
        builder.truth.checks = _checks(T)
    logger.info("generated %s with seed %d: n=%d", term, seed, T.n)
    return GeneratedInstance(str(term), seed, T, builder.truth, tree, k if closure else None)

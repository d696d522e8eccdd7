"""Generalized k-joins: lifting graphs into the switchable-part class,
composition, product separators, recombination and the closure driver."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .config import CLIQUE_CAP, P0
from .errors import OracleContractViolation, PreconditionViolation
from .separation import CSSeparator, Cut, all_cuts, cut_from_clique_side, make_separator, verify_cs_separator
from .trigraph import (
    STRONG_ANTIEDGE,
    STRONG_EDGE,
    SWITCHABLE,
    Trigraph,
    VertexSubset,
    full_mask,
    mask_of,
    members,
    size,
)

logger = logging.getLogger(__name__)

Parts = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class KJoinInterface:
    """pattern[j][i] == 1 iff A_j is strongly complete to B_i."""

    pattern: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.pattern or not self.pattern[0]:
            raise PreconditionViolation("k-join pattern must be a non-empty matrix")
        width = len(self.pattern[0])
        for row in self.pattern:
            if len(row) != width or any(x not in (0, 1) for x in row):
                raise PreconditionViolation(f"k-join pattern rows must be 0/1 of length {width}")

    @property
    def r(self) -> int:
        return len(self.pattern)

    @property
    def s(self) -> int:
        return len(self.pattern[0])

    def complete(self, j: int, i: int) -> bool:
        return bool(self.pattern[j][i])

    def check_k(self, k: int) -> None:
        if not (1 <= self.r <= k and 1 <= self.s <= k):
            raise PreconditionViolation(f"interface is {self.r}x{self.s}, larger than k={k}")

    def describe(self) -> str:
        return "[" + ";".join("".join(str(x) for x in row) for row in self.pattern) + "]"


@dataclass(frozen=True)
class JoinSide:
    """One operand of a k-join: its non-empty parts (A_1..A_r of T1, or
    B_1..B_s of T2) and its marker vertices (b_1..b_s, or a_1..a_r)."""

    parts: tuple[VertexSubset, ...]
    markers: tuple[int, ...]


@dataclass(frozen=True)
class JoinLayout:
    """origin[v] = (operand, vertex) for every vertex v of the join."""

    origin: tuple[tuple[int, int], ...]
    a_parts: tuple[VertexSubset, ...]
    b_parts: tuple[VertexSubset, ...]

    def position(self, operand: int) -> dict[int, int]:
        return {old: new for new, (side, old) in enumerate(self.origin) if side == operand}

    @property
    def a_union(self) -> VertexSubset:
        out = 0
        for part in self.a_parts:
            out |= part
        return out

    @property
    def b_union(self) -> VertexSubset:
        out = 0
        for part in self.b_parts:
            out |= part
        return out


# ---------------------------------------------------------------------------
# lifting
# ---------------------------------------------------------------------------

def validate_parts(n: int, parts: Sequence[Sequence[int]], k: Optional[int] = None) -> None:
    seen = 0
    for part in parts:
        if not part:
            raise PreconditionViolation("parts must be non-empty")
        if k is not None and len(part) > k:
            raise PreconditionViolation(f"part {tuple(part)} has {len(part)} vertices, more than k={k}")
        m = mask_of(part)
        if seen & m or size(m) != len(part):
            raise PreconditionViolation(f"part {tuple(part)} overlaps another part")
        seen |= m
    if seen != full_mask(n):
        raise PreconditionViolation("parts do not cover every vertex")


def lift_to_ck(G: Trigraph, parts: Sequence[Sequence[int]], k: int) -> Trigraph:
    """Make every pair inside a part switchable."""
    if G.has_switchable_pairs():
        raise PreconditionViolation("the graph to lift must not have switchable pairs")
    validate_parts(G.n, parts, k)
    matrix = G.theta.copy()
    for part in parts:
        for u in part:
            for v in part:
                if u != v:
                    matrix[u, v] = SWITCHABLE
    return Trigraph(matrix)


def part_violation(T: Trigraph, parts: Sequence[Sequence[int]]) -> Optional[str]:
    """The switchable pairs of T must be exactly the pairs inside parts."""
    part_of = {}
    for i, part in enumerate(parts):
        for v in part:
            part_of[v] = i
    for u in range(T.n):
        for v in range(u + 1, T.n):
            inside = part_of.get(u) == part_of.get(v)
            if inside != (T.value(u, v) == SWITCHABLE):
                return f"pair {u},{v} is {'not ' if inside else ''}switchable"
    return None


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def _side_violation(T: Trigraph, side: JoinSide, iface: KJoinInterface, first: bool) -> Optional[str]:
    parts_needed, markers_needed = (iface.r, iface.s) if first else (iface.s, iface.r)
    name = "T1" if first else "T2"
    if len(side.parts) != parts_needed or len(side.markers) != markers_needed:
        return f"{name} has {len(side.parts)} parts and {len(side.markers)} markers, interface needs " \
               f"{parts_needed} and {markers_needed}"
    covered = mask_of(side.markers)
    if size(covered) != len(side.markers):
        return f"{name} markers repeat"
    for part in side.parts:
        if not part:
            return f"{name} has an empty part"
        if covered & part:
            return f"{name} parts overlap"
        covered |= part
    if covered != T.vertex_mask:
        return f"{name} parts and markers do not cover its vertices"
    for x, u in enumerate(side.markers):
        for v in side.markers[x + 1:]:
            if T.value(u, v) != SWITCHABLE:
                return f"{name} markers {u},{v} are not a switchable pair"
    for p, part in enumerate(side.parts):
        for m, marker in enumerate(side.markers):
            complete = iface.complete(p, m) if first else iface.complete(m, p)
            if complete and T.strong[marker] & part != part:
                return f"{name} marker {marker} is not strongly complete to part {p}"
            if not complete and T.strong_anti[marker] & part != part:
                return f"{name} marker {marker} is not strongly anticomplete to part {p}"
    return None


def generalized_k_join(T1: Trigraph, side1: JoinSide, T2: Trigraph, side2: JoinSide,
                       iface: KJoinInterface) -> tuple[Trigraph, JoinLayout]:
    """Glue the A-parts of T1 to the B-parts of T2 through `iface`.

    The join lists the non-marker vertices of T1 in index order, then
    those of T2.
    """
    for T, side, first in ((T1, side1, True), (T2, side2, False)):
        problem = _side_violation(T, side, iface, first)
        if problem:
            raise PreconditionViolation(f"generalized k-join: {problem}")
    left = [v for v in range(T1.n) if not mask_of(side1.markers) >> v & 1]
    right = [v for v in range(T2.n) if not mask_of(side2.markers) >> v & 1]
    n1 = len(left)
    n = n1 + len(right)
    matrix = np.full((n, n), STRONG_ANTIEDGE, dtype=np.int8)
    li = np.array(left, dtype=np.intp)
    ri = np.array(right, dtype=np.intp)
    matrix[:n1, :n1] = T1.theta[np.ix_(li, li)]
    matrix[n1:, n1:] = T2.theta[np.ix_(ri, ri)]
    pos1 = {v: i for i, v in enumerate(left)}
    pos2 = {v: n1 + i for i, v in enumerate(right)}
    a_parts = tuple(mask_of(pos1[v] for v in members(part)) for part in side1.parts)
    b_parts = tuple(mask_of(pos2[v] for v in members(part)) for part in side2.parts)
    for j, a_part in enumerate(a_parts):
        for i, b_part in enumerate(b_parts):
            if iface.complete(j, i):
                for u in members(a_part):
                    for v in members(b_part):
                        matrix[u, v] = matrix[v, u] = STRONG_EDGE
    origin = tuple((1, v) for v in left) + tuple((2, v) for v in right)
    return Trigraph(matrix), JoinLayout(origin, a_parts, b_parts)


# ---------------------------------------------------------------------------
# separators
# ---------------------------------------------------------------------------

def _combine(left: list[Cut], right: list[Cut], n: int, intersect: bool) -> list[Cut]:
    out = dict()
    for c in left:
        for d in right:
            if intersect:
                U = c.clique_side & d.clique_side
            else:
                U = c.clique_side | d.clique_side
            out.setdefault(cut_from_clique_side(n, U), None)
    return list(out)


def product_separator(F: CSSeparator, k: int) -> CSSeparator:
    """Intersections of k cuts' clique sides (unions of stable sides),
    then unions of k of those: every union of at most k cliques is
    separated from every union of at most k stable sets."""
    if k < 1:
        raise PreconditionViolation(f"k must be positive, got {k}")
    base = list(dict.fromkeys(F.cuts))
    stage = base
    for _ in range(k - 1):
        stage = _combine(stage, base, F.n, intersect=True)
    first = stage
    for _ in range(k - 1):
        stage = _combine(stage, first, F.n, intersect=False)
    logger.debug("product separator: %d cuts -> %d (k=%d)", len(F), len(stage), k)
    return CSSeparator(F.n, tuple(stage), None)


def ck_separator(T: Trigraph, parts: Sequence[Sequence[int]], F: CSSeparator, k: int) -> CSSeparator:
    """Separator of a lifted trigraph from a separator of its realization."""
    if F.n != T.n:
        raise PreconditionViolation(f"separator is over {F.n} vertices, trigraph has {T.n}")
    problem = part_violation(T, parts)
    if problem:
        raise PreconditionViolation(f"trigraph is not the lift of its parts: {problem}")
    if k == 1:
        return make_separator(T, F.cuts)
    return make_separator(T, product_separator(F, k).cuts)


def recombine_k_join(T: Trigraph, layout: JoinLayout, side1: JoinSide, side2: JoinSide,
                     F1: CSSeparator, F2: CSSeparator) -> CSSeparator:
    """|F1| + |F2| cuts; B_i follows b_i, A_j follows a_j."""
    cuts = []
    for operand, side, F, groups in ((1, side1, F1, layout.b_parts), (2, side2, F2, layout.a_parts)):
        position = layout.position(operand)
        if F.n != len(position) + len(side.markers):
            raise PreconditionViolation(f"separator of operand {operand} has {F.n} vertices")
        for cut in F:
            U = 0
            for v in members(cut.clique_side):
                if v in position:
                    U |= 1 << position[v]
            for marker, group in zip(side.markers, groups):
                if cut.clique_side >> marker & 1:
                    U |= group
            cuts.append(cut_from_clique_side(T.n, U))
    return make_separator(T, cuts)


# ---------------------------------------------------------------------------
# composition trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class KLeaf:
    trigraph: Trigraph
    parts: Parts
    realization: Trigraph


@dataclass(frozen=True, eq=False)
class KNode:
    trigraph: Trigraph
    layout: JoinLayout
    iface: KJoinInterface
    left: "CompositionTree"
    right: "CompositionTree"
    left_side: JoinSide
    right_side: JoinSide


CompositionTree = Union[KLeaf, KNode]
SeparatorOracle = Callable[[Trigraph], CSSeparator]


def make_leaf(G: Trigraph, parts: Sequence[Sequence[int]], k: int) -> KLeaf:
    normalized = tuple(tuple(sorted(p)) for p in parts)
    return KLeaf(lift_to_ck(G, normalized, k), normalized, G)


def make_node(left: CompositionTree, left_side: JoinSide, right: CompositionTree,
              right_side: JoinSide, iface: KJoinInterface) -> KNode:
    T, layout = generalized_k_join(left.trigraph, left_side, right.trigraph, right_side, iface)
    return KNode(T, layout, iface, left, right, left_side, right_side)


def tree_leaves(tree: CompositionTree) -> list[KLeaf]:
    if isinstance(tree, KLeaf):
        return [tree]
    return tree_leaves(tree.left) + tree_leaves(tree.right)


def _oracle_separator(oracle: SeparatorOracle, G: Trigraph, verify_oracle: bool) -> CSSeparator:
    F = oracle(G)
    if F.n != G.n:
        raise OracleContractViolation(f"oracle returned a separator over {F.n} vertices for n={G.n}")
    if verify_oracle and G.n <= CLIQUE_CAP:
        ok, counterexample = verify_cs_separator(G, F)
        if not ok:
            raise OracleContractViolation("oracle separator fails", counterexample=counterexample)
    return F


def build_closure_separator(tree: CompositionTree, oracle: SeparatorOracle, k: int,
                            p0: int = P0, verify_oracle: bool = True) -> CSSeparator:
    """Leaves: every cut when n <= p0, otherwise the product separator of
    the oracle's separator; nodes: recombination."""
    if isinstance(tree, KLeaf):
        T = tree.trigraph
        if T.n <= p0:
            return all_cuts(T)
        F = _oracle_separator(oracle, tree.realization, verify_oracle)
        return ck_separator(T, tree.parts, F, k)
    tree.iface.check_k(k)
    F1 = build_closure_separator(tree.left, oracle, k, p0, verify_oracle)
    F2 = build_closure_separator(tree.right, oracle, k, p0, verify_oracle)
    return recombine_k_join(tree.trigraph, tree.layout, tree.left_side, tree.right_side, F1, F2)

"""2-joins, complement 2-joins, balanced skew-partitions, blocks of
decomposition and the recursive decomposition driver."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .basic import BasicCertificate, classify_basic, classify_polynomial
from .config import BASE_THRESHOLD, BASIC_CAP, BSP_CAP, PARITY_FULL_CHECK, SEH_BASE_THRESHOLD, TWO_JOIN_CAP
from .errors import (
    BergeViolation,
    CapExceeded,
    ClassViolation,
    ContradictionWitness,
    InvalidSplit,
    check_cap,
)
from .trigraph import (
    STRONG_ANTIEDGE,
    STRONG_EDGE,
    SWITCHABLE,
    Trigraph,
    VertexSubset,
    complement,
    components,
    is_anticonnected,
    is_connected,
    is_in_class_F,
    mask_of,
    members,
    size,
    switchable_components,
)

logger = logging.getLogger(__name__)


class JoinKind(str, Enum):
    DIRECT = "direct"
    COMPLEMENT = "complement"


class Parity(str, Enum):
    ODD = "odd"
    EVEN = "even"


@dataclass(frozen=True)
class TwoJoinSplit:
    a1: VertexSubset
    b1: VertexSubset
    c1: VertexSubset
    a2: VertexSubset
    b2: VertexSubset
    c2: VertexSubset
    kind: JoinKind = JoinKind.DIRECT
    parity: Optional[Parity] = None

    @property
    def x1(self) -> VertexSubset:
        return self.a1 | self.b1 | self.c1

    @property
    def x2(self) -> VertexSubset:
        return self.a2 | self.b2 | self.c2

    def side(self, i: int) -> tuple[VertexSubset, VertexSubset, VertexSubset]:
        return (self.a1, self.b1, self.c1) if i == 1 else (self.a2, self.b2, self.c2)

    def swapped(self) -> "TwoJoinSplit":
        return replace(self, a1=self.a2, b1=self.b2, c1=self.c2, a2=self.a1, b2=self.b1, c2=self.c1)

    def describe(self) -> str:
        sets = ", ".join(f"{name}={list(members(getattr(self, name)))}"
                         for name in ("a1", "b1", "c1", "a2", "b2", "c2"))
        parity = self.parity.value if self.parity else "?"
        return f"{self.kind.value} {parity} 2-join: {sets}"


def _host(T: Trigraph, kind: JoinKind) -> Trigraph:
    return T if kind == JoinKind.DIRECT else complement(T)


# ---------------------------------------------------------------------------
# 2-join validation and search
# ---------------------------------------------------------------------------

def _direct_violations(T: Trigraph, split: TwoJoinSplit) -> list[str]:
    errors = []
    sets = [split.a1, split.b1, split.c1, split.a2, split.b2, split.c2]
    union = 0
    for s in sets:
        if union & s:
            errors.append("the six sets are not disjoint")
        union |= s
    if union != T.vertex_mask:
        errors.append("the six sets do not cover V(T)")
    if errors:
        return errors
    for name in ("a1", "b1", "a2", "b2"):
        if not getattr(split, name):
            errors.append(f"{name.upper()} is empty")
    x1, x2 = split.x1, split.x2
    for i, x in ((1, x1), (2, x2)):
        if size(x) < 3:
            errors.append(f"|X{i}| < 3")
    for v in members(x1):
        if T.switch[v] & x2:
            errors.append(f"switchable pair from {v} crosses X1/X2")
            break
    for v in members(x1):
        expected = split.a2 if split.a1 >> v & 1 else split.b2 if split.b1 >> v & 1 else 0
        if T.strong[v] & x2 != expected:
            errors.append(f"strong edges from {v} to X2 do not follow the A/B pattern")
            break
    for v in members(x2):
        expected = split.a1 if split.a2 >> v & 1 else split.b1 if split.b2 >> v & 1 else 0
        if T.strong[v] & x1 != expected:
            errors.append(f"strong edges from {v} to X1 do not follow the A/B pattern")
            break
    for i in (1, 2):
        a, b, c = split.side(i)
        if size(a) == 1 and size(b) == 1 and size(c) == 1:
            (va,), (vb,), (vc,) = members(a), members(b), members(c)
            if T.is_adjacent(va, vc) and T.is_adjacent(vc, vb) and not T.is_adjacent(va, vb):
                errors.append(f"T[X{i}] is a path of length two joining A{i} and B{i}")
        for comp in components(T, a | b | c):
            if not (comp & a and comp & b):
                errors.append(f"component {list(members(comp))} of T[X{i}] misses A{i} or B{i}")
                break
    return errors


def validate_two_join(T: Trigraph, split: TwoJoinSplit) -> list[str]:
    """Violated conditions (empty list when the split is a valid 2-join)."""
    return _direct_violations(_host(T, split.kind), split)


def _split_from_side(T: Trigraph, X1: VertexSubset) -> Optional[TwoJoinSplit]:
    """The only possible direct split with first side X1, if any.

    Strong neighbourhoods in X2 of the X1 vertices must take exactly two
    disjoint non-empty values: they are A2 and B2, and their preimages
    are A1 and B1.
    """
    X2 = T.vertex_mask & ~X1
    groups: dict[int, int] = {}
    for v in members(X1):
        if T.switch[v] & X2:
            return None
        nbrs = T.strong[v] & X2
        if nbrs:
            groups[nbrs] = groups.get(nbrs, 0) | (1 << v)
            if len(groups) > 2:
                return None
    if len(groups) != 2:
        return None
    (n_first, first), (n_second, second) = sorted(groups.items(), key=lambda item: item[1] & -item[1])
    if n_first & n_second:
        return None
    split = TwoJoinSplit(first, second, X1 & ~(first | second),
                         n_first, n_second, X2 & ~(n_first | n_second))
    return split if not _direct_violations(T, split) else None


def find_two_join(T: Trigraph, cap: Optional[int] = TWO_JOIN_CAP,
                  kind: JoinKind = JoinKind.DIRECT) -> Optional[TwoJoinSplit]:
    """First valid 2-join in lexicographic order of the side containing
    vertex 0; switchable components are never split."""
    check_cap("2-join search (n)", T.n, cap)
    if T.n < 6:
        return None
    blocks = [mask_of(c) for c in switchable_components(T)]
    anchor, rest = blocks[0], blocks[1:]
    for choice in range(1 << len(rest)):
        X1 = anchor
        for i, block in enumerate(rest):
            if choice >> i & 1:
                X1 |= block
        if not 3 <= size(X1) <= T.n - 3:
            continue
        split = _split_from_side(T, X1)
        if split is not None:
            # T is already the host here
            return replace(split, kind=kind, parity=_parity_on_host(T, split))
    return None


def find_complement_two_join(T: Trigraph, cap: Optional[int] = TWO_JOIN_CAP) -> Optional[TwoJoinSplit]:
    """A 2-join of complement(T), reported with kind COMPLEMENT on T."""
    return find_two_join(complement(T), cap, kind=JoinKind.COMPLEMENT)


def find_any_two_join(T: Trigraph, cap: Optional[int] = TWO_JOIN_CAP) -> Optional[TwoJoinSplit]:
    return find_two_join(T, cap) or find_complement_two_join(T, cap)


# ---------------------------------------------------------------------------
# parity
# ---------------------------------------------------------------------------

def _shortest_crossing(host: Trigraph, a: VertexSubset, b: VertexSubset, c: VertexSubset) -> Optional[int]:
    # BFS from A through C; a shortest such path is induced
    frontier, seen, length = a, a, 0
    while frontier:
        reach = 0
        for v in members(frontier):
            reach |= host.adj[v]
        if reach & b:
            return length + 1
        frontier = reach & c & ~seen
        seen |= frontier
        length += 1
    return None


def _path_parities(adj: list[int], anti: list[int], starts: VertexSubset,
                   interior: VertexSubset, ends: VertexSubset) -> set[int]:
    """Parities of all induced paths start -> interior* -> end."""
    found: set[int] = set()

    def walk(path: list[int], in_path: int, ok: int) -> None:
        last = path[-1]
        if adj[last] & ok & ends & ~in_path:
            found.add(len(path) % 2)
        for u in members(adj[last] & ok & interior & ~in_path):
            walk(path + [u], in_path | (1 << u), ok & anti[last])

    for s in members(starts):
        walk([s], 1 << s, -1)
    return found


def _parity_on_host(T: Trigraph, split: TwoJoinSplit, full_check: bool = PARITY_FULL_CHECK) -> Parity:
    host = _host(T, split.kind)
    lengths = []
    for i in (1, 2):
        a, b, c = split.side(i)
        length = _shortest_crossing(host, a, b, c)
        if length is None:
            raise InvalidSplit(f"no path from A{i} to B{i} with interior in C{i}")
        lengths.append(length)
    if lengths[0] % 2 != lengths[1] % 2:
        raise BergeViolation(f"A-to-B paths of the two sides have lengths {lengths[0]} and {lengths[1]}; "
                             "together they form an odd hole")
    if full_check:
        for i in (1, 2):
            a, b, c = split.side(i)
            if len(_path_parities(host.adj, host.anti, a, c, b)) > 1:
                raise BergeViolation(f"A{i}-to-B{i} paths of both parities; the trigraph is not Berge")
    return Parity.ODD if lengths[0] % 2 else Parity.EVEN


def two_join_parity(T: Trigraph, split: TwoJoinSplit, full_check: bool = PARITY_FULL_CHECK) -> Parity:
    problems = validate_two_join(T, split)
    if problems:
        raise InvalidSplit("; ".join(problems))
    return _parity_on_host(T, split, full_check)


# ---------------------------------------------------------------------------
# balanced skew-partitions
# ---------------------------------------------------------------------------

def _has_odd_crossing_path(adj: list[int], anti: list[int], ends: VertexSubset, interior: VertexSubset) -> bool:
    """Odd path of length > 1 with both ends in `ends` and interior in `interior`."""
    seen: set[tuple[int, int]] = set()

    def walk(path_mask: int, last: int, ok: int, first: int) -> bool:
        key = (path_mask, last)
        if key in seen:
            return False
        seen.add(key)
        inner = size(path_mask) - 1
        if inner >= 2 and inner % 2 == 0 and adj[last] & ok & ends & ~(1 << first):
            return True
        for u in members(adj[last] & ok & interior & ~path_mask):
            if walk(path_mask | (1 << u), u, ok & anti[last], first):
                return True
        return False

    for e in members(ends):
        for i in members(adj[e] & interior):
            if walk((1 << e) | (1 << i), i, anti[e], e):
                return True
    return False


def is_balanced_skew_partition(T: Trigraph, A: VertexSubset, B: VertexSubset) -> bool:
    if not A or not B or A & B or A | B != T.vertex_mask:
        return False
    if is_connected(T, A) or is_anticonnected(T, B):
        return False
    if _has_odd_crossing_path(T.adj, T.anti, B, A):
        return False
    return not _has_odd_crossing_path(T.anti, T.adj, A, B)


def find_balanced_skew_partition(T: Trigraph, cap: Optional[int] = BSP_CAP) -> Optional[tuple[VertexSubset, VertexSubset]]:
    check_cap("balanced skew-partition search (n)", T.n, cap)
    everything = T.vertex_mask
    for A in range(1, 1 << T.n):
        B = everything & ~A
        if size(A) < 2 or size(B) < 2:
            continue
        if is_balanced_skew_partition(T, A, B):
            return A, B
    return None


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkerRecord:
    """How a block relates to its parent: kept[i] is the parent vertex of
    block vertex i; markers sit after the kept vertices."""

    side: int
    kept: tuple[int, ...]
    a: int
    b: int
    c: Optional[int]
    kind: JoinKind
    parity: Parity

    @property
    def markers(self) -> tuple[int, ...]:
        return (self.a, self.b) if self.c is None else (self.a, self.b, self.c)

    def parent_of(self, i: int) -> Optional[int]:
        return self.kept[i] if i < len(self.kept) else None


def _direct_block(T: Trigraph, split: TwoJoinSplit, side: int, parity: Parity) -> tuple[np.ndarray, MarkerRecord]:
    a, b, c = split.side(side)
    kept = members(a | b | c)
    k = len(kept)
    extra = 2 if parity == Parity.ODD else 3
    matrix = np.full((k + extra, k + extra), STRONG_ANTIEDGE, dtype=np.int8)
    index = np.array(kept, dtype=np.intp)
    matrix[:k, :k] = T.theta[np.ix_(index, index)]
    ia, ib = k, k + 1
    for i, v in enumerate(kept):
        if a >> v & 1:
            matrix[i, ia] = matrix[ia, i] = STRONG_EDGE
        elif b >> v & 1:
            matrix[i, ib] = matrix[ib, i] = STRONG_EDGE
    ic = None
    if parity == Parity.ODD:
        matrix[ia, ib] = matrix[ib, ia] = SWITCHABLE
    else:
        ic = k + 2
        matrix[ia, ic] = matrix[ic, ia] = SWITCHABLE
        matrix[ib, ic] = matrix[ic, ib] = SWITCHABLE
    return matrix, MarkerRecord(side, kept, ia, ib, ic, split.kind, parity)


def build_block(T: Trigraph, split: TwoJoinSplit, side: int) -> tuple[Trigraph, MarkerRecord]:
    """Block of decomposition keeping X_side; the other side becomes
    markers a, b (odd) or a, b, c (even)."""
    if side not in (1, 2):
        raise InvalidSplit(f"side must be 1 or 2, got {side}")
    problems = validate_two_join(T, split)
    if problems:
        raise InvalidSplit("; ".join(problems))
    parity = split.parity or _parity_on_host(T, split)
    host = _host(T, split.kind)
    matrix, record = _direct_block(host, split, side, parity)
    block = Trigraph(matrix)
    if split.kind == JoinKind.COMPLEMENT:
        block = complement(block)
    return block, record


# ---------------------------------------------------------------------------
# decomposition tree
# ---------------------------------------------------------------------------

Origin = tuple[Optional[int], ...]


@dataclass(frozen=True, eq=False)
class Leaf:
    trigraph: Trigraph
    certificate: BasicCertificate
    origin: Origin


@dataclass(frozen=True, eq=False)
class Node:
    trigraph: Trigraph
    split: TwoJoinSplit
    children: tuple[tuple[MarkerRecord, "DecompositionTree"], ...]
    origin: Origin

    @property
    def kind(self) -> JoinKind:
        return self.split.kind


DecompositionTree = Union[Leaf, Node]
SplitFinder = Callable[[Trigraph, Origin], Optional[TwoJoinSplit]]
SideChooser = Callable[[Trigraph, TwoJoinSplit], int]


def exhaustive_split_finder(T: Trigraph, origin: Origin) -> Optional[TwoJoinSplit]:
    return find_any_two_join(T)


def _split_with_parity(T: Trigraph, X1: VertexSubset) -> Optional[TwoJoinSplit]:
    split = _split_from_side(T, X1)
    if split is None:
        split = _split_from_side(complement(T), X1)
        if split is None:
            return None
        split = replace(split, kind=JoinKind.COMPLEMENT)
    return replace(split, parity=_parity_on_host(T, split))


def region_split_finder(regions: Sequence[VertexSubset], fallback: bool = True) -> SplitFinder:
    """Split finder trying recorded sides first.

    Each region is a set of original vertices; the candidate side is the
    region (through the origin labels) plus any union of switchable
    components made only of marker vertices.
    """

    def finder(T: Trigraph, origin: Origin) -> Optional[TwoJoinSplit]:
        marker_blocks = [mask_of(c) for c in switchable_components(T)
                         if all(origin[v] is None for v in c)]
        for region in regions:
            core = mask_of(i for i, o in enumerate(origin) if o is not None and region >> o & 1)
            if not core:
                continue
            for choice in range(1 << len(marker_blocks)):
                X1 = core
                for i, block in enumerate(marker_blocks):
                    if choice >> i & 1:
                        X1 |= block
                if not 3 <= size(X1) <= T.n - 3:
                    continue
                split = _split_with_parity(T, X1)
                if split is not None:
                    return split
        if fallback and T.n <= TWO_JOIN_CAP:
            return find_any_two_join(T)
        return None

    return finder


def larger_side(T: Trigraph, split: TwoJoinSplit) -> int:
    return 1 if size(split.x1) >= size(split.x2) else 2


def leaves(tree: DecompositionTree) -> list[Leaf]:
    if isinstance(tree, Leaf):
        return [tree]
    return [leaf for _, child in tree.children for leaf in leaves(child)]


def child_origin(origin: Origin, record: MarkerRecord) -> Origin:
    return tuple(origin[v] for v in record.kept) + (None,) * len(record.markers)


def classify_for_decomposition(T: Trigraph) -> tuple[BasicCertificate, bool]:
    """Classification usable at any size; the flag says whether the
    exponential doubled check was run."""
    if T.n <= BASIC_CAP:
        return classify_basic(T), True
    return classify_polynomial(T), False


@dataclass
class _Decomposer:
    mode: str
    base_threshold: int
    finder: SplitFinder
    chooser: SideChooser
    transcript: list[str] = field(default_factory=list)

    def run(self, T: Trigraph, origin: Origin, depth: int) -> DecompositionTree:
        cert, complete = classify_for_decomposition(T)
        self.transcript.append(f"{'  ' * depth}n={T.n}: classified {cert.kind.value}")
        if cert.is_basic:
            return Leaf(T, cert, origin)
        if T.n <= self.base_threshold and complete:
            self.transcript.append(f"{'  ' * depth}n={T.n} <= base threshold {self.base_threshold}: leaf")
            return Leaf(T, cert, origin)
        split = self.finder(T, origin)
        if split is None:
            self.transcript.append(f"{'  ' * depth}no 2-join and no complement 2-join found")
            if not complete:
                raise CapExceeded("good partition search (n) for an undecomposed trigraph", T.n, BASIC_CAP)
            raise ContradictionWitness(
                f"trigraph on {T.n} vertices is neither basic nor decomposable by a 2-join",
                self.transcript)
        self.transcript.append(f"{'  ' * depth}{split.describe()}")
        logger.info("decomposing n=%d by %s %s 2-join", T.n, split.kind.value,
                    split.parity.value if split.parity else "?")
        sides = (1, 2) if self.mode == "both" else (self.chooser(T, split),)
        children = []
        for side in sides:
            block, record = build_block(T, split, side)
            children.append((record, self.run(block, child_origin(origin, record), depth + 1)))
        return Node(T, split, tuple(children), origin)


def check_decomposition_preconditions(T: Trigraph) -> None:
    """Class F and no balanced skew-partition, under the exhaustive caps."""
    in_f, violation = is_in_class_F(T)
    if not in_f:
        raise ClassViolation(f"trigraph is not in class F: {violation}")
    bsp = find_balanced_skew_partition(T)
    if bsp is not None:
        raise ClassViolation(f"trigraph has a balanced skew-partition A={list(members(bsp[0]))} "
                             f"B={list(members(bsp[1]))}", bsp=bsp)


def decompose_tree(T: Trigraph, mode: str = "both", base_threshold: Optional[int] = None,
                   split_finder: Optional[SplitFinder] = None, side_chooser: Optional[SideChooser] = None,
                   check_preconditions: bool = True) -> DecompositionTree:
    """Recursive decomposition into basic leaves.

    mode "both" keeps both blocks of every 2-join (separator construction);
    mode "single" follows the side picked by `side_chooser`. The base
    threshold defaults per mode.
    """
    if mode not in ("both", "single"):
        raise ValueError(f"Unsupported decomposition mode: {mode}")
    if base_threshold is None:
        base_threshold = BASE_THRESHOLD if mode == "both" else SEH_BASE_THRESHOLD
    if check_preconditions:
        check_decomposition_preconditions(T)
    decomposer = _Decomposer(mode, base_threshold, split_finder or exhaustive_split_finder,
                             side_chooser or larger_side)
    return decomposer.run(T, tuple(range(T.n)), 0)

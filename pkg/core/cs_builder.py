"""CS-separator construction: basic trigraphs, 2-join recombination and
the recursive driver over a decomposition tree."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .basic import BasicCertificate, BasicKind, validate_certificate
from .config import BASE_THRESHOLD, CLIQUE_CAP
from .decomposition import (
    DecompositionTree,
    JoinKind,
    Leaf,
    MarkerRecord,
    Node,
    SplitFinder,
    TwoJoinSplit,
    decompose_tree,
)
from .errors import InvalidSplit, InvariantBroken, PreconditionViolation, VerificationFailure
from .separation import (
    CSSeparator,
    Cut,
    all_cuts,
    cut_from_clique_side,
    extend_maximal_separator,
    flip,
    make_separator,
    maximal_clique_family,
    verify_cs_separator,
)
from .trigraph import Trigraph, complement, enumerate_cliques, mask_of, members, size

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# basic trigraphs
# ---------------------------------------------------------------------------

def _bipartite_family(T: Trigraph) -> list[Cut]:
    # cliques of a bipartite trigraph have at most two vertices
    return [cut_from_clique_side(T.n, K) for K in enumerate_cliques(T, cap=None) if size(K) <= 2]


def _line_family(T: Trigraph) -> list[Cut]:
    base = maximal_clique_family(T, cap=None)
    return list(extend_maximal_separator(T, base, check_berge=False).cuts)


def doubled_family(T: Trigraph, X: int, Y: int) -> list[Cut]:
    """(Y, X); then every one-vertex move across the good partition; then
    ({x, y}, rest) and (rest, {x, y}) for every pair."""
    n = T.n
    cuts = [Cut(Y, X)]
    for z in (None,) + members(X):
        Z = 0 if z is None else 1 << z
        for z_prime in (None,) + members(Y):
            Zp = 0 if z_prime is None else 1 << z_prime
            cuts.append(cut_from_clique_side(n, (Y | Z) & ~Zp))
    for u in range(n):
        for v in range(u + 1, n):
            pair = (1 << u) | (1 << v)
            cuts.append(cut_from_clique_side(n, pair))
            cuts.append(Cut(T.vertex_mask & ~pair, pair))
    return cuts


def doubled_family_size(n: int, x: int, y: int) -> int:
    return 1 + (x + 1) * (y + 1) + n * (n - 1)


def basic_cs_separator(T: Trigraph, cert: BasicCertificate) -> CSSeparator:
    """Separator of a basic trigraph, following its certificate."""
    problem = validate_certificate(T, cert)
    if problem or not cert.is_basic:
        raise PreconditionViolation(f"invalid {cert.kind.value} certificate: {problem or 'not basic'}")
    kind = cert.kind
    if kind in (BasicKind.CO_BIPARTITE, BasicKind.CO_LINE):
        co = complement(T)
        inner = BasicCertificate(kind.uncomplemented, bipartition=cert.bipartition, root=cert.root)
        return flip(basic_cs_separator(co, inner), host=T.fingerprint())
    if kind == BasicKind.BIPARTITE:
        cuts = _bipartite_family(T)
    elif kind == BasicKind.LINE:
        cuts = _line_family(T)
    else:
        cuts = doubled_family(T, *cert.good_partition)
    logger.debug("%s family of %d cuts for n=%d", kind.value, len(cuts), T.n)
    return make_separator(T, cuts)


# ---------------------------------------------------------------------------
# 2-join recombination
# ---------------------------------------------------------------------------

def _lift(T: Trigraph, split: TwoJoinSplit, record: MarkerRecord, F: CSSeparator) -> list[Cut]:
    """Cuts of a block lifted to T: A on a's side, B on b's side, C on
    the stable side."""
    if F.n != len(record.kept) + len(record.markers):
        raise InvalidSplit(f"block separator has {F.n} vertices, record expects "
                           f"{len(record.kept) + len(record.markers)}")
    other = 2 if record.side == 1 else 1
    a_other, b_other, _ = split.side(other)
    cuts = []
    for cut in F:
        U = 0
        for i in members(cut.clique_side):
            if i < len(record.kept):
                U |= 1 << record.kept[i]
        if cut.clique_side >> record.a & 1:
            U |= a_other
        if cut.clique_side >> record.b & 1:
            U |= b_other
        cuts.append(cut_from_clique_side(T.n, U))
    return cuts


def recombine_two_join(T: Trigraph, split: TwoJoinSplit, F1: CSSeparator, F2: CSSeparator,
                       record1: MarkerRecord, record2: MarkerRecord) -> CSSeparator:
    """Separator of T of size |F1| + |F2| from separators of the two blocks."""
    if (record1.side, record2.side) != (1, 2):
        raise InvalidSplit("records must describe the blocks of side 1 and side 2")
    if split.kind == JoinKind.COMPLEMENT:
        co = complement(T)
        direct = TwoJoinSplit(split.a1, split.b1, split.c1, split.a2, split.b2, split.c2,
                              JoinKind.DIRECT, split.parity)
        lifted = recombine_two_join(co, direct, flip(F1), flip(F2), record1, record2)
        return flip(lifted, host=T.fingerprint())
    cuts = _lift(T, split, record1, F1) + _lift(T, split, record2, F2)
    return make_separator(T, cuts)


# ---------------------------------------------------------------------------
# recursive driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LeafSize:
    path: str
    n: int
    kind: str
    method: str
    size: int


@dataclass
class SeparatorBuild:
    separator: CSSeparator
    tree: DecompositionTree
    leaves: list[LeafSize] = field(default_factory=list)
    verified: Optional[bool] = None

    @property
    def total(self) -> int:
        return sum(leaf.size for leaf in self.leaves)


def _leaf_separator(leaf: Leaf) -> tuple[CSSeparator, str]:
    if leaf.certificate.is_basic:
        return basic_cs_separator(leaf.trigraph, leaf.certificate), leaf.certificate.kind.value
    return all_cuts(leaf.trigraph), "all-cuts"


def separator_for_tree(tree: DecompositionTree, sizes: Optional[list[LeafSize]] = None,
                       path: str = "root") -> CSSeparator:
    """Leaves get their basic family (or every cut); nodes recombine."""
    if isinstance(tree, Leaf):
        F, method = _leaf_separator(tree)
        if sizes is not None:
            sizes.append(LeafSize(path, tree.trigraph.n, tree.certificate.kind.value, method, len(F)))
        return F
    if len(tree.children) != 2:
        raise PreconditionViolation("separator construction needs both blocks of every 2-join")
    (record1, child1), (record2, child2) = tree.children
    F1 = separator_for_tree(child1, sizes, f"{path}.1")
    F2 = separator_for_tree(child2, sizes, f"{path}.2")
    return recombine_two_join(tree.trigraph, tree.split, F1, F2, record1, record2)


def build_cs_separator_report(T: Trigraph, base_threshold: int = BASE_THRESHOLD,
                              split_finder: Optional[SplitFinder] = None,
                              check_preconditions: bool = True, deduplicate: bool = False,
                              verify: bool = False) -> SeparatorBuild:
    tree = decompose_tree(T, mode="both", base_threshold=base_threshold,
                          split_finder=split_finder, check_preconditions=check_preconditions)
    sizes: list[LeafSize] = []
    F = separator_for_tree(tree, sizes)
    if len(F) != sum(s.size for s in sizes):
        raise InvariantBroken(f"separator size {len(F)} differs from the leaf total")
    if deduplicate:
        F = F.deduplicated()
    build = SeparatorBuild(F, tree, sizes)
    if verify:
        ok, counterexample = verify_cs_separator(T, F, cap=CLIQUE_CAP)
        build.verified = ok
        if not ok:
            K, S = counterexample
            raise VerificationFailure(f"clique {members(K)} and stable set {members(S)} are not separated",
                                      counterexample=(members(K), members(S)))
    logger.info("separator of %d cuts over %d leaves for n=%d", len(F), len(sizes), T.n)
    return build


def build_cs_separator(T: Trigraph, **kwargs) -> CSSeparator:
    return build_cs_separator_report(T, **kwargs).separator


# ---------------------------------------------------------------------------
# size recursion
# ---------------------------------------------------------------------------

def size_recursion_holds(n: int, n1: int, c: int = 1) -> bool:
    """c(n1+3)^2 + c(n-n1+3)^2 <= c n^2."""
    return c * (n1 + 3) ** 2 + c * (n - n1 + 3) ** 2 <= c * n * n


def check_size_recursion(max_n: int = 100, min_n: int = 25, c: int = 1) -> list[tuple[int, int]]:
    """Pairs (n, n1) with 4 <= n1 <= n-4 where the recursion fails."""
    return [(n, n1) for n in range(min_n, max_n + 1) for n1 in range(4, n - 3)
            if not size_recursion_holds(n, n1, c)]

"""Cuts, CS-separators, the exhaustive verification oracle and the
maximal-pair extension."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .config import BERGE_CAP, CLIQUE_CAP
from .errors import BergeViolation, ClassViolation, PreconditionViolation, check_cap
from .trigraph import (
    Trigraph,
    VertexSubset,
    class_F_structure_violation,
    enumerate_cliques,
    enumerate_stable_sets,
    full_mask,
    is_berge,
    members,
    size,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Cut:
    clique_side: VertexSubset
    stable_side: VertexSubset

    def separates(self, K: VertexSubset, S: VertexSubset) -> bool:
        return K & ~self.clique_side == 0 and S & ~self.stable_side == 0

    def flipped(self) -> "Cut":
        return Cut(self.stable_side, self.clique_side)

    def is_partition_of(self, n: int) -> bool:
        return self.clique_side & self.stable_side == 0 and self.clique_side | self.stable_side == full_mask(n)


def cut_from_clique_side(n: int, clique_side: VertexSubset) -> Cut:
    return Cut(clique_side, full_mask(n) & ~clique_side)


@dataclass(frozen=True)
class CSSeparator:
    n: int
    cuts: tuple[Cut, ...]
    host: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        for cut in self.cuts:
            if not cut.is_partition_of(self.n):
                raise PreconditionViolation(
                    f"cut {members(cut.clique_side)} | {members(cut.stable_side)} "
                    f"does not partition {self.n} vertices")

    def __len__(self) -> int:
        return len(self.cuts)

    def __iter__(self) -> Iterator[Cut]:
        return iter(self.cuts)

    def deduplicated(self) -> "CSSeparator":
        return CSSeparator(self.n, tuple(dict.fromkeys(self.cuts)), self.host)

    def extended(self, more: Iterable[Cut]) -> "CSSeparator":
        return CSSeparator(self.n, self.cuts + tuple(more), self.host)


def make_separator(T: Trigraph, cuts: Iterable[Cut]) -> CSSeparator:
    return CSSeparator(T.n, tuple(cuts), T.fingerprint())


def separates(c: Cut, K: VertexSubset, S: VertexSubset) -> bool:
    return c.separates(K, S)


def flip(F: CSSeparator, host: Optional[str] = None) -> CSSeparator:
    """(B, W) -> (W, B): a separator of T becomes one of its complement."""
    return CSSeparator(F.n, tuple(c.flipped() for c in F.cuts), host)


def all_cuts(T: Trigraph) -> CSSeparator:
    """Every subset as a clique side; always a CS-separator."""
    return make_separator(T, (cut_from_clique_side(T.n, U) for U in range(1 << T.n)))


def maximal_clique_family(T: Trigraph, cap: Optional[int] = CLIQUE_CAP) -> CSSeparator:
    """One cut (K, V minus K) per maximal clique K."""
    cuts = sorted(cut_from_clique_side(T.n, K) for K in enumerate_cliques(T, maximal_only=True, cap=cap))
    return make_separator(T, cuts)


def _order_key(K: VertexSubset, S: VertexSubset) -> tuple:
    return size(K) + size(S), members(K), members(S)


def verify_cs_separator(T: Trigraph, F: CSSeparator,
                        cap: Optional[int] = CLIQUE_CAP) -> tuple[bool, Optional[tuple[VertexSubset, VertexSubset]]]:
    """Check every disjoint (clique, stable set) pair against F.

    Each vertex gets a bitset over the cut indices (cuts having it on the
    clique side, resp. the stable side); a pair is separated iff the AND
    of its vertices' bitsets is non-zero. On failure the smallest pair by
    (|K|+|S|, K, S) is returned.
    """
    if F.n != T.n:
        raise PreconditionViolation(f"separator is over {F.n} vertices, trigraph has {T.n}")
    if F.host is not None and F.host != T.fingerprint():
        logger.warning("separator host fingerprint %s does not match trigraph %s", F.host, T.fingerprint())
    check_cap("CS-separator verification (n)", T.n, cap)

    everything = full_mask(len(F.cuts))
    in_clique_side = [0] * T.n
    in_stable_side = [0] * T.n
    for i, cut in enumerate(F.cuts):
        for v in members(cut.clique_side):
            in_clique_side[v] |= 1 << i
        for v in members(cut.stable_side):
            in_stable_side[v] |= 1 << i

    def cut_mask(subset: VertexSubset, rows: list[int]) -> int:
        result = everything
        for v in members(subset):
            result &= rows[v]
        return result

    groups: dict[int, list[VertexSubset]] = defaultdict(list)
    for S in enumerate_stable_sets(T, cap=cap):
        groups[cut_mask(S, in_stable_side)].append(S)
    for stable_sets in groups.values():
        stable_sets.sort(key=lambda S: (size(S), members(S)))

    best = None
    for K in enumerate_cliques(T, cap=cap):
        k_mask = cut_mask(K, in_clique_side)
        for s_mask, stable_sets in groups.items():
            if k_mask & s_mask:
                continue
            for S in stable_sets:
                if S & K == 0:
                    key = _order_key(K, S)
                    if best is None or key < best[0]:
                        best = (key, K, S)
                    break
    if best is None:
        return True, None
    logger.debug("separator fails on clique %s / stable set %s", members(best[1]), members(best[2]))
    return False, (best[1], best[2])


def extend_maximal_separator(T: Trigraph, F: CSSeparator, check_berge: bool = True,
                             cap: Optional[int] = BERGE_CAP) -> CSSeparator:
    """Turn a family separating maximal pairs into a CS-separator.

    Adds (N[x], rest) and (N(x), rest) for every vertex and the four cuts
    N[x]&N[y], N[x]&N(y), N(x)&N[y], N(x)&N(y) for every switchable pair.
    """
    violation = class_F_structure_violation(T)
    if violation:
        raise ClassViolation(f"trigraph is not in class F: {violation}")
    if check_berge:
        berge, witness = is_berge(T, cap)
        if not berge:
            raise BergeViolation(f"trigraph is not Berge: odd {witness.kind} {witness.vertices}",
                                 witness.vertices)

    extra = []
    for x in range(T.n):
        extra.append(cut_from_clique_side(T.n, T.closed_neighborhood(x)))
        extra.append(cut_from_clique_side(T.n, T.adj[x]))
    for x, y in T.switchable_pairs():
        closed_x, open_x = T.closed_neighborhood(x), T.adj[x]
        closed_y, open_y = T.closed_neighborhood(y), T.adj[y]
        for U in (closed_x & closed_y, closed_x & open_y, open_x & closed_y, open_x & open_y):
            extra.append(cut_from_clique_side(T.n, U))
    logger.debug("extension adds %d cuts to %d", len(extra), len(F))
    return F.extended(extra)

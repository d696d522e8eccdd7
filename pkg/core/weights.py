"""Weighted trigraphs, partition maps (models) and bicliques.

All threshold comparisons are integer cross-multiplications.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Sequence

from .config import SEH_DENOMINATOR, SEH_EXTRA_NUMERATOR
from .errors import PreconditionViolation
from .trigraph import (
    Trigraph,
    VertexSubset,
    full_mask,
    members,
    strongly_anticomplete,
    strongly_complete,
)

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


def _pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class WeightedTrigraph:
    """Vertex weights (real, extra-complete, extra-anticomplete) and
    switchable-pair weights (extra-complete, extra-anticomplete)."""

    trigraph: Trigraph
    real: tuple[int, ...]
    extra_c: tuple[int, ...]
    extra_ac: tuple[int, ...]
    pair_c: Mapping[Pair, int] = field(default_factory=dict)
    pair_ac: Mapping[Pair, int] = field(default_factory=dict)

    def __post_init__(self):
        n = self.trigraph.n
        for name in ("real", "extra_c", "extra_ac"):
            values = getattr(self, name)
            if len(values) != n:
                raise PreconditionViolation(f"{name} weights have length {len(values)}, expected {n}")
            if any(x < 0 for x in values):
                raise PreconditionViolation(f"{name} weights must be non-negative")
        sigma = set(self.trigraph.switchable_pairs())
        for name in ("pair_c", "pair_ac"):
            for p, x in getattr(self, name).items():
                if p not in sigma:
                    raise PreconditionViolation(f"{name} weight on {p}, which is not a switchable pair")
                if x < 0:
                    raise PreconditionViolation(f"{name} weights must be non-negative")

    @classmethod
    def virgin(cls, T: Trigraph, real: Sequence[int]) -> "WeightedTrigraph":
        return cls(T, tuple(real), (0,) * T.n, (0,) * T.n)

    @classmethod
    def uniform(cls, T: Trigraph, value: int = 1) -> "WeightedTrigraph":
        return cls.virgin(T, [value] * T.n)

    @property
    def n(self) -> int:
        return self.trigraph.n

    def pair_weight(self, u: int, v: int) -> tuple[int, int]:
        p = _pair(u, v)
        return self.pair_c.get(p, 0), self.pair_ac.get(p, 0)

    def _inside_pairs(self, U: VertexSubset):
        for u, v in self.trigraph.switchable_pairs():
            if U >> u & 1 and U >> v & 1:
                yield u, v

    def wr(self, U: Optional[VertexSubset] = None) -> int:
        U = self.trigraph.vertex_mask if U is None else U
        return sum(self.real[v] for v in members(U))

    def wc(self, U: Optional[VertexSubset] = None) -> int:
        U = self.trigraph.vertex_mask if U is None else U
        return sum(self.extra_c[v] for v in members(U)) + sum(self.pair_c.get(p, 0) for p in self._inside_pairs(U))

    def wac(self, U: Optional[VertexSubset] = None) -> int:
        U = self.trigraph.vertex_mask if U is None else U
        return sum(self.extra_ac[v] for v in members(U)) + sum(self.pair_ac.get(p, 0) for p in self._inside_pairs(U))

    def wt(self, U: Optional[VertexSubset] = None) -> int:
        return self.wr(U) + self.wc(U) + self.wac(U)

    def vertex_weight(self, U: VertexSubset) -> tuple[int, int, int]:
        return self.wr(U), self.wc(U), self.wac(U)

    def crossing(self, A: VertexSubset, B: VertexSubset) -> tuple[int, int]:
        c = ac = 0
        for u, v in self.trigraph.switchable_pairs():
            if (A >> u & 1 and B >> v & 1) or (A >> v & 1 and B >> u & 1):
                c += self.pair_c.get((u, v), 0)
                ac += self.pair_ac.get((u, v), 0)
        return c, ac

    @property
    def total(self) -> int:
        return self.wt()

    def virginized(self) -> "WeightedTrigraph":
        return WeightedTrigraph.virgin(self.trigraph, self.real)


def is_virgin(w: WeightedTrigraph) -> bool:
    return w.wc() == 0 and w.wac() == 0


def is_balanced_weight(w: WeightedTrigraph) -> tuple[bool, Optional[str]]:
    total = w.total
    for v in range(w.n):
        if SEH_DENOMINATOR * w.real[v] > total:
            return False, f"real weight {w.real[v]} of vertex {v} exceeds w_t/{SEH_DENOMINATOR}"
        if SEH_DENOMINATOR * max(w.extra_c[v], w.extra_ac[v]) > total:
            return False, f"extra weight of vertex {v} exceeds w_t/{SEH_DENOMINATOR}"
    for u, v in w.trigraph.switchable_pairs():
        if SEH_DENOMINATOR * max(w.pair_weight(u, v)) > total:
            return False, f"extra weight of pair {u}{v} exceeds w_t/{SEH_DENOMINATOR}"
    if SEH_DENOMINATOR * (w.wc() + w.wac()) > SEH_EXTRA_NUMERATOR * total:
        return False, f"total extra weight exceeds {SEH_EXTRA_NUMERATOR}/{SEH_DENOMINATOR} of w_t"
    return True, None


# ---------------------------------------------------------------------------
# partition maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PartitionMap:
    """Teams of original vertices (bitsets over V(T0)) for each vertex and
    switchable pair of a model trigraph."""

    real: tuple[VertexSubset, ...]
    comp: tuple[VertexSubset, ...]
    anti: tuple[VertexSubset, ...]
    pair_comp: Mapping[Pair, VertexSubset] = field(default_factory=dict)
    pair_anti: Mapping[Pair, VertexSubset] = field(default_factory=dict)

    @classmethod
    def identity(cls, T0: Trigraph) -> "PartitionMap":
        return cls(tuple(1 << v for v in range(T0.n)), (0,) * T0.n, (0,) * T0.n)

    def real_of(self, U: VertexSubset) -> VertexSubset:
        out = 0
        for v in members(U):
            out |= self.real[v]
        return out

    def _extra_of(self, vertex_teams, pair_teams, U: VertexSubset) -> VertexSubset:
        out = 0
        for v in members(U):
            out |= vertex_teams[v]
        for (u, v), team in pair_teams.items():
            if U >> u & 1 and U >> v & 1:
                out |= team
        return out

    def comp_of(self, U: VertexSubset) -> VertexSubset:
        return self._extra_of(self.comp, self.pair_comp, U)

    def anti_of(self, U: VertexSubset) -> VertexSubset:
        return self._extra_of(self.anti, self.pair_anti, U)

    def team_of(self, U: VertexSubset) -> VertexSubset:
        return self.real_of(U) | self.comp_of(U) | self.anti_of(U)

    def crossing(self, A: VertexSubset, B: VertexSubset) -> tuple[VertexSubset, VertexSubset]:
        c = ac = 0
        for (u, v), team in self.pair_comp.items():
            if (A >> u & 1 and B >> v & 1) or (A >> v & 1 and B >> u & 1):
                c |= team
        for (u, v), team in self.pair_anti.items():
            if (A >> u & 1 and B >> v & 1) or (A >> v & 1 and B >> u & 1):
                ac |= team
        return c, ac


def _w0(w0: WeightedTrigraph, team: VertexSubset) -> int:
    return w0.wr(team)


def _extra_items(T: Trigraph, beta: PartitionMap, which: str):
    """(item, team, endpoints) for every vertex and switchable pair."""
    vertex_teams = beta.comp if which == "c" else beta.anti
    pair_teams = beta.pair_comp if which == "c" else beta.pair_anti
    for v in range(T.n):
        yield ("v", v), vertex_teams[v], 1 << v
    for u, v in T.switchable_pairs():
        yield ("p", (u, v)), pair_teams.get((u, v), 0), (1 << u) | (1 << v)


def verify_model(T0: Trigraph, w0: WeightedTrigraph, w: WeightedTrigraph,
                 beta: PartitionMap) -> tuple[bool, Optional[str]]:
    """Partition, weight, strong adjacency and extra conditions."""
    if not is_virgin(w0):
        raise PreconditionViolation("the original weight must be virgin")
    T = w.trigraph
    if len(beta.real) != T.n or len(beta.comp) != T.n or len(beta.anti) != T.n:
        return False, "partition: teams do not match the vertices"
    sigma = set(T.switchable_pairs())
    if not set(beta.pair_comp) <= sigma or not set(beta.pair_anti) <= sigma:
        return False, "partition: pair teams on non-switchable pairs"

    teams = list(beta.real) + list(beta.comp) + list(beta.anti)
    teams += list(beta.pair_comp.values()) + list(beta.pair_anti.values())
    seen = 0
    for team in teams:
        if seen & team:
            return False, f"partition: teams overlap on {members(seen & team)}"
        seen |= team
    if seen != full_mask(T0.n):
        return False, f"partition: vertices {members(full_mask(T0.n) & ~seen)} belong to no team"

    if w.total != w0.total:
        return False, f"weight: total {w.total} differs from the original {w0.total}"
    for v in range(T.n):
        for label, weight, team in (("real", w.real[v], beta.real[v]), ("extra-complete", w.extra_c[v], beta.comp[v]),
                                    ("extra-anticomplete", w.extra_ac[v], beta.anti[v])):
            if weight != _w0(w0, team):
                return False, f"weight: {label} weight of vertex {v} is {weight}, its team weighs {_w0(w0, team)}"
    for p in sigma:
        pc, pac = w.pair_weight(*p)
        if pc != _w0(w0, beta.pair_comp.get(p, 0)) or pac != _w0(w0, beta.pair_anti.get(p, 0)):
            return False, f"weight: extra weights of pair {p} do not match its teams"

    for u in range(T.n):
        for v in members(T.strong[u]):
            if u < v and not strongly_complete(T0, beta.real[u], beta.real[v]):
                return False, f"adjacency: real teams of {u},{v} are not strongly complete"
        for v in members(T.strong_anti[u]):
            if u < v and not strongly_anticomplete(T0, beta.real[u], beta.real[v]):
                return False, f"adjacency: real teams of {u},{v} are not strongly anticomplete"

    for which, related in (("c", strongly_complete), ("ac", strongly_anticomplete)):
        items = list(_extra_items(T, beta, which))
        for item, team, ends in items:
            if not team:
                continue
            for other, other_team, _ in items:
                if other != item and other_team and not related(T0, team, other_team):
                    return False, f"extra: {which} team of {item} vs {which} team of {other}"
            for y in range(T.n):
                if not ends >> y & 1 and not related(T0, team, beta.real[y]):
                    return False, f"extra: {which} team of {item} vs real team of {y}"
    return True, None


# ---------------------------------------------------------------------------
# bicliques
# ---------------------------------------------------------------------------

class BicliqueKind(str, Enum):
    COMPLETE = "complete"
    ANTICOMPLETE = "anticomplete"

    @property
    def other(self) -> "BicliqueKind":
        return BicliqueKind.ANTICOMPLETE if self == BicliqueKind.COMPLETE else BicliqueKind.COMPLETE


@dataclass(frozen=True)
class Biclique:
    x: VertexSubset
    y: VertexSubset
    kind: BicliqueKind
    weight: int

    def flipped(self) -> "Biclique":
        """The same pair read in the complement."""
        return Biclique(self.x, self.y, self.kind.other, self.weight)


def biclique_weight(x: VertexSubset, y: VertexSubset, real: Optional[Sequence[int]] = None) -> int:
    if real is None:
        return min(x.bit_count(), y.bit_count())
    return min(sum(real[v] for v in members(x)), sum(real[v] for v in members(y)))


def make_biclique(x: VertexSubset, y: VertexSubset, kind: BicliqueKind,
                  real: Optional[Sequence[int]] = None) -> Biclique:
    return Biclique(x, y, kind, biclique_weight(x, y, real))


def verify_biclique(T: Trigraph, b: Biclique, real: Optional[Sequence[int]] = None) -> Optional[str]:
    """Violation by direct theta inspection, or None."""
    if b.x & b.y:
        return "sides intersect"
    if (b.x | b.y) >> T.n:
        return "sides are out of range"
    if b.kind == BicliqueKind.COMPLETE and not strongly_complete(T, b.x, b.y):
        return "sides are not strongly complete"
    if b.kind == BicliqueKind.ANTICOMPLETE and not strongly_anticomplete(T, b.x, b.y):
        return "sides are not strongly anticomplete"
    if b.weight != biclique_weight(b.x, b.y, real):
        return f"recorded weight {b.weight} differs from {biclique_weight(b.x, b.y, real)}"
    return None

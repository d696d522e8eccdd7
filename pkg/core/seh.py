"""Biclique extraction for trigraphs of class F with no balanced
skew-partition.

The driver contracts the lighter side of a 2-join at every step while a
partition map keeps track of which original vertices every vertex and
switchable pair of the model stands for. It stops at a basic model, or
earlier when some team is already heavy enough to give a certificate in
the original trigraph.
"""

from __future__ import annotations

import logging
import operator
from dataclasses import dataclass, field, replace
from functools import reduce
from typing import Optional

import networkx as nx

from .basic import BasicCertificate, BasicKind
from .config import (
    BASIC_CAP,
    HEAVY_CLIQUE_DENOMINATOR,
    SEH_BASE_THRESHOLD,
    SEH_DENOMINATOR,
    SEH_EXTRA_NUMERATOR,
    SPLIT_DENOMINATOR,
)
from .decomposition import (
    JoinKind,
    MarkerRecord,
    Origin,
    Parity,
    SplitFinder,
    TwoJoinSplit,
    build_block,
    check_decomposition_preconditions,
    child_origin,
    classify_for_decomposition,
    exhaustive_split_finder,
    two_join_parity,
)
from .edge_split import bipartite_multigraph_split
from .errors import CapExceeded, ContradictionWitness, InvariantBroken, PreconditionViolation
from .oracles import best_biclique
from .trigraph import (
    Trigraph,
    VertexSubset,
    anticomponents,
    complement,
    components,
    is_strong_clique,
    lowest,
    mask_of,
    members,
    strongly_anticomplete,
    strongly_complete,
)
from .weights import (
    Biclique,
    BicliqueKind,
    PartitionMap,
    WeightedTrigraph,
    is_balanced_weight,
    is_virgin,
    make_biclique,
    verify_biclique,
    verify_model,
)

logger = logging.getLogger(__name__)


def _heavy(weight: int, total: int) -> bool:
    return SEH_DENOMINATOR * weight >= total


# ---------------------------------------------------------------------------
# 2-join contraction
# ---------------------------------------------------------------------------

def orient_split(w: WeightedTrigraph, split: TwoJoinSplit) -> TwoJoinSplit:
    """X1 becomes the heavier side; on a tie, the side holding the lowest vertex."""
    w1, w2 = w.wt(split.x1), w.wt(split.x2)
    if w1 == w2:
        keep = lowest(split.x1) < lowest(split.x2)
    else:
        keep = w1 > w2
    return split if keep else split.swapped()


def _with_parity(T: Trigraph, split: TwoJoinSplit) -> TwoJoinSplit:
    if split.parity is None:
        return replace(split, parity=two_join_parity(T, split))
    return split


def _add(*values: int) -> int:
    return sum(values)


def _union(*teams: VertexSubset) -> VertexSubset:
    return reduce(operator.or_, teams, 0)


def _marker_values(split: TwoJoinSplit, real, comp, anti, crossing, join):
    """Values of the markers of the block keeping X1.

    Works on weights (join = sum) and on teams (join = union): a, b and c
    take the triples of A2, B2 and C2; the marker pairs take the crossing
    values. On an odd join c does not exist and everything of C2 goes to
    the pair ab, its real part as extra-anticomplete (extra-complete for
    a complement 2-join).
    """
    a2, b2, c2 = split.a2, split.b2, split.c2

    def triple(U):
        return real(U), comp(U), anti(U)

    if split.parity == Parity.EVEN:
        return triple(a2), triple(b2), triple(c2), {"ac": crossing(a2, c2), "bc": crossing(b2, c2)}
    ab, ac, bc = crossing(a2, b2), crossing(a2, c2), crossing(b2, c2)
    to_comp = join(comp(c2), ab[0], ac[0], bc[0])
    to_anti = join(anti(c2), ab[1], ac[1], bc[1])
    if split.kind == JoinKind.DIRECT:
        to_anti = join(to_anti, real(c2))
    else:
        to_comp = join(to_comp, real(c2))
    return triple(a2), triple(b2), None, {"ab": (to_comp, to_anti)}


def _marker_pair(record: MarkerRecord, name: str) -> tuple[int, int]:
    ends = {"a": record.a, "b": record.b, "c": record.c}
    return ends[name[0]], ends[name[1]]


def _carry(T: Trigraph, x1: VertexSubset, index: dict[int, int], pair_values, record: MarkerRecord,
           marker_pairs: dict, slot: int) -> dict:
    out = {}
    for u, v in T.switchable_pairs():
        if x1 >> u & 1 and x1 >> v & 1 and pair_values.get((u, v)):
            out[(index[u], index[v])] = pair_values[(u, v)]
    for name, values in marker_pairs.items():
        if values[slot]:
            out[_marker_pair(record, name)] = values[slot]
    return out


def _contract_weights(w: WeightedTrigraph, split: TwoJoinSplit, block: Trigraph,
                      record: MarkerRecord) -> WeightedTrigraph:
    a, b, c, pairs = _marker_values(split, w.wr, w.wc, w.wac, w.crossing, _add)
    markers = [a, b] if c is None else [a, b, c]
    kept = record.kept
    index = {v: i for i, v in enumerate(kept)}
    real = [w.real[v] for v in kept] + [m[0] for m in markers]
    extra_c = [w.extra_c[v] for v in kept] + [m[1] for m in markers]
    extra_ac = [w.extra_ac[v] for v in kept] + [m[2] for m in markers]
    T, x1 = w.trigraph, split.x1
    return WeightedTrigraph(block, tuple(real), tuple(extra_c), tuple(extra_ac),
                            _carry(T, x1, index, w.pair_c, record, pairs, 0),
                            _carry(T, x1, index, w.pair_ac, record, pairs, 1))


def _contract_teams(T: Trigraph, beta: PartitionMap, split: TwoJoinSplit, record: MarkerRecord) -> PartitionMap:
    a, b, c, pairs = _marker_values(split, beta.real_of, beta.comp_of, beta.anti_of, beta.crossing, _union)
    markers = [a, b] if c is None else [a, b, c]
    kept = record.kept
    index = {v: i for i, v in enumerate(kept)}
    x1 = split.x1
    return PartitionMap(
        tuple(beta.real[v] for v in kept) + tuple(m[0] for m in markers),
        tuple(beta.comp[v] for v in kept) + tuple(m[1] for m in markers),
        tuple(beta.anti[v] for v in kept) + tuple(m[2] for m in markers),
        _carry(T, x1, index, beta.pair_comp, record, pairs, 0),
        _carry(T, x1, index, beta.pair_anti, record, pairs, 1),
    )


def _prepare(w: WeightedTrigraph, split: TwoJoinSplit) -> tuple[TwoJoinSplit, Trigraph, MarkerRecord]:
    split = orient_split(w, _with_parity(w.trigraph, split))
    block, record = build_block(w.trigraph, split, 1)
    return split, block, record


def contract_two_join(w: WeightedTrigraph, split: TwoJoinSplit) -> tuple[WeightedTrigraph, MarkerRecord]:
    """Contraction of (T, w) keeping the heavier side; total weight is preserved."""
    split, block, record = _prepare(w, split)
    contracted = _contract_weights(w, split, block, record)
    if contracted.total != w.total:
        raise InvariantBroken(f"contraction changed the total weight from {w.total} to {contracted.total}")
    return contracted, record


def compose_partition_map(beta: PartitionMap, w: WeightedTrigraph, split: TwoJoinSplit) -> PartitionMap:
    """Partition map for the contraction of (T, w) along `split`."""
    split, _, record = _prepare(w, split)
    return _contract_teams(w.trigraph, beta, split, record)


# ---------------------------------------------------------------------------
# basic trigraphs
# ---------------------------------------------------------------------------

def _greedy_split(S: VertexSubset, real, total: int, kind: BicliqueKind) -> Biclique:
    """First part grows in index order until it holds 1/48 of the total."""
    X = 0
    for v in members(S):
        X |= 1 << v
        if SPLIT_DENOMINATOR * sum(real[u] for u in members(X)) >= total:
            break
    return make_biclique(X, S & ~X, kind, real)


def _weight(real, U: VertexSubset) -> int:
    return sum(real[v] for v in members(U))


def _line_biclique(T: Trigraph, cert: BasicCertificate, real, total: int) -> Biclique:
    root = cert.root
    for node in sorted(root.graph.nodes()):
        K = root.star(node)
        if HEAVY_CLIQUE_DENOMINATOR * _weight(real, K) >= total:
            if not is_strong_clique(T, K):
                raise InvariantBroken(f"heavy clique {members(K)} of a line trigraph is not strong")
            logger.debug("line trigraph: heavy star at %s", node)
            return _greedy_split(K, real, total, BicliqueKind.COMPLETE)
    G = nx.MultiGraph()
    G.add_nodes_from(root.graph.nodes())
    for v, (p, q) in enumerate(root.edge_of):
        for copy in range(real[v]):
            G.add_edge(p, q, key=(v, copy))
    split = bipartite_multigraph_split(G)
    X = mask_of({key[0] for _, _, key in split.first})
    Y = mask_of({key[0] for _, _, key in split.second})
    logger.debug("line trigraph: edge split of sizes %s", split.sizes)
    return make_biclique(X, Y, BicliqueKind.ANTICOMPLETE, real)


def _doubled_biclique(T: Trigraph, cert: BasicCertificate, real, total: int) -> Biclique:
    X, Y = cert.good_partition
    first_stable = mask_of(lowest(c) for c in components(T, X))
    first_clique = mask_of(lowest(c) for c in anticomponents(T, Y))
    candidates = [
        (first_stable, BicliqueKind.ANTICOMPLETE),
        (X & ~first_stable, BicliqueKind.ANTICOMPLETE),
        (first_clique, BicliqueKind.COMPLETE),
        (Y & ~first_clique, BicliqueKind.COMPLETE),
    ]
    S, kind = max(candidates, key=lambda item: _weight(real, item[0]))
    return _greedy_split(S, real, total, kind)


def _basic_on(T: Trigraph, cert: BasicCertificate, real, total: int) -> Biclique:
    if cert.kind in (BasicKind.CO_BIPARTITE, BasicKind.CO_LINE):
        inner = BasicCertificate(cert.kind.uncomplemented, bipartition=cert.bipartition, root=cert.root)
        return _basic_on(complement(T), inner, real, total).flipped()
    if cert.kind == BasicKind.BIPARTITE:
        S1, S2 = cert.bipartition
        heavy = S1 if _weight(real, S1) >= _weight(real, S2) else S2
        return _greedy_split(heavy, real, total, BicliqueKind.ANTICOMPLETE)
    if cert.kind == BasicKind.LINE:
        return _line_biclique(T, cert, real, total)
    return _doubled_biclique(T, cert, real, total)


def basic_biclique(w: WeightedTrigraph, cert: BasicCertificate) -> Biclique:
    """Biclique or complement biclique of a basic trigraph with balanced
    weight, of weight at least w_t/55. Extra weights are ignored."""
    if not cert.is_basic:
        raise PreconditionViolation("basic_biclique needs a basic certificate")
    balanced, violation = is_balanced_weight(w)
    if not balanced:
        raise PreconditionViolation(f"weight is not balanced: {violation}")
    real = w.real
    total = sum(real)
    if total == 0:
        return Biclique(0, 0, BicliqueKind.ANTICOMPLETE, 0)
    b = _basic_on(w.trigraph, cert, real, total)
    problem = verify_biclique(w.trigraph, b, real)
    if problem or not _heavy(b.weight, w.total):
        raise InvariantBroken(f"{cert.kind.value} biclique {members(b.x)} / {members(b.y)} "
                              f"fails: {problem or f'weight {b.weight} below w_t/{SEH_DENOMINATOR}'}")
    return b


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

@dataclass
class Extraction:
    biclique: Biclique
    exit: str
    steps: list[str] = field(default_factory=list)
    contractions: int = 0


@dataclass
class _Extractor:
    T0: Trigraph
    w0: WeightedTrigraph
    finder: SplitFinder
    verify_steps: bool
    steps: list[str] = field(default_factory=list)
    contractions: int = 0

    def certify(self, X: VertexSubset, Y: VertexSubset, kind: BicliqueKind, exit: str) -> Extraction:
        b = make_biclique(X, Y, kind, self.w0.real)
        problem = verify_biclique(self.T0, b, self.w0.real)
        if problem or not _heavy(b.weight, self.w0.total):
            raise InvariantBroken(f"{exit} certificate {members(X)} / {members(Y)} fails: "
                                  f"{problem or f'weight {b.weight} below w0/{SEH_DENOMINATOR}'}")
        self.steps.append(f"{exit}: {kind.value} biclique of weight {b.weight}")
        logger.info("biclique found by %s after %d contractions", exit, self.contractions)
        return Extraction(b, exit, self.steps, self.contractions)

    def run(self) -> Extraction:
        w, beta = self.w0, PartitionMap.identity(self.T0)
        origin: Origin = tuple(range(self.T0.n))
        while True:
            T, total = w.trigraph, w.total
            cert, complete = classify_for_decomposition(T)
            self.steps.append(f"n={T.n}: classified {cert.kind.value}")
            if cert.is_basic:
                b = basic_biclique(w, cert)
                return self.certify(beta.real_of(b.x), beta.real_of(b.y), b.kind, "basic")
            if complete and T.n <= SEH_BASE_THRESHOLD:
                b = best_biclique(T, w.real, cap=BASIC_CAP)
                if b is not None and _heavy(b.weight, total):
                    return self.certify(beta.real_of(b.x), beta.real_of(b.y), b.kind, "small-model")
            split = self.finder(T, origin)
            if split is None:
                self.steps.append("no 2-join and no complement 2-join found")
                if not complete:
                    raise CapExceeded("good partition search (n) for an undecomposed model", T.n, BASIC_CAP)
                raise ContradictionWitness(
                    f"model on {T.n} vertices is neither basic nor decomposable by a 2-join", self.steps)
            split = orient_split(w, _with_parity(T, split))
            self.steps.append(f"n={T.n}: {split.describe()}")
            found = self._early_exit(w, beta, split)
            if found is not None:
                return found
            w, beta, origin = self._contract(w, beta, split, origin)

    def _early_exit(self, w: WeightedTrigraph, beta: PartitionMap, split: TwoJoinSplit) -> Optional[Extraction]:
        T, total = w.trigraph, w.total
        H = next((U for U in split.side(1) if _heavy(w.wr(U), total)), None)
        if H is None:
            raise InvariantBroken("no part of the heavier side carries w_t/55 real weight")

        for Z in split.side(2):
            if _heavy(w.wr(Z), total):
                if strongly_complete(T, H, Z):
                    kind = BicliqueKind.COMPLETE
                elif strongly_anticomplete(T, H, Z):
                    kind = BicliqueKind.ANTICOMPLETE
                else:
                    raise InvariantBroken("heavy part of X2 is neither complete nor anticomplete to X1's heavy part")
                return self.certify(beta.real_of(H), beta.real_of(Z), kind, "marker-team")

        a, b, c, pairs = _marker_values(split, w.wr, w.wc, w.wac, w.crossing, _add)
        ta, tb, tc, team_pairs = _marker_values(split, beta.real_of, beta.comp_of, beta.anti_of, beta.crossing, _union)
        items = [(a, ta), (b, tb)] + ([(c, tc)] if c is not None else [])
        extras = [(weights[1], teams[1], weights[2], teams[2]) for weights, teams in items]
        extras += [(pairs[name][0], team_pairs[name][0], pairs[name][1], team_pairs[name][1]) for name in pairs]
        for comp_weight, comp_team, anti_weight, anti_team in extras:
            if _heavy(comp_weight, total):
                return self.certify(comp_team, beta.real_of(H), BicliqueKind.COMPLETE, "extra-team")
            if _heavy(anti_weight, total):
                return self.certify(anti_team, beta.real_of(H), BicliqueKind.ANTICOMPLETE, "extra-team")

        extra = w.wc() + w.wac()
        if split.parity == Parity.ODD:
            extra += w.wr(split.c2)
        if SEH_DENOMINATOR * extra > SEH_EXTRA_NUMERATOR * total:
            return self._split_extra_teams(w, beta)
        return None

    def _split_extra_teams(self, w: WeightedTrigraph, beta: PartitionMap) -> Extraction:
        """The heavier of the extra-complete and extra-anticomplete team
        unions, cut into two groups of whole teams."""
        if w.wc() >= w.wac():
            teams = list(beta.comp) + [beta.pair_comp[p] for p in sorted(beta.pair_comp)]
            kind = BicliqueKind.COMPLETE
        else:
            teams = list(beta.anti) + [beta.pair_anti[p] for p in sorted(beta.pair_anti)]
            kind = BicliqueKind.ANTICOMPLETE
        X = Y = 0
        for team in teams:
            if not _heavy(self.w0.wr(X), self.w0.total):
                X |= team
            else:
                Y |= team
        return self.certify(X, Y, kind, "extra-total")

    def _contract(self, w: WeightedTrigraph, beta: PartitionMap, split: TwoJoinSplit,
                  origin: Origin) -> tuple[WeightedTrigraph, PartitionMap, Origin]:
        T = w.trigraph
        block, record = build_block(T, split, 1)
        if block.n >= T.n:
            raise InvariantBroken(f"block on {block.n} vertices is not smaller than the model on {T.n}")
        w_next = _contract_weights(w, split, block, record)
        beta_next = _contract_teams(T, beta, split, record)
        if w_next.total != w.total:
            raise InvariantBroken(f"contraction changed the total weight from {w.total} to {w_next.total}")
        if self.verify_steps:
            ok, violation = verify_model(self.T0, self.w0, w_next, beta_next)
            if not ok:
                raise InvariantBroken(f"contraction is not a model: {violation}")
            ok, violation = is_balanced_weight(w_next)
            if not ok:
                raise InvariantBroken(f"contraction is not balanced: {violation}")
        self.contractions += 1
        logger.debug("contracted %s %s 2-join: n=%d -> %d", split.kind.value, split.parity.value, T.n, block.n)
        return w_next, beta_next, child_origin(origin, record)


def run_extraction(T0: Trigraph, w0: WeightedTrigraph, split_finder: Optional[SplitFinder] = None,
                   check_preconditions: bool = True, verify_steps: bool = True) -> Extraction:
    """Biclique or complement biclique of T0 of weight at least w0(T0)/55."""
    if w0.trigraph != T0:
        raise PreconditionViolation("the weight is defined on another trigraph")
    if not is_virgin(w0):
        raise PreconditionViolation("the original weight must be virgin")
    balanced, violation = is_balanced_weight(w0)
    if not balanced:
        raise PreconditionViolation(f"the original weight is not balanced: {violation}")
    if check_preconditions:
        check_decomposition_preconditions(T0)
    return _Extractor(T0, w0, split_finder or exhaustive_split_finder, verify_steps).run()


def extract_biclique(T0: Trigraph, w0: WeightedTrigraph, **kwargs) -> Biclique:
    return run_extraction(T0, w0, **kwargs).biclique


def first_strong_pair(T: Trigraph) -> Optional[Biclique]:
    """({u}, {v}) for the lexicographically first strong edge or antiedge."""
    for u in range(T.n):
        for v in range(u + 1, T.n):
            if T.strong[u] >> v & 1:
                return Biclique(1 << u, 1 << v, BicliqueKind.COMPLETE, 1)
            if T.strong_anti[u] >> v & 1:
                return Biclique(1 << u, 1 << v, BicliqueKind.ANTICOMPLETE, 1)
    return None


def extract_biclique_unweighted(T: Trigraph, split_finder: Optional[SplitFinder] = None,
                                check_preconditions: bool = True, verify_steps: bool = True) -> Extraction:
    """Biclique or complement biclique with 55 * min(|X|, |Y|) >= n."""
    if T.n < 3:
        raise PreconditionViolation(f"need at least 3 vertices, got {T.n}")
    if check_preconditions:
        check_decomposition_preconditions(T)
    if T.n < SEH_DENOMINATOR:
        b = first_strong_pair(T)
        if b is None:
            raise InvariantBroken(f"no strong edge or strong antiedge on {T.n} vertices")
        return Extraction(b, "strong-pair", [f"n={T.n} < {SEH_DENOMINATOR}: first strong pair"])
    return run_extraction(T, WeightedTrigraph.uniform(T), split_finder,
                          check_preconditions=False, verify_steps=verify_steps)


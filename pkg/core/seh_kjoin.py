"""Biclique extraction in the closure of a graph class under generalized
k-joins, with simple vertex weights and a biclique oracle for the class."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import InvariantBroken, OracleContractViolation, PreconditionViolation
from .kjoin import CompositionTree, KLeaf, KNode
from .seh import Extraction, first_strong_pair
from .trigraph import Trigraph, VertexSubset, full_mask, induced, mask_of, members, strongly_anticomplete, strongly_complete
from .weights import Biclique, BicliqueKind, make_biclique, verify_biclique

logger = logging.getLogger(__name__)

BicliqueOracle = Callable[[Trigraph, Sequence[int], Fraction], Biclique]


def _w(weights: Sequence[int], U: VertexSubset) -> int:
    return sum(weights[v] for v in members(U))


def _union(teams: Sequence[VertexSubset], U: VertexSubset) -> VertexSubset:
    out = 0
    for v in members(U):
        out |= teams[v]
    return out


def is_c_balanced(weights: Sequence[int], c: Fraction) -> bool:
    total = sum(weights)
    return all(c.denominator * x <= c.numerator * total for x in weights)


@dataclass(frozen=True)
class KContraction:
    """The operand kept by a contraction; preimage[x] is the set of join
    vertices that its vertex x stands for."""

    tree: CompositionTree
    operand: int
    preimage: tuple[VertexSubset, ...]
    weights: tuple[int, ...]


def _preimage(node: KNode, operand: int) -> tuple[VertexSubset, ...]:
    child = node.left if operand == 1 else node.right
    side = node.left_side if operand == 1 else node.right_side
    groups = node.layout.b_parts if operand == 1 else node.layout.a_parts
    pre = [0] * child.trigraph.n
    for old, new in node.layout.position(operand).items():
        pre[old] = 1 << new
    for marker, group in zip(side.markers, groups):
        pre[marker] = group
    return tuple(pre)


def contract_k_join(weights: Sequence[int], node: KNode) -> KContraction:
    """Keep T1 when the A-parts weigh at least as much as the B-parts
    (T2 otherwise); each marker takes the weight of the part it replaces."""
    if len(weights) != node.trigraph.n:
        raise PreconditionViolation(f"{len(weights)} weights for a join on {node.trigraph.n} vertices")
    operand = 1 if _w(weights, node.layout.a_union) >= _w(weights, node.layout.b_union) else 2
    pre = _preimage(node, operand)
    contracted = tuple(_w(weights, U) for U in pre)
    if sum(contracted) != sum(weights):
        raise InvariantBroken(f"k-join contraction changed the total weight from {sum(weights)} to {sum(contracted)}")
    return KContraction(node.left if operand == 1 else node.right, operand, pre, contracted)


def verify_simple_model(T0: Trigraph, w0: Sequence[int], T: Trigraph, weights: Sequence[int],
                        teams: Sequence[VertexSubset]) -> tuple[bool, Optional[str]]:
    """Partition, weight and strong adjacency conditions for vertex teams."""
    if len(teams) != T.n or len(weights) != T.n:
        return False, "partition: teams do not match the vertices"
    seen = 0
    for team in teams:
        if seen & team:
            return False, f"partition: teams overlap on {members(seen & team)}"
        seen |= team
    if seen != full_mask(T0.n):
        return False, "partition: some original vertex belongs to no team"
    if sum(weights) != sum(w0):
        return False, f"weight: total {sum(weights)} differs from the original {sum(w0)}"
    for v in range(T.n):
        if weights[v] != _w(w0, teams[v]):
            return False, f"weight: vertex {v} weighs {weights[v]}, its team weighs {_w(w0, teams[v])}"
    for u in range(T.n):
        for v in members(T.strong[u]):
            if u < v and not strongly_complete(T0, teams[u], teams[v]):
                return False, f"adjacency: teams of {u},{v} are not strongly complete"
        for v in members(T.strong_anti[u]):
            if u < v and not strongly_anticomplete(T0, teams[u], teams[v]):
                return False, f"adjacency: teams of {u},{v} are not strongly anticomplete"
    return True, None


def _early_exit(weights: Sequence[int], node: KNode, c: Fraction) -> Optional[tuple[VertexSubset, VertexSubset, BicliqueKind]]:
    """(A_j0, B_i0), or the mirror, when the part opposite the heavier
    side's heaviest part already carries c of the weight."""
    layout, iface = node.layout, node.iface
    total = sum(weights)
    a_heavier = _w(weights, layout.a_union) >= _w(weights, layout.b_union)
    heavy, other = (layout.a_parts, layout.b_parts) if a_heavier else (layout.b_parts, layout.a_parts)
    j0 = max(range(len(heavy)), key=lambda j: (_w(weights, heavy[j]), -j))
    for i0, part in enumerate(other):
        if c.denominator * _w(weights, part) >= c.numerator * total:
            complete = iface.complete(j0, i0) if a_heavier else iface.complete(i0, j0)
            return heavy[j0], part, BicliqueKind.COMPLETE if complete else BicliqueKind.ANTICOMPLETE
    return None


def _leaf_biclique(leaf: KLeaf, weights: Sequence[int], ratio: Fraction, oracle: BicliqueOracle) -> Biclique:
    """Heaviest vertex of every part (lowest index on ties), then the oracle
    on the induced graph of the class."""
    kept = mask_of(max(part, key=lambda v: (weights[v], -v)) for part in leaf.parts)
    G, index = induced(leaf.realization, kept)
    if G.n < 2:
        raise InvariantBroken("the reduced leaf has fewer than two vertices")
    w_G = [weights[v] for v in index]
    b = oracle(G, w_G, ratio)
    problem = verify_biclique(G, b, w_G)
    if problem:
        raise OracleContractViolation(f"oracle answer is not a biclique: {problem}")
    if ratio.denominator * b.weight < ratio.numerator * sum(w_G):
        raise OracleContractViolation(f"oracle biclique weight {b.weight} is below {ratio} of {sum(w_G)}")
    X = mask_of(index[i] for i in members(b.x))
    Y = mask_of(index[i] for i in members(b.y))
    return make_biclique(X, Y, b.kind, weights)


@dataclass
class _KExtractor:
    T0: Trigraph
    w0: tuple[int, ...]
    c: Fraction
    k: int
    oracle: BicliqueOracle
    verify_steps: bool
    steps: list[str] = field(default_factory=list)
    contractions: int = 0

    def certify(self, X: VertexSubset, Y: VertexSubset, kind: BicliqueKind, exit: str) -> Extraction:
        b = make_biclique(X, Y, kind, self.w0)
        problem = verify_biclique(self.T0, b, self.w0)
        if problem or self.c.denominator * b.weight < self.c.numerator * sum(self.w0):
            raise InvariantBroken(f"{exit} certificate {members(X)} / {members(Y)} fails: "
                                  f"{problem or f'weight {b.weight} below {self.c} of {sum(self.w0)}'}")
        self.steps.append(f"{exit}: {kind.value} biclique of weight {b.weight}")
        logger.info("k-join biclique found by %s after %d contractions", exit, self.contractions)
        return Extraction(b, exit, self.steps, self.contractions)

    def run(self, tree: CompositionTree) -> Extraction:
        node, weights = tree, self.w0
        teams = tuple(1 << v for v in range(self.T0.n))
        while isinstance(node, KNode):
            node.iface.check_k(self.k)
            self.steps.append(f"n={node.trigraph.n}: {node.iface.r}x{node.iface.s} join {node.iface.describe()}")
            found = _early_exit(weights, node, self.c)
            if found is not None:
                X, Y, kind = found
                return self.certify(_union(teams, X), _union(teams, Y), kind, "early-exit")
            contraction = contract_k_join(weights, node)
            teams = tuple(_union(teams, U) for U in contraction.preimage)
            weights = contraction.weights
            node = contraction.tree
            self.contractions += 1
            if self.verify_steps:
                ok, violation = verify_simple_model(self.T0, self.w0, node.trigraph, weights, teams)
                if not ok:
                    raise InvariantBroken(f"k-join contraction is not a model: {violation}")
                if not is_c_balanced(weights, self.c):
                    raise InvariantBroken(f"k-join contraction is not {self.c}-balanced")
        b = _leaf_biclique(node, weights, self.c * self.k, self.oracle)
        return self.certify(_union(teams, b.x), _union(teams, b.y), b.kind, "leaf-oracle")


def _check_ratio(c: Fraction, k: int) -> None:
    if k < 1:
        raise PreconditionViolation(f"k must be positive, got {k}")
    if not 0 < c < Fraction(1, 2) or 2 * c * k >= 1:
        raise PreconditionViolation(f"need 0 < c < 1/2 and 2ck < 1, got c={c}, k={k}")


def extract_biclique_kjoin(tree: CompositionTree, w0: Sequence[int], c: Fraction, k: int,
                           oracle: BicliqueOracle, verify_steps: bool = True) -> Extraction:
    """Biclique or complement biclique of weight at least c * w0(T0)."""
    _check_ratio(c, k)
    T0 = tree.trigraph
    if len(w0) != T0.n or any(x < 0 for x in w0):
        raise PreconditionViolation(f"need {T0.n} non-negative weights")
    if first_strong_pair(T0) is None:
        raise PreconditionViolation("the trigraph has no strong edge and no strong antiedge")
    if not is_c_balanced(w0, c):
        raise PreconditionViolation(f"the weight is not {c}-balanced")
    return _KExtractor(T0, tuple(w0), c, k, oracle, verify_steps).run(tree)


def kjoin_corollary_biclique(tree: CompositionTree, c: Fraction, k: int, oracle: BicliqueOracle,
                             verify_steps: bool = True) -> Extraction:
    """Unit weights: a biclique of size at least c * n."""
    _check_ratio(c, k)
    T0 = tree.trigraph
    if c.numerator * T0.n < c.denominator:
        b = first_strong_pair(T0)
        if b is None:
            raise PreconditionViolation("the trigraph has no strong edge and no strong antiedge")
        return Extraction(b, "strong-pair", [f"n={T0.n} < 1/c: first strong pair"])
    return extract_biclique_kjoin(tree, [1] * T0.n, c, k, oracle, verify_steps)

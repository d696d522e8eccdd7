"""Oracles consulted at the leaves of closure pipelines.

Biclique oracles take (G, weights, ratio) and return a biclique or
complement biclique; the callers validate every answer. Separator
oracles take G and return a CS-separator.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional, Sequence

from .basic import is_bipartite_trigraph
from .config import BASIC_CAP
from .cs_builder import build_cs_separator
from .errors import PreconditionViolation, check_cap
from .separation import CSSeparator, all_cuts
from .trigraph import Trigraph, lowest, members
from .weights import Biclique, BicliqueKind, biclique_weight

logger = logging.getLogger(__name__)


def best_biclique(T: Trigraph, real: Optional[Sequence[int]] = None,
                  cap: Optional[int] = BASIC_CAP) -> Optional[Biclique]:
    """Heaviest biclique or complement biclique by exhaustive search.

    For every non-empty X the best partner is the common strong
    neighbourhood (or strong non-neighbourhood) of X; ties keep the first
    X in increasing mask order, complete before anticomplete.
    """
    check_cap("exhaustive biclique search (n)", T.n, cap)
    everything = T.vertex_mask
    common_strong = [everything] + [0] * ((1 << T.n) - 1)
    common_anti = [everything] + [0] * ((1 << T.n) - 1)
    best: Optional[Biclique] = None
    for X in range(1, 1 << T.n):
        v = lowest(X)
        rest = X & (X - 1)
        common_strong[X] = common_strong[rest] & T.strong[v]
        common_anti[X] = common_anti[rest] & T.strong_anti[v]
        for kind, Y in ((BicliqueKind.COMPLETE, common_strong[X]), (BicliqueKind.ANTICOMPLETE, common_anti[X])):
            if not Y:
                continue
            weight = biclique_weight(X, Y, real)
            if best is None or weight > best.weight:
                best = Biclique(X, Y, kind, weight)
    return best


def exhaustive_biclique_oracle(G: Trigraph, weights: Sequence[int], ratio: Fraction) -> Biclique:
    best = best_biclique(G, weights)
    if best is None:
        raise PreconditionViolation(f"no strong edge or strong antiedge on {G.n} vertices")
    return best


def bipartite_biclique_oracle(G: Trigraph, weights: Sequence[int], ratio: Fraction) -> Biclique:
    """Split the heavier colour class of a bipartite graph greedily, in
    index order, until the first part reaches `ratio` of the total."""
    parts = is_bipartite_trigraph(G)
    if parts is None:
        raise PreconditionViolation("the bipartite oracle needs a bipartite graph")
    total = sum(weights)
    heavy = max(parts, key=lambda part: sum(weights[v] for v in members(part)))
    X = 0
    for v in members(heavy):
        X |= 1 << v
        if ratio.denominator * sum(weights[u] for u in members(X)) >= ratio.numerator * total:
            break
    Y = heavy & ~X
    logger.debug("bipartite oracle split %s / %s", members(X), members(Y))
    return Biclique(X, Y, BicliqueKind.ANTICOMPLETE, biclique_weight(X, Y, weights))


def all_cuts_oracle(G: Trigraph) -> CSSeparator:
    return all_cuts(G)


def pipeline_separator_oracle(G: Trigraph) -> CSSeparator:
    """Separator from the decomposition pipeline (class F, no balanced
    skew-partition)."""
    return build_cs_separator(G)


BICLIQUE_ORACLES = {
    "exhaustive": exhaustive_biclique_oracle,
    "bipartite": bipartite_biclique_oracle,
}

SEPARATOR_ORACLES = {
    "all-cuts": all_cuts_oracle,
    "pipeline": pipeline_separator_oracle,
}

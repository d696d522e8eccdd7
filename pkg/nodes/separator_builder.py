"""Node: CS-Separator Construction (2-join trees and k-join closures)"""

from dataclasses import asdict

from core.config import P0
from core.cs_builder import separator_for_tree
from core.errors import InvariantBroken, PreconditionViolation, TrigraphError
from core.kjoin import build_closure_separator
from core.oracles import SEPARATOR_ORACLES
from core.state import PipelineState, SeparatorSummary
from utils.formats import dump_separator
from .common import note, option, record_error


def build_separator_node(state: PipelineState) -> PipelineState:
    """
    Leaf families recombined up the decomposition tree; the separator size
    must equal the sum of the leaf family sizes before deduplication
    """
    try:
        sizes = []
        F = separator_for_tree(state["tree"], sizes)
        leaf_total = sum(s.size for s in sizes)
        if len(F) != leaf_total:
            raise InvariantBroken(f"separator size {len(F)} differs from the leaf total {leaf_total}")
    except TrigraphError as e:
        return record_error(state, "build separator", e)

    deduplicate = option(state, "deduplicate", False)
    if deduplicate:
        F = F.deduplicated()
    state["separator"] = F
    state["separator_summary"] = SeparatorSummary(
        size=len(F),
        leaves=[asdict(s) for s in sizes],
        leaf_total=leaf_total,
        deduplicated=deduplicate,
        verified=None,
    )
    state["output"] = dump_separator(F)
    return note(state, f"✅ Built separator of {len(F)} cuts from {len(sizes)} leaf families")


def kjoin_separator_node(state: PipelineState) -> PipelineState:
    """
    Separator of a k-join closure instance: all cuts at small leaves,
    product separators of the oracle's family elsewhere
    """
    name = option(state, "oracle", "all-cuts")
    try:
        if name not in SEPARATOR_ORACLES:
            raise PreconditionViolation(f"unknown separator oracle {name!r}; "
                                        f"choose from {', '.join(sorted(SEPARATOR_ORACLES))}")
        F = build_closure_separator(state["kjoin_tree"], SEPARATOR_ORACLES[name],
                                    option(state, "k", 2), p0=option(state, "p0", P0))
    except TrigraphError as e:
        return record_error(state, "k-join separator", e)

    state["separator"] = F
    state["separator_summary"] = SeparatorSummary(
        size=len(F), leaves=[], leaf_total=0, deduplicated=False, verified=None)
    state["output"] = dump_separator(F)
    return note(state, f"✅ Built k-join closure separator of {len(F)} cuts with the {name} oracle")

"""Node: 2-Join Decomposition"""

from collections import Counter

from core.decomposition import Leaf, decompose_tree, leaves, region_split_finder
from core.errors import TrigraphError
from core.state import PipelineState
from utils.formats import dump_decomposition
from .common import note, option, record_error


def count_nodes(tree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + sum(count_nodes(child) for _, child in tree.children)


def decompose_node(state: PipelineState) -> PipelineState:
    """
    Decompose along 2-joins and complement 2-joins down to basic leaves.
    Region hints from the input file drive the split search when enabled.
    """
    regions = state.get("regions") or []
    finder = region_split_finder(regions) if option(state, "hinted", True) and regions else None
    try:
        tree = decompose_tree(
            state["trigraph"],
            mode=option(state, "mode", "both"),
            base_threshold=option(state, "base_threshold"),
            split_finder=finder,
            check_preconditions=False,
        )
    except TrigraphError as e:
        return record_error(state, "decompose", e)

    state["tree"] = tree
    if state["command"] == "decompose":
        state["output"] = dump_decomposition(tree) + "\n"
    kinds = Counter(leaf.certificate.kind.value for leaf in leaves(tree))
    summary = ", ".join(f"{count} {kind}" for kind, count in sorted(kinds.items()))
    return note(state, f"✅ Decomposed into {count_nodes(tree)} 2-joins and {sum(kinds.values())} leaves ({summary})")

"""Node: Input Loading"""

from core.errors import TrigraphError
from core.state import PipelineState
from utils.formats import load_separator, load_trigraph
from .common import note, record_error


def load_node(state: PipelineState) -> PipelineState:
    """
    Read the trigraph file, with its weights and region hints if present
    """
    try:
        parsed = load_trigraph(state["input_path"])
    except TrigraphError as e:
        return record_error(state, "load", e)

    T = parsed.trigraph
    state["trigraph"] = T
    state["weights"] = parsed.weights
    state["regions"] = list(parsed.regions)
    extras = []
    if parsed.weights is not None:
        extras.append("weights")
    if parsed.regions:
        extras.append(f"{len(parsed.regions)} region hints")
    suffix = f" with {' and '.join(extras)}" if extras else ""
    return note(state, f"✅ Loaded trigraph n={T.n}, |σ|={len(T.switchable_pairs())}{suffix}")


def load_separator_node(state: PipelineState) -> PipelineState:
    """
    Read a separator file for verification against the loaded trigraph
    """
    try:
        F = load_separator(state["separator_path"])
    except TrigraphError as e:
        return record_error(state, "load separator", e)

    state["separator"] = F
    state["separator_summary"] = {
        "size": len(F),
        "leaves": [],
        "leaf_total": 0,
        "deduplicated": False,
        "verified": None,
    }
    return note(state, f"✅ Loaded separator of {len(F)} cuts over {F.n} vertices")

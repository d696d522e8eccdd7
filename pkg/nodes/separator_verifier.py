"""Node: CS-Separator Verification"""

from core.config import CLIQUE_CAP
from core.errors import TrigraphError, VerificationFailure
from core.separation import verify_cs_separator
from core.state import PipelineState
from core.trigraph import members
from .common import note, record_error


def verify_separator_node(state: PipelineState) -> PipelineState:
    """
    Exhaustive check that every disjoint (clique, stable set) pair is cut
    """
    T, F = state["trigraph"], state["separator"]
    try:
        ok, counterexample = verify_cs_separator(T, F, cap=CLIQUE_CAP)
        state["verified"] = ok
        if state.get("separator_summary"):
            state["separator_summary"]["verified"] = ok
        if not ok:
            K, S = counterexample
            raise VerificationFailure(f"clique {list(members(K))} and stable set {list(members(S))} "
                                      f"are not separated", counterexample=(members(K), members(S)))
    except TrigraphError as e:
        return record_error(state, "verify separator", e)

    return note(state, f"✅ Verified: all (clique, stable set) pairs of n={T.n} are separated by {len(F)} cuts")

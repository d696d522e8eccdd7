"""Node: Report Assembly"""

from collections import Counter

from core.decomposition import leaves
from core.kjoin import tree_leaves
from core.state import PipelineState
from utils.reporting import biclique_summary, size_accounting
from .common import note
from .decomposer import count_nodes


def report_node(state: PipelineState) -> PipelineState:
    """
    Collect the results of the stages that ran into one JSON-friendly record
    """
    if state.get("exit_code") is None:
        state["exit_code"] = 0

    report = {
        "command": state["command"],
        "input": state.get("input_path") or None,
        "recipe": state.get("recipe") or None,
        "seed": state.get("seed"),
        "exit_code": state["exit_code"],
        "error": state.get("error"),
        "errors": state.get("errors", []),
    }

    if state.get("check"):
        report["check"] = state["check"]

    tree = state.get("tree")
    if tree is not None:
        kinds = Counter(leaf.certificate.kind.value for leaf in leaves(tree))
        report["decomposition"] = {
            "nodes": count_nodes(tree),
            "leaves": sum(kinds.values()),
            "leaf_kinds": dict(kinds),
        }

    summary = state.get("separator_summary")
    if summary:
        report["separator"] = {**summary}
        if summary["leaves"]:
            report["separator"]["accounting"] = size_accounting(
                summary["leaves"], summary["leaf_total"] if summary["deduplicated"] else summary["size"])

    extraction = state.get("extraction")
    if extraction is not None:
        T = state["trigraph"]
        weights = state.get("weights") if state.get("options", {}).get("use_weights") else None
        b = biclique_summary(extraction.biclique, T.n, weights.total if weights is not None else None)
        b.update(exit=extraction.exit, contractions=extraction.contractions,
                 steps=extraction.steps, verified=state.get("verified"))
        report["biclique"] = b

    kjoin_tree = state.get("kjoin_tree")
    if kjoin_tree is not None:
        report["composition"] = {
            "k": state.get("options", {}).get("k", 2),
            "n": kjoin_tree.trigraph.n,
            "leaves": len(tree_leaves(kjoin_tree)),
        }

    instance = state.get("generated")
    if instance is not None and state["command"] == "gen":
        report["generated"] = {
            "n": instance.trigraph.n,
            "joins": len(instance.truth.joins),
            "leaves": len(instance.truth.leaves),
            "regions": len(instance.truth.regions),
            "checks": instance.truth.checks,
        }

    if state.get("counterexample"):
        report["counterexample"] = state["counterexample"]

    state["report"] = report
    status = "✅ Pipeline finished" if state["exit_code"] == 0 else f"⚠️ Pipeline stopped with exit code {state['exit_code']}"
    return note(state, status)

"""
🔺 LangGraph Orchestrator for the Trigraph Pipeline

One workflow per command, all ending in the report node:
check · decompose · cssep build/verify · biclique · kjoin compose/cssep/biclique · gen
"""

from datetime import datetime
from typing import Optional

from langgraph.checkpoint.memory import MemorySaver
from langgraph.checkpoint.serde.jsonplus import JsonPlusSerializer
from langgraph.graph import END, StateGraph

from core.config import PIPELINE_PROJECT, get_pipeline_config
from core.state import PipelineOptions, PipelineState
from nodes import (
    build_separator_node,
    check_class_node,
    compose_kjoin_node,
    decompose_node,
    extract_biclique_node,
    generate_node,
    kjoin_biclique_node,
    kjoin_separator_node,
    load_node,
    load_separator_node,
    report_node,
    verify_separator_node,
)

NODES = {
    "load": load_node,
    "load_separator": load_separator_node,
    "check_class": check_class_node,
    "decompose": decompose_node,
    "build_separator": build_separator_node,
    "verify_separator": verify_separator_node,
    "extract_biclique": extract_biclique_node,
    "compose_kjoin": compose_kjoin_node,
    "kjoin_separator": kjoin_separator_node,
    "kjoin_biclique": kjoin_biclique_node,
    "generate": generate_node,
}

# Stages per command; every workflow ends in "report"
PIPELINES = {
    "check": ["load", "check_class"],
    "decompose": ["load", "check_class", "decompose"],
    "cssep-build": ["load", "check_class", "decompose", "build_separator", "verify_separator"],
    "cssep-verify": ["load", "load_separator", "verify_separator"],
    "biclique": ["load", "check_class", "extract_biclique"],
    "kjoin-compose": ["compose_kjoin"],
    "kjoin-cssep": ["compose_kjoin", "kjoin_separator", "verify_separator"],
    "kjoin-biclique": ["compose_kjoin", "kjoin_biclique"],
    "gen": ["generate"],
}


def _next_or_report(next_stage: str):
    def route(state: PipelineState) -> str:
        return "report" if state.get("exit_code") is not None else next_stage
    return route


def create_pipeline_graph(command: str) -> StateGraph:
    """
    Create the LangGraph workflow for one command

    Stages run in order; a stage that records an error (exit_code set)
    sends the state straight to the report node.
    """
    if command not in PIPELINES:
        raise ValueError(f"Unsupported command: {command}")
    stages = PIPELINES[command]
    workflow = StateGraph(PipelineState)

    for name in stages:
        workflow.add_node(name, NODES[name])
    workflow.add_node("report", report_node)

    workflow.set_entry_point(stages[0])
    for current, following in zip(stages, stages[1:] + ["report"]):
        if following == "report":
            workflow.add_edge(current, "report")
        else:
            workflow.add_conditional_edges(current, _next_or_report(following),
                                           {following: following, "report": "report"})
    workflow.add_edge("report", END)

    return workflow


def run_pipeline(command: str, input_path: str = "", separator_path: str = "", output_path: str = "",
                 recipe: str = "", seed: int = 0, options: Optional[PipelineOptions] = None) -> dict:
    """
    🚀 Main entry point to run one command through its workflow

    Args:
        command: one of PIPELINES (check, decompose, cssep-build, ...)
        input_path: trigraph file for the file-based commands
        separator_path: separator file for cssep-verify
        output_path: where the CLI writes state["output"]
        recipe: recipe term for gen and the kjoin commands
        seed: generator seed
        options: PipelineOptions

    Returns:
        Final pipeline state
    """
    workflow = create_pipeline_graph(command)
    # trigraphs and trees in state are not msgpack-serializable
    memory = MemorySaver(serde=JsonPlusSerializer(pickle_fallback=True))
    app = workflow.compile(checkpointer=memory)

    initial_state = {
        "command": command,
        "input_path": input_path,
        "separator_path": separator_path,
        "output_path": output_path,
        "recipe": recipe,
        "seed": seed,
        "options": dict(options or {}),
        "trigraph": None,
        "weights": None,
        "regions": [],
        "check": None,
        "tree": None,
        "separator": None,
        "separator_summary": None,
        "verified": None,
        "counterexample": None,
        "extraction": None,
        "kjoin_tree": None,
        "generated": None,
        "messages": [],
        "errors": [],
        "exit_code": None,
        "error": None,
        "report": {},
        "output": "",
    }

    pipeline_config = get_pipeline_config()
    config = {
        "configurable": {"thread_id": f"trigraph-{command}-{datetime.now().strftime('%Y%m%d-%H%M%S')}"},
        "run_name": f"{PIPELINE_PROJECT}-{command}",
        "tags": pipeline_config["tags"] + [command],
        "metadata": {
            **pipeline_config["metadata"],
            "input": input_path or recipe,
            "seed": seed,
            "timestamp": datetime.now().isoformat()
        }
    }

    return app.invoke(initial_state, config)


if __name__ == "__main__":
    print("🔺 Trigraph LangGraph Orchestrator")
    print("=" * 50)

    result = run_pipeline("gen", recipe="join2(odd, leaf(C6), join2(even, leaf(C8), leaf(C8)))", seed=7)

    print(f"✅ Exit code: {result['exit_code']}")
    for message in result["messages"]:
        print(message.content)

"""Shared helpers for the pipeline nodes"""

import logging
from typing import Any

from langchain_core.messages import AIMessage

from core.errors import ContradictionWitness, TrigraphError, VerificationFailure
from core.state import PipelineState

logger = logging.getLogger(__name__)


def option(state: PipelineState, name: str, default: Any = None) -> Any:
    value = (state.get("options") or {}).get(name)
    return default if value is None else value


def note(state: PipelineState, content: str) -> PipelineState:
    state["messages"] = state.get("messages", []) + [AIMessage(content=content)]
    return state


def record_error(state: PipelineState, step: str, error: TrigraphError) -> PipelineState:
    """Record a library error in state; the graph then routes to the report node"""
    logger.warning("%s failed (%s): %s", step, error.code, error.message)
    state["errors"] = state.get("errors", []) + [f"{step}: {error.message}"]
    state["exit_code"] = error.exit_code
    state["error"] = error.to_dict()
    if isinstance(error, VerificationFailure) and error.counterexample is not None:
        clique, stable = error.counterexample
        state["counterexample"] = {"clique": list(clique), "stable": list(stable)}
    if isinstance(error, ContradictionWitness):
        state["errors"] = state["errors"] + error.transcript
    return note(state, f"⚠️ {step} failed: {error.message}")

"""State definitions for LangGraph workflow"""

from typing import Any, Optional, TypedDict


class PipelineOptions(TypedDict, total=False):
    """Command options shared by the nodes"""
    c: str                    # "p/q" ratio for k-join bicliques
    k: int
    oracle: str               # biclique or separator oracle name
    p0: int
    deduplicate: bool
    base_threshold: Optional[int]
    use_weights: bool         # biclique: use the weights of the input file
    hinted: bool              # use region lines as split hints
    precheck: bool            # class F / balanced skew-partition preconditions
    verify_steps: bool
    mode: str                 # decomposition mode, "both" or "single"


class ClassReport(TypedDict):
    """Result of the check node"""
    n: int
    switchable_pairs: int
    class_F: Optional[bool]
    class_F_violation: Optional[str]
    berge: Optional[bool]
    odd_cycle: Optional[dict]
    balanced_skew_partition: Optional[dict]   # {"A": [...], "B": [...]} when one exists
    basic: str
    skipped: list[str]                        # checks over their cap


class SeparatorSummary(TypedDict):
    """Size accounting for a built or loaded separator"""
    size: int
    leaves: list[dict]
    leaf_total: int
    deduplicated: bool
    verified: Optional[bool]


class PipelineState(TypedDict):
    """Main state for the LangGraph workflow"""
    # Input
    command: str               # check, decompose, cssep-build, cssep-verify, biclique, kjoin-*, gen
    input_path: str
    separator_path: str
    output_path: str
    recipe: str
    seed: int
    options: PipelineOptions

    # Loaded input
    trigraph: Any              # core.trigraph.Trigraph
    weights: Any               # core.weights.WeightedTrigraph from the file, if any
    regions: list[int]         # recorded 2-join sides (vertex masks)

    # Processing stages
    check: Optional[ClassReport]
    tree: Any                  # decomposition tree
    separator: Any             # core.separation.CSSeparator
    separator_summary: Optional[SeparatorSummary]
    verified: Optional[bool]
    counterexample: Optional[dict]
    extraction: Any            # core.seh.Extraction
    kjoin_tree: Any            # composition tree
    generated: Any             # utils.generator.GeneratedInstance

    # Processing metadata
    messages: list
    errors: list[str]
    exit_code: Optional[int]
    error: Optional[dict]      # {"error", "exit_code", "message"}
    report: dict
    output: str                # text written to output_path (or printed)

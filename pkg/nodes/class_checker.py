"""Node: Class Check (class F, Berge, balanced skew-partition, basic class)"""

from core.basic import classify_basic, classify_polynomial
from core.config import BASIC_CAP, BERGE_CAP, BSP_CAP
from core.decomposition import find_balanced_skew_partition
from core.errors import BergeViolation, CapExceeded, ClassViolation, TrigraphError
from core.state import ClassReport, PipelineState
from core.trigraph import Trigraph, is_berge, is_in_class_F, members
from .common import note, option, record_error


def class_report(T: Trigraph) -> ClassReport:
    """Every check that fits under its cap; the others are listed in `skipped`"""
    report: ClassReport = {
        "n": T.n,
        "switchable_pairs": len(T.switchable_pairs()),
        "class_F": None,
        "class_F_violation": None,
        "berge": None,
        "odd_cycle": None,
        "balanced_skew_partition": None,
        "basic": "",
        "skipped": [],
    }
    if T.n <= BERGE_CAP:
        berge, witness = is_berge(T)
        report["berge"] = berge
        if witness is not None:
            report["odd_cycle"] = {"kind": witness.kind, "vertices": list(witness.vertices)}
        report["class_F"], report["class_F_violation"] = is_in_class_F(T)
    else:
        report["skipped"] += ["berge", "class_F"]

    if T.n <= BSP_CAP:
        bsp = find_balanced_skew_partition(T)
        if bsp is not None:
            report["balanced_skew_partition"] = {"A": list(members(bsp[0])), "B": list(members(bsp[1]))}
    else:
        report["skipped"].append("balanced_skew_partition")

    if T.n <= BASIC_CAP:
        report["basic"] = classify_basic(T).kind.value
    else:
        report["basic"] = classify_polynomial(T).kind.value
        report["skipped"].append("doubled")
    return report


def _enforce(report: ClassReport) -> None:
    """Decomposition preconditions: class F and no balanced skew-partition"""
    if report["berge"] is False:
        cycle = report["odd_cycle"]
        raise BergeViolation(f"trigraph is not Berge: odd {cycle['kind']} {cycle['vertices']}",
                             witness=tuple(cycle["vertices"]))
    if report["class_F"] is False:
        raise ClassViolation(f"trigraph is not in class F: {report['class_F_violation']}")
    if report["balanced_skew_partition"] is not None:
        bsp = report["balanced_skew_partition"]
        raise ClassViolation(f"trigraph has a balanced skew-partition A={bsp['A']} B={bsp['B']}")
    if "class_F" in report["skipped"]:
        raise CapExceeded("class F check (n)", report["n"], BERGE_CAP)
    if "balanced_skew_partition" in report["skipped"]:
        raise CapExceeded("balanced skew-partition search (n)", report["n"], BSP_CAP)


def check_class_node(state: PipelineState) -> PipelineState:
    """
    Report class membership; pipelines that decompose also enforce it
    unless the precheck is switched off
    """
    T = state["trigraph"]
    try:
        report = class_report(T)
        state["check"] = report
        if state["command"] != "check" and option(state, "precheck", True):
            _enforce(report)
    except TrigraphError as e:
        return record_error(state, "check", e)

    skipped = f" (skipped over cap: {', '.join(report['skipped'])})" if report["skipped"] else ""
    return note(state, f"✅ Checked n={T.n}: class F={report['class_F']}, "
                       f"balanced skew-partition={report['balanced_skew_partition'] is not None}, "
                       f"basic={report['basic']}{skipped}")

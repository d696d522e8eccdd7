"""Report generation utilities"""

import json
from datetime import datetime
from typing import Any, Dict, List, Optional

import pandas as pd

from core.trigraph import members
from core.weights import Biclique

LEAF_COLUMNS = ["path", "n", "kind", "method", "size"]


def leaf_size_table(leaves: List[Dict[str, Any]]) -> pd.DataFrame:
    """Per-leaf separator sizes, one row per leaf, plus nothing else"""
    return pd.DataFrame(leaves, columns=LEAF_COLUMNS)


def size_accounting(leaves: List[Dict[str, Any]], size: int) -> Dict[str, Any]:
    """Leaf totals by kind and whether they add up to the separator size"""
    table = leaf_size_table(leaves)
    by_kind = table.groupby("kind")["size"].sum().to_dict() if len(table) else {}
    leaf_total = int(table["size"].sum()) if len(table) else 0
    return {
        "size": size,
        "leaf_total": leaf_total,
        "additive": leaf_total == size,
        "by_kind": {kind: int(total) for kind, total in by_kind.items()},
    }


def biclique_summary(b: Biclique, n: int, total: Optional[int] = None) -> Dict[str, Any]:
    x, y = members(b.x), members(b.y)
    return {
        "kind": b.kind.value,
        "x": list(x),
        "y": list(y),
        "min_side": min(len(x), len(y)),
        "weight": b.weight,
        "n": n,
        "total_weight": total,
    }


def ground_truth_json(instance, indent: Optional[int] = 2) -> str:
    """Ground-truth record of a generated instance (no timestamp)"""
    truth = instance.truth
    record = {
        "generator": instance.version,
        "recipe": instance.recipe,
        "seed": instance.seed,
        "n": instance.trigraph.n,
        "k": instance.k,
        "regions": [list(members(region)) for region in truth.regions],
        "joins": truth.joins,
        "leaves": truth.leaves,
        "checks": truth.checks,
    }
    return json.dumps(record, indent=indent, ensure_ascii=False, sort_keys=True)


def _check_section(check: Dict[str, Any]) -> List[str]:
    lines = ["🔎 CLASS CHECK", "-" * 14]
    has_bsp = None
    if "balanced_skew_partition" not in check.get("skipped", []):
        has_bsp = check.get("balanced_skew_partition") is not None
    rows = [
        ("vertices", check.get("n")),
        ("switchable pairs", check.get("switchable_pairs")),
        ("Berge", check.get("berge")),
        ("class F", check.get("class_F")),
        ("balanced skew-partition", has_bsp),
        ("basic", check.get("basic")),
    ]
    table = pd.DataFrame(rows, columns=["property", "value"])
    table["value"] = table["value"].map(lambda v: "skipped (over cap)" if v is None else v)
    lines.append(table.to_string(index=False, header=False))
    if check.get("odd_cycle"):
        cycle = check["odd_cycle"]
        lines.append(f"Odd {cycle['kind']}: {cycle['vertices']}")
    if check.get("class_F_violation"):
        lines.append(f"Class F violation: {check['class_F_violation']}")
    if check.get("balanced_skew_partition"):
        bsp = check["balanced_skew_partition"]
        lines.append(f"Witness: A={bsp['A']} B={bsp['B']}")
    lines.append("")
    return lines


def _separator_section(summary: Dict[str, Any]) -> List[str]:
    lines = ["✂️ CS-SEPARATOR", "-" * 15, f"Cuts: {summary['size']}"]
    leaves = summary.get("leaves") or []
    if leaves:
        lines.append(leaf_size_table(leaves).to_string(index=False))
        lines.append(f"Leaf total: {summary['leaf_total']}")
    if summary.get("deduplicated"):
        lines.append("Duplicate cuts removed after accounting")
    lines.append(f"verified: {str(summary.get('verified')).lower()}")
    lines.append("")
    return lines


def _biclique_section(b: Dict[str, Any]) -> List[str]:
    lines = ["🔗 BICLIQUE", "-" * 11,
             f"{b['kind']} pair X={b['x']} Y={b['y']}",
             f"Smaller side: {b['min_side']} of n={b['n']}"]
    if b.get("total_weight") is not None:
        lines.append(f"Weight: {b['weight']} of {b['total_weight']}")
    lines.append(f"Found by: {b.get('exit')} after {b.get('contractions', 0)} contractions")
    lines.append(f"verified: {str(b.get('verified')).lower()}")
    lines.append("")
    return lines


def generate_report(report: Dict[str, Any]) -> str:
    """
    Generate a text report from the report record built by the report node
    """
    lines = []

    lines.append("=" * 70)
    lines.append(f"🔺 TRIGRAPH PIPELINE REPORT: {report.get('command', '')}")
    lines.append("=" * 70)
    if report.get("input"):
        lines.append(f"Input: {report['input']}")
    if report.get("recipe"):
        lines.append(f"Recipe: {report['recipe']} (seed {report.get('seed')})")
    lines.append("")

    if report.get("check"):
        lines += _check_section(report["check"])

    decomposition = report.get("decomposition")
    if decomposition:
        lines.append("🌳 DECOMPOSITION")
        lines.append("-" * 16)
        lines.append(f"Nodes: {decomposition['nodes']}  Leaves: {decomposition['leaves']}")
        for kind, count in sorted(decomposition["leaf_kinds"].items()):
            lines.append(f"  {kind}: {count}")
        lines.append("")

    if report.get("separator"):
        lines += _separator_section(report["separator"])

    if report.get("biclique"):
        lines += _biclique_section(report["biclique"])

    composition = report.get("composition")
    if composition:
        lines.append("🧩 K-JOIN COMPOSITION")
        lines.append("-" * 21)
        lines.append(f"k={composition['k']}  n={composition['n']}  leaves={composition['leaves']}")
        lines.append("")

    generated = report.get("generated")
    if generated:
        lines.append("🎲 GENERATED INSTANCE")
        lines.append("-" * 20)
        lines.append(f"n={generated['n']}  joins={generated['joins']}  leaves={generated['leaves']}")
        for name, value in generated["checks"].items():
            lines.append(f"  {name}: {'skipped (over cap)' if value is None else value}")
        lines.append("")

    if report.get("errors"):
        lines.append("⚠️ ERRORS")
        lines.append("-" * 9)
        for error in report["errors"]:
            lines.append(f"• {error}")
        lines.append("")

    lines.append("=" * 70)
    lines.append(f"Exit code: {report.get('exit_code', 0)}")
    lines.append("=" * 70)

    return "\n".join(lines)


def generate_json_report(report: Dict[str, Any]) -> str:
    """
    Generate JSON report
    """
    json_result = {"timestamp": datetime.now().isoformat(), **report}
    return json.dumps(json_result, indent=2, ensure_ascii=False, default=str)

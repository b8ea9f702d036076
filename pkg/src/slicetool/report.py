"""Deterministic artifacts: per-slice graph exports in text and JSON, and
the analysis report consumed by the CLI summary and the dashboard.

No artifact carries timestamps or machine identifiers; equal inputs must
produce byte-identical output everywhere.
"""

from __future__ import annotations

import json

from .assessment import SliceAssessment, WARNING_SCALE
from .slicer import Slice, SliceOptions
from .views import ViewGraph

LEVEL_ORDER = "FEDCBA"  # report rows run from most to least severe


def options_record(opts: SliceOptions) -> dict:
    return {
        "include_control": opts.include_control,
        "max_nodes": opts.max_nodes,
        "risk_filter": sorted(opts.risk_filter) if opts.risk_filter is not None else None,
        "time_budget_secs": opts.time_budget,
    }


def _json_bytes(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def export_slice_json(view: ViewGraph) -> str:
    nodes = []
    for node in view.sorted_nodes():
        labels = []
        for label in node.labels:
            rec = {"type": label.type, "category": label.category}
            if label.risk is not None:
                rec["risk"] = label.risk
            if label.strength is not None:
                rec["strength"] = label.strength
            labels.append(rec)
        labels.sort(key=lambda r: (r["type"], r["category"],
                                   r.get("risk", 0), r.get("strength", "")))
        nodes.append({"id": node.id, "text": node.text, "kind": node.kind,
                      "labels": labels})
    edges = [{"src": s, "dst": d, "kind": k} for s, d, k in view.sorted_edges()]
    return _json_bytes({"view": view.view, "nodes": nodes, "edges": edges})


def export_slice_text(slice_: Slice, view: ViewGraph,
                      assessment: SliceAssessment) -> str:
    header = (f"slice {slice_.id} source={slice_.source.call_site_sig.render()} "
              f"risk={assessment.risk} level={assessment.level.value}")
    lines = [header]
    for node in view.sorted_nodes():
        method = node.method.render() if node.method is not None else "-"
        lines.append(f"N{node.id} [{node.kind}] {method} {node.text}")
    for src, dst, kind in view.sorted_edges():
        lines.append(f"E {src} -> {dst} [{kind}]")
    return "\n".join(lines) + "\n"


def slice_record(slice_: Slice, assessment: SliceAssessment,
                 jimple: ViewGraph, java: ViewGraph,
                 data_category: str) -> dict:
    return {
        "id": slice_.id,
        "source_sig": slice_.source.call_site_sig.render(),
        "data_category": data_category,
        "risk": assessment.risk,
        "warning_level": assessment.level.value,
        "node_count_jimple": jimple.node_count(),
        "node_count_java": java.node_count(),
        "truncated": slice_.truncated,
        "timed_out": slice_.timed_out,
        "op_counts": {k: v for k, v in sorted(assessment.op_counts.items())},
        "pseudo_summary": {
            "present": assessment.pseudo_summary.present,
            "weakest_strength": assessment.pseudo_summary.weakest_strength,
        },
    }


def build_report(program_name: str, opts: SliceOptions,
                 slice_records: list[dict]) -> dict:
    ordered = sorted(slice_records,
                     key=lambda r: (LEVEL_ORDER.index(r["warning_level"]),
                                    r["risk"], r["source_sig"]))
    count_by_level = {level: 0 for level in WARNING_SCALE}
    count_by_risk: dict[str, int] = {}
    for rec in ordered:
        count_by_level[rec["warning_level"]] += 1
        key = str(rec["risk"])
        count_by_risk[key] = count_by_risk.get(key, 0) + 1
    return {
        "program_name": program_name,
        "options": options_record(opts),
        "slices": ordered,
        "totals": {
            "count_by_level": count_by_level,
            "count_by_risk": count_by_risk,
        },
    }


def report_json(report: dict) -> str:
    return _json_bytes(report)


def render_summary(report: dict) -> str:
    """Plain-text dashboard summary for the CLI."""
    totals = report["totals"]
    lines = [f"program: {report['program_name']}",
             f"slices: {len(report['slices'])}"]
    risk_bits = [f"risk {tier}: {count}"
                 for tier, count in sorted(totals["count_by_risk"].items())]
    lines.append("by risk:  " + ("  ".join(risk_bits) if risk_bits else "none"))
    level_bits = [f"{level}={totals['count_by_level'][level]}"
                  for level in "ABCDEF"]
    lines.append("by level: " + "  ".join(level_bits))
    if report["slices"]:
        lines.append("")
        lines.append(f"{'id':>3}  {'level':5}  {'risk':4}  {'nodes j/v':>9}  "
                     f"{'category':<22} source")
        for rec in report["slices"]:
            nodes = f"{rec['node_count_jimple']}/{rec['node_count_java']}"
            flags = ""
            if rec["truncated"]:
                flags += " [truncated]"
            if rec["timed_out"]:
                flags += " [timed out]"
            lines.append(f"{rec['id']:>3}  {rec['warning_level']:5}  "
                         f"{rec['risk']:<4}  {nodes:>9}  "
                         f"{rec['data_category']:<22} {rec['source_sig']}{flags}")
    return "\n".join(lines) + "\n"

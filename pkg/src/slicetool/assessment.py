"""Six-tier warning scale over the operations found in a slice.

Each slice is graded twice: by the risk tier of its source and by a letter
A-F derived from the processing operations reachable from that source.
Sharing outranks processing, which outranks string manipulation, so the
red tiers win whenever several row conditions hold at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .labeling import MethodLabel, PseudoSummary, grade_pseudonymization
from .slicer import Slice

COLLECTION = "collection"
STRING_MANIPULATION = "string_manipulation"
PROCESSING_STORAGE = "processing_storage"
THIRD_PARTY_SHARING = "third_party_sharing"
PSEUDONYMIZATION = "pseudonymization"

OPERATION_CLASSES = (
    COLLECTION, STRING_MANIPULATION, PROCESSING_STORAGE,
    THIRD_PARTY_SHARING, PSEUDONYMIZATION,
)


@dataclass(frozen=True)
class WarningLevel:
    value: str
    color: str
    message: str
    legal_note: str
    severity: str


_MINIMIZATION = "Possibility of data minimization (GDPR Article §4)."
_PROTECT_USAGE = ("Ensure data protection according to GDPR Article §25. "
                  "Document data usage for transparency.")
_PROTECT_SHARING = ("Ensure data protection according to GDPR Article §25. "
                    "Document data sharing for transparency.")

WARNING_SCALE: dict[str, WarningLevel] = {
    "A": WarningLevel("A", "green",
                      "Data collection, but no processing operations.",
                      _MINIMIZATION, "Very low privacy risk"),
    "B": WarningLevel("B", "green",
                      "Data collection and string manipulations, "
                      "but no other processing operations.",
                      _MINIMIZATION, "Low privacy risk"),
    "C": WarningLevel("C", "yellow",
                      "At least one data storage or processing operation.",
                      _PROTECT_USAGE, "Moderate privacy risk"),
    "D": WarningLevel("D", "yellow",
                      "Multiple data storage or processing operations.",
                      _PROTECT_USAGE, "Significant privacy risk"),
    "E": WarningLevel("E", "red",
                      "Data shared with third-party APIs at least once.",
                      _PROTECT_SHARING, "High privacy risk"),
    "F": WarningLevel("F", "red",
                      "Data shared with third-party APIs multiple times.",
                      _PROTECT_SHARING, "Very high privacy risk"),
}


@dataclass(frozen=True)
class SliceAssessment:
    slice_id: int
    risk: int
    level: WarningLevel
    op_counts: dict[str, int]
    pseudo_summary: PseudoSummary


def classify_node(node_id: int, method_labels: dict[int, MethodLabel],
                  category_map: dict[str, str]) -> Optional[str]:
    """Operation class of a node, via its library label; unlabeled nodes
    (including every non-invoke node) classify as nothing."""
    label = method_labels.get(node_id)
    if label is None:
        return None
    return category_map.get(label.entry.category)


def count_operations(slice_: Slice, method_labels: dict[int, MethodLabel],
                     category_map: dict[str, str]) -> dict[str, int]:
    """Operation counts over the slice's nodes, excluding the source node
    itself (which is collection by definition). Every call site counts
    individually."""
    counts: dict[str, int] = {}
    for node_id in slice_.node_ids:
        if node_id == slice_.source.node:
            continue
        op = classify_node(node_id, method_labels, category_map)
        if op is not None:
            counts[op] = counts.get(op, 0) + 1
    return counts


def assess(op_counts: dict[str, int]) -> WarningLevel:
    """The warning ladder, most severe condition first."""
    sharing = op_counts.get(THIRD_PARTY_SHARING, 0)
    processing = op_counts.get(PROCESSING_STORAGE, 0)
    string = op_counts.get(STRING_MANIPULATION, 0)
    if sharing >= 2:
        return WARNING_SCALE["F"]
    if sharing == 1:
        return WARNING_SCALE["E"]
    if processing >= 2:
        return WARNING_SCALE["D"]
    if processing == 1:
        return WARNING_SCALE["C"]
    if string >= 1:
        return WARNING_SCALE["B"]
    return WARNING_SCALE["A"]


def legal_note(level: WarningLevel) -> str:
    return level.legal_note


def assess_slice(slice_: Slice, method_labels: list[MethodLabel],
                 category_map: dict[str, str]) -> SliceAssessment:
    by_node = {l.node: l for l in method_labels}
    op_counts = count_operations(slice_, by_node, category_map)
    in_slice = [l for l in method_labels if l.node in slice_.node_set]
    return SliceAssessment(
        slice_id=slice_.id,
        risk=slice_.source.entry.risk,
        level=assess(op_counts),
        op_counts=op_counts,
        pseudo_summary=grade_pseudonymization(in_slice),
    )

"""Attach privacy semantics to graph nodes by matching the callees of
external invokes against the two datasets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .adg import Adg, external_invoke_nodes
from .datasets import IdentifierEntry, LibraryDataset, LibraryEntry
from .ir import MethodSig, Program


@dataclass(frozen=True)
class SourceLabel:
    node: int
    entry: IdentifierEntry
    call_site_sig: MethodSig


@dataclass(frozen=True)
class MethodLabel:
    node: int
    entry: LibraryEntry


@dataclass(frozen=True)
class PseudoSummary:
    present: bool
    weakest_strength: Optional[str] = None


def label_sources(adg: Adg, program: Program,
                  dataset: Iterable[IdentifierEntry]) -> list[SourceLabel]:
    """Match external call signatures against the identifier dataset.

    Exact signature matches win over wildcard entries; among wildcard
    entries the longest class prefix wins. Each node gets at most one label.
    """
    exact = {e.signature: e for e in dataset if e.class_prefix is None}
    wildcards = sorted((e for e in dataset if e.class_prefix is not None),
                       key=lambda e: len(e.class_prefix), reverse=True)
    labels: list[SourceLabel] = []
    for node, expr in external_invoke_nodes(adg, program):
        entry = exact.get(expr.callee)
        if entry is None:
            entry = next((e for e in wildcards if e.matches(expr.callee)), None)
        if entry is not None:
            labels.append(SourceLabel(node.id, entry, expr.callee))
    return labels


def label_privacy_methods(adg: Adg, program: Program,
                          libs: LibraryDataset) -> list[MethodLabel]:
    """Label every external invoke whose declaring class falls under a
    library prefix; the longest matching prefix wins."""
    by_length = sorted(libs.entries, key=lambda e: len(e.package_prefix), reverse=True)
    labels: list[MethodLabel] = []
    for node, expr in external_invoke_nodes(adg, program):
        entry = next((e for e in by_length if e.matches(expr.callee.declaring_class)),
                     None)
        if entry is not None:
            labels.append(MethodLabel(node.id, entry))
    return labels


def grade_pseudonymization(labels: Iterable[MethodLabel]) -> PseudoSummary:
    """Presence and weakest strength over the pseudonymization labels;
    a single weak technique drags the whole summary down to weak."""
    strengths = {l.entry.pseudo_strength for l in labels
                 if l.entry.category == "pseudonymization"}
    if not strengths:
        return PseudoSummary(present=False)
    return PseudoSummary(present=True,
                         weakest_strength="weak" if "weak" in strengths else "strong")

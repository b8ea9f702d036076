"""End-to-end analysis: parse, build the dependence graph, label sources,
slice, assess, and materialize both views of every slice. The CLI and the
HTTP API both run exactly this, which is what makes their reports
byte-identical."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .adg import Adg, build_adg
from .assessment import SliceAssessment, assess_slice
from .datasets import (IdentifierEntry, LibraryDataset, default_identifiers,
                       default_libraries)
from .ir import Program
from .labeling import (MethodLabel, SourceLabel, label_privacy_methods,
                       label_sources)
from .parser import parse_program
from .report import build_report, slice_record
from .slicer import Slice, SliceOptions, slice_all
from .views import ViewGraph, build_jimple_view, to_java_view


@dataclass
class SliceResult:
    slice: Slice
    assessment: SliceAssessment
    jimple: ViewGraph
    java: ViewGraph


@dataclass
class Analysis:
    program: Program
    adg: Adg
    source_labels: list[SourceLabel]
    method_labels: list[MethodLabel]
    results: list[SliceResult]
    report: dict
    diagnostics: list = field(default_factory=list)

    def result_by_id(self, slice_id: int) -> Optional[SliceResult]:
        for result in self.results:
            if result.slice.id == slice_id:
                return result
        return None


def analyze_source(text: str, program_name: str,
                   opts: Optional[SliceOptions] = None,
                   identifiers: Optional[list[IdentifierEntry]] = None,
                   libraries: Optional[LibraryDataset] = None) -> Analysis:
    opts = opts or SliceOptions()
    identifiers = identifiers if identifiers is not None else default_identifiers()
    libraries = libraries if libraries is not None else default_libraries()

    program = parse_program(text)
    adg = build_adg(program, include_control=opts.include_control)
    source_labels = label_sources(adg, program, identifiers)
    method_labels = label_privacy_methods(adg, program, libraries)

    results = []
    records = []
    for s in slice_all(adg, source_labels, opts):
        assessment = assess_slice(s, method_labels, libraries.category_map)
        jimple = build_jimple_view(s, adg, source_labels, method_labels)
        java = to_java_view(s, adg, program, source_labels, method_labels)
        results.append(SliceResult(s, assessment, jimple, java))
        records.append(slice_record(s, assessment, jimple, java,
                                    s.source.entry.data_category))
    report = build_report(program_name, opts, records)
    return Analysis(program, adg, source_labels, method_labels, results,
                    report, list(adg.diagnostics))

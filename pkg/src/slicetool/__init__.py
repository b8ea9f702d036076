"""Forward slicing of a Jimple-style IR from privacy-relevant data sources,
with six-tier risk grading and Jimple/Java slice views."""

from .adg import Adg, AdgEdge, AdgNode, build_adg, build_call_graph, dump_adg
from .assessment import (WARNING_SCALE, SliceAssessment, WarningLevel, assess,
                         classify_node, legal_note)
from .datasets import (IdentifierEntry, LibraryDataset, LibraryEntry,
                       default_identifiers, default_libraries,
                       load_identifier_dataset, load_library_dataset)
from .errors import (DatasetFormatError, SliceToolError, SlirSyntaxError,
                     SlirValidationError, UnknownSourceError,
                     UnsupportedStatementError)
from .ir import ClassDef, MethodDef, MethodSig, Program, Stmt, render_sig
from .labeling import (MethodLabel, SourceLabel, grade_pseudonymization,
                       label_privacy_methods, label_sources)
from .parser import parse_program, parse_sig
from .pipeline import Analysis, analyze_source
from .slicer import Slice, SliceOptions, forward_slice, slice_all
from .views import ViewGraph, build_jimple_view, render_java, to_java_view

__all__ = [
    "Adg", "AdgEdge", "AdgNode", "Analysis", "ClassDef", "DatasetFormatError",
    "IdentifierEntry", "LibraryDataset", "LibraryEntry", "MethodDef",
    "MethodLabel", "MethodSig", "Program", "Slice", "SliceAssessment",
    "SliceOptions", "SliceToolError", "SlirSyntaxError", "SlirValidationError",
    "SourceLabel", "Stmt", "UnknownSourceError", "UnsupportedStatementError",
    "ViewGraph", "WARNING_SCALE", "WarningLevel", "analyze_source", "assess",
    "build_adg", "build_call_graph", "build_jimple_view", "classify_node",
    "default_identifiers", "default_libraries", "dump_adg", "forward_slice",
    "grade_pseudonymization", "label_privacy_methods", "label_sources",
    "legal_note", "load_identifier_dataset", "load_library_dataset",
    "parse_program", "parse_sig", "render_java", "render_sig", "slice_all",
    "to_java_view",
]

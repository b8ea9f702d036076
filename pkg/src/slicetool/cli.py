"""Command-line entry point: batch analysis and the dashboard service."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .datasets import load_identifier_dataset, load_library_dataset
from .errors import SliceToolError
from .pipeline import analyze_source
from .report import export_slice_json, export_slice_text, render_summary, report_json
from .slicer import SliceOptions

EXIT_OK = 0
EXIT_ANALYSIS_ERROR = 1
EXIT_USAGE = 2


def _build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicetool",
        description="Slice a SLIR program forward from every privacy-relevant "
                    "data source and grade each slice on the A-F warning scale.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze one SLIR file")
    analyze.add_argument("input", help="SLIR source file")
    analyze.add_argument("--sources-dataset", metavar="P",
                         help="identifier dataset overriding the bundled one")
    analyze.add_argument("--libs-dataset", metavar="P",
                         help="library dataset overriding the bundled one")
    analyze.add_argument("--risk", metavar="TIERS",
                         help="comma-separated risk tiers to keep, e.g. 1,2")
    analyze.add_argument("--no-control-deps", action="store_true",
                         help="exclude control dependencies (thin slices)")
    analyze.add_argument("--timeout-secs", type=float, metavar="N",
                         help="total slicing time budget, split across sources")
    analyze.add_argument("--max-nodes", type=int, metavar="N",
                         help="cap the number of nodes per slice")
    analyze.add_argument("--view", choices=["jimple", "java", "both"],
                         default="both")
    analyze.add_argument("--format", choices=["json", "text", "both"],
                         default="json")
    analyze.add_argument("--out", metavar="DIR", default="slicetool-out",
                         help="output directory (default: slicetool-out)")

    serve = sub.add_parser("serve", help="serve the analysis HTTP API")
    serve.add_argument("--port", type=int, default=8734)
    serve.add_argument("--corpus", metavar="DIR", default="corpus",
                       help="directory of .slir programs to expose")
    return parser


def _parse_risk(text: str) -> frozenset[int]:
    try:
        tiers = frozenset(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise SliceToolError(f"--risk expects integers, got {text!r}") from None
    if not tiers:
        raise SliceToolError("--risk given but no tiers listed")
    return tiers


def _load_datasets(args):
    identifiers = libraries = None
    if args.sources_dataset:
        identifiers = load_identifier_dataset(
            Path(args.sources_dataset).read_text("utf-8"))
    if args.libs_dataset:
        libraries = load_library_dataset(Path(args.libs_dataset).read_text("utf-8"))
    return identifiers, libraries


def _run_analyze(args) -> int:
    input_path = Path(args.input)
    if not input_path.is_file():
        print(f"slicetool: file not found: {input_path}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.max_nodes is not None and args.max_nodes < 1:
            raise SliceToolError("--max-nodes must be >= 1")
        opts = SliceOptions(
            include_control=not args.no_control_deps,
            max_nodes=args.max_nodes,
            time_budget=args.timeout_secs,
            risk_filter=_parse_risk(args.risk) if args.risk else None,
        )
        identifiers, libraries = _load_datasets(args)
        analysis = analyze_source(input_path.read_text("utf-8"), input_path.name,
                                  opts, identifiers, libraries)
    except SliceToolError as exc:
        print(f"slicetool: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS_ERROR

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(report_json(analysis.report), "utf-8")

    views = {"jimple": ["jimple"], "java": ["java"], "both": ["jimple", "java"]}
    formats = {"json": ["json"], "text": ["text"], "both": ["json", "text"]}
    for result in analysis.results:
        for view_name in views[args.view]:
            view = result.jimple if view_name == "jimple" else result.java
            stem = f"slice_{result.slice.id}.{view_name}"
            if "json" in formats[args.format]:
                (out_dir / f"{stem}.json").write_text(export_slice_json(view), "utf-8")
            if "text" in formats[args.format]:
                (out_dir / f"{stem}.txt").write_text(
                    export_slice_text(result.slice, view, result.assessment), "utf-8")

    for method_sig, ordinal in analysis.diagnostics:
        print(f"warning: unreachable statement {ordinal} in {method_sig.render()}",
              file=sys.stderr)
    sys.stdout.write(render_summary(analysis.report))
    return EXIT_OK


def _run_serve(args) -> int:
    from .server import BindError, serve
    try:
        serve(port=args.port, corpus_dir=Path(args.corpus))
    except BindError as exc:
        print(f"slicetool: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS_ERROR
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_arg_parser().parse_args(argv)
    if args.command == "analyze":
        return _run_analyze(args)
    return _run_serve(args)


if __name__ == "__main__":
    sys.exit(main())

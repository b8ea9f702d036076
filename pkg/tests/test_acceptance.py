"""Acceptance suite: one test per acceptance criterion, each printing a
pass line. Run with `pytest tests/test_acceptance.py -v -s`."""

import itertools
import json
import subprocess
import sys
import time

import pytest

from conftest import (CORPUS_DIR, CORPUS_FILES, GOLDEN_DIR, control_dep_oracle,
                      corpus_text, data_dep_oracle, reachability_slice_oracle)
from slicetool.adg import CONTROL, HELPER_KINDS, VALUE_FLOW_KINDS, build_adg
from slicetool.assessment import (PROCESSING_STORAGE, STRING_MANIPULATION,
                                  THIRD_PARTY_SHARING, assess)
from slicetool.cfg import build_cfg
from slicetool.datasets import default_identifiers
from slicetool.deps import control_deps, data_deps
from slicetool.labeling import label_sources
from slicetool.parser import parse_program
from slicetool.pipeline import analyze_source
from slicetool.report import export_slice_json
from slicetool.slicer import SliceOptions, forward_slice, slice_all


def _passed(message: str):
    print(f"[PASS] {message}")


def test_criterion_source_detection(ground_truth):
    """Detected source labels match the corpus ground truth exactly and the
    whole corpus analyzes in under five seconds."""
    start = time.monotonic()
    mismatches = []
    expected_total = actual_total = 0
    for name in CORPUS_FILES:
        program = parse_program(corpus_text(name))
        adg = build_adg(program)
        labels = label_sources(adg, program, default_identifiers())
        actual = {(adg.by_id[l.node].method.render(), adg.by_id[l.node].stmt_ordinal,
                   l.call_site_sig.render(), l.entry.data_category, l.entry.risk)
                  for l in labels}
        expected = {(s["method"], s["ordinal"], s["callee"], s["category"],
                     s["risk"]) for s in ground_truth[name]["sources"]}
        expected_total += len(expected)
        actual_total += len(actual)
        if actual != expected:
            mismatches.append((name, actual ^ expected))
    elapsed = time.monotonic() - start
    assert not mismatches, mismatches
    assert elapsed < 5.0, f"corpus analysis took {elapsed:.2f}s"
    _passed(f"source detection: precision = recall = 100% "
            f"({actual_total} labels over {len(CORPUS_FILES)} programs, "
            f"{elapsed:.2f}s < 5s)")


def test_criterion_slice_oracle_equivalence():
    """Every slice equals an independent plain-reachability closure, for
    every corpus program, every source, both control-dependency settings."""
    checked = 0
    for name in CORPUS_FILES:
        program = parse_program(corpus_text(name))
        for include_control in (True, False):
            adg = build_adg(program, include_control=include_control)
            labels = label_sources(adg, program, default_identifiers())
            kinds = VALUE_FLOW_KINDS | ({CONTROL} if include_control else set())
            for label in labels:
                got = forward_slice(adg, label,
                                    SliceOptions(include_control=include_control))
                want = reachability_slice_oracle(adg, label.node, kinds)
                assert got.node_set == want, (name, include_control, label)
                checked += 1
    _passed(f"slice-oracle equivalence: {checked} slices, 0 mismatches")


def test_criterion_thin_slice_reduction(ground_truth):
    """Thin slices never exceed full slices, and on branchy.slir the thin
    slice is at most half the size of the full one."""
    for name in CORPUS_FILES:
        program = parse_program(corpus_text(name))
        adg = build_adg(program, include_control=True)
        labels = label_sources(adg, program, default_identifiers())
        for label in labels:
            full = forward_slice(adg, label, SliceOptions(include_control=True))
            thin = forward_slice(adg, label, SliceOptions(include_control=False))
            assert thin.node_set <= full.node_set, name
    program = parse_program(corpus_text("branchy.slir"))
    adg = build_adg(program, include_control=True)
    label = label_sources(adg, program, default_identifiers())[0]
    full = forward_slice(adg, label, SliceOptions(include_control=True))
    thin = forward_slice(adg, label, SliceOptions(include_control=False))
    assert 2 * len(thin.node_ids) <= len(full.node_ids)
    _passed(f"thin-slice reduction: thin subset everywhere; branchy "
            f"{len(thin.node_ids)}/{len(full.node_ids)} nodes <= 1/2")


def test_criterion_warning_ladder():
    """assess matches the 64-case transcription oracle and the four literal
    table rows."""
    def oracle(sharing, processing, string):
        if sharing >= 2:
            return "F"
        if sharing == 1:
            return "E"
        if processing >= 2:
            return "D"
        if processing == 1:
            return "C"
        if string >= 1:
            return "B"
        return "A"

    cases = 0
    for sharing, processing, string in itertools.product(range(4), repeat=3):
        counts = {THIRD_PARTY_SHARING: sharing, PROCESSING_STORAGE: processing,
                  STRING_MANIPULATION: string}
        assert assess(counts).value == oracle(sharing, processing, string)
        cases += 1
    assert assess({}).value == "A"
    assert assess({PROCESSING_STORAGE: 1}).value == "C"
    assert assess({THIRD_PARTY_SHARING: 1}).value == "E"
    assert assess({THIRD_PARTY_SHARING: 2}).value == "F"
    _passed(f"warning ladder: {cases}/64 oracle cases and 4 literal rows match")


def test_criterion_dependence_oracles():
    """Control and data dependences equal path-enumeration oracles on every
    corpus CFG, exactly."""
    methods = 0
    for name in CORPUS_FILES:
        program = parse_program(corpus_text(name))
        for method in program.methods():
            cfg = build_cfg(method)
            assert control_deps(cfg) == control_dep_oracle(cfg), method.sig.render()
            assert data_deps(method, cfg) == data_dep_oracle(method, cfg), \
                method.sig.render()
            methods += 1
    _passed(f"dependence oracles: control and data deps exact on {methods} methods")


def test_criterion_java_view():
    """Java views never grow, contain no helper nodes, preserve label
    multisets and data reachability; goldens are byte-stable."""
    slices = 0
    for name in CORPUS_FILES:
        analysis = analyze_source(corpus_text(name), name)
        for result in analysis.results:
            jimple, java = result.jimple, result.java
            assert java.node_count() <= jimple.node_count()
            assert all(n.kind not in HELPER_KINDS for n in java.nodes.values())
            jl = sorted((l.type, l.category) for n in jimple.nodes.values()
                        for l in n.labels)
            vl = sorted((l.type, l.category) for n in java.nodes.values()
                        for l in n.labels)
            assert jl == vl
            _assert_reachability_preserved(jimple, java)
            slices += 1
    for stem, sid in (("roidsec_like", 0), ("interproc", 0), ("latlike", 1)):
        analysis = analyze_source(corpus_text(f"{stem}.slir"), f"{stem}.slir")
        result = analysis.result_by_id(sid)
        for view_name, view in (("jimple", result.jimple), ("java", result.java)):
            golden = (GOLDEN_DIR / f"{stem}.slice{sid}.{view_name}.json").read_text()
            assert export_slice_json(view) == golden
    _passed(f"java view: {slices} slices shrink, stay helper-free, keep labels "
            f"and reachability; goldens byte-stable")


def _assert_reachability_preserved(jimple, java):
    def closure(graph):
        fwd = {}
        for s, d, _ in graph.edges:
            fwd.setdefault(s, set()).add(d)
        out = {}
        for start in graph.nodes:
            seen, stack = set(), [start]
            while stack:
                node = stack.pop()
                for nxt in fwd.get(node, ()):
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            out[start] = seen
        return out

    reach_j, reach_v = closure(jimple), closure(java)
    for a in jimple.nodes:
        if a not in java.nodes:
            continue
        for b in reach_j[a]:
            if b in java.nodes and b != a:
                assert b in reach_v[a]


def test_criterion_budgets():
    """max_nodes=5 caps every slice with correct truncation flags;
    time_budget=0 times every slice out while keeping the source."""
    capped = 0
    for name in CORPUS_FILES:
        program = parse_program(corpus_text(name))
        adg = build_adg(program)
        labels = label_sources(adg, program, default_identifiers())
        for label in labels:
            unbounded = forward_slice(adg, label, SliceOptions())
            bounded = forward_slice(adg, label, SliceOptions(max_nodes=5))
            assert len(bounded.node_ids) <= 5
            assert bounded.truncated == (len(unbounded.node_ids) > 5)
            capped += 1
        for s in slice_all(adg, labels, SliceOptions(time_budget=0.0)):
            assert s.timed_out and s.source.node in s.node_set
    _passed(f"budgets: max_nodes=5 holds on {capped} slices; "
            f"time_budget=0 flags all slices timed out with source retained")


def test_criterion_determinism(tmp_path):
    """Two CLI runs produce byte-identical trees; the API report equals the
    CLI report byte-for-byte."""
    trees = []
    for sub in ("one", "two"):
        out = tmp_path / sub
        proc = subprocess.run(
            [sys.executable, "-m", "slicetool.cli", "analyze",
             str(CORPUS_DIR / "roidsec_like.slir"), "--view", "both",
             "--format", "both", "--out", str(out)],
            capture_output=True, text=True)
        assert proc.returncode == 0
        trees.append({p.name: p.read_bytes() for p in out.iterdir()})
    assert trees[0] == trees[1]

    from slicetool.server import ApiServer
    server = ApiServer(port=0, corpus_dir=CORPUS_DIR)
    server.start()
    try:
        import urllib.request
        body = json.dumps({"corpus": "roidsec_like.slir"}).encode()
        request = urllib.request.Request(
            f"http://127.0.0.1:{server.port}/api/analyses", data=body,
            headers={"Content-Type": "application/json"}, method="POST")
        with urllib.request.urlopen(request) as resp:
            job_id = json.loads(resp.read())["id"]
        deadline = time.monotonic() + 10
        api_report = None
        while time.monotonic() < deadline:
            with urllib.request.urlopen(
                    f"http://127.0.0.1:{server.port}/api/analyses/{job_id}") as resp:
                text = resp.read().decode()
            if "slices" in json.loads(text):
                api_report = text
                break
            time.sleep(0.02)
    finally:
        server.stop()
    assert api_report is not None
    assert api_report.encode() == trees[0]["report.json"]
    _passed("determinism: CLI trees byte-identical; API report == CLI report")

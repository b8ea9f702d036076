"""Shared fixtures and the independent oracles the suite checks against.

The oracles deliberately avoid the library's algorithms: postdominance and
def-use reachability are decided by enumerating simple paths in the CFG,
and slices are recomputed with a plain depth-first closure over an edge
list. Corpus facts come from the hand-authored ground truth file.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from slicetool.cfg import EXIT, Cfg
from slicetool.deps import ENTRY
from slicetool.ir import MethodDef, stmt_defs, stmt_uses

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
GOLDEN_DIR = Path(__file__).resolve().parent / "goldens"

CORPUS_FILES = sorted(p.name for p in CORPUS_DIR.glob("*.slir"))


@pytest.fixture(scope="session")
def ground_truth() -> dict:
    return json.loads((CORPUS_DIR / "ground_truth.json").read_text())["programs"]


def corpus_text(name: str) -> str:
    return (CORPUS_DIR / name).read_text("utf-8")


# --- path-enumeration oracles ------------------------------------------------


def simple_paths(successors: dict[int, tuple[int, ...]], src: int, dst: int):
    """All simple paths src -> dst (nodes pairwise distinct)."""
    paths = []

    def walk(node, seen, acc):
        if node == dst:
            paths.append(acc + [node])
            return
        if node in seen or node == EXIT:
            return
        for nxt in successors.get(node, ()):
            walk(nxt, seen | {node}, acc + [node])

    walk(src, set(), [])
    return paths


def postdominates(cfg: Cfg, n: int, s: int) -> bool:
    """n postdominates s: every path s -> EXIT passes through n. A path
    avoiding n exists iff a simple path avoiding n exists, so enumerating
    simple paths decides this exactly."""
    if n == s:
        return True
    for path in simple_paths(cfg.successors, s, EXIT):
        if n not in path:
            return False
    return True


def control_dep_oracle(cfg: Cfg) -> set[tuple[int, int]]:
    """Control dependence from first principles: n depends on branch b iff
    one successor of b always reaches n (n postdominates it) and another
    successor may bypass n; statements depending on no branch hang off
    ENTRY."""
    branches = [b for b in cfg.reachable if len(set(cfg.successors[b])) >= 2]
    edges = set()
    for b in branches:
        for n in cfg.reachable:
            succ_results = []
            for s in cfg.successors[b]:
                if s == EXIT:
                    succ_results.append(False)
                else:
                    succ_results.append(postdominates(cfg, n, s))
            strictly_postdominates_b = n != b and postdominates(cfg, n, b)
            if any(succ_results) and not strictly_postdominates_b:
                edges.add((b, n))
    dependent = {n for _, n in edges}
    for n in cfg.reachable:
        if n not in dependent:
            edges.add((ENTRY, n))
    return edges


def data_dep_oracle(method: MethodDef, cfg: Cfg) -> set[tuple[int, int]]:
    """Def-use pairs by path enumeration: a definition of v at i reaches a
    use of v at j iff some CFG path i -> j has no intervening killing
    definition of v. Array-element writes define without killing."""
    defs: dict[int, set[tuple[str, bool]]] = {}
    uses: dict[int, set[str]] = {}
    for stmt in method.body:
        defs[stmt.ordinal] = set(stmt_defs(stmt))
        uses[stmt.ordinal] = stmt_uses(stmt)

    def kills(ordinal: int, name: str) -> bool:
        return any(d == name and killing for d, killing in defs[ordinal])

    edges = set()
    for i in cfg.reachable:
        for name, _ in defs[i]:
            for j in cfg.reachable:
                if j == i or name not in uses[j]:
                    continue
                for path in simple_paths(cfg.successors, i, j):
                    if not any(kills(mid, name) for mid in path[1:-1]):
                        edges.add((i, j))
                        break
    return edges


def reachability_slice_oracle(adg, source_node: int, kinds: frozenset) -> set[int]:
    """Slice membership by depth-first closure over the raw edge list."""
    forward: dict[int, list[int]] = {}
    for edge in adg.edges:
        if edge.kind in kinds:
            forward.setdefault(edge.src, []).append(edge.dst)
    seen: set[int] = set()
    stack = [source_node]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        stack.extend(forward.get(node, []))
    return seen

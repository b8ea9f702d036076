"""Slice view graphs.

The jimple view shows a slice's nodes with their raw IR text. The java view
shrinks it: parameter-passing helper nodes are removed with their neighbors
bridged, single-use stack temporaries are folded into their one consumer,
and every surviving statement is rendered as Java-like text. The result is
not compilable Java, but it reads like the code the IR came from.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .adg import CONTROL, HELPER_KINDS, KIND_STMT, Adg
from .errors import UnsupportedStatementError
from .ir import (ArrayRead, ArrayRef, BinExpr, FieldRead, FieldRef, ImmValue,
                 InvokeExpr, InvokeKind, LocalRef, MethodDef, MethodSig,
                 NewExpr, Program, Stmt, StmtKind, stmt_uses)
from .labeling import MethodLabel, SourceLabel
from .slicer import Slice

JIMPLE = "jimple"
JAVA = "java"

EDGE_DATA = "data"
EDGE_CONTROL_DATA = "control+data"


@dataclass(frozen=True)
class ViewLabel:
    type: str  # "source" | "method"
    category: str
    risk: Optional[int] = None
    strength: Optional[str] = None


@dataclass
class ViewNode:
    id: int
    text: str
    kind: str
    labels: list[ViewLabel] = field(default_factory=list)
    method: Optional[MethodSig] = None
    # statement bookkeeping used by temporary inlining
    defines: Optional[str] = None
    uses: frozenset[str] = frozenset()
    rhs_text: Optional[str] = None


@dataclass
class ViewGraph:
    view: str
    nodes: dict[int, ViewNode]
    edges: set[tuple[int, int, str]]  # (src, dst, view edge kind)

    def node_count(self) -> int:
        return len(self.nodes)

    def sorted_nodes(self) -> list[ViewNode]:
        return [self.nodes[i] for i in sorted(self.nodes)]

    def sorted_edges(self) -> list[tuple[int, int, str]]:
        return sorted(self.edges)


def _imm_java(imm) -> str:
    return imm.render()


def render_java(stmt: Stmt, method: MethodDef) -> str:
    """Java-like text for one statement; raises for statement kinds the
    mapping does not cover (none of which can appear in a slice)."""
    if stmt.kind is StmtKind.IDENTITY:
        if stmt.identity_index is None:
            return f"{method.sig.declaring_class} this"
        ptype = method.sig.param_types[stmt.identity_index]
        return f"{ptype} p{stmt.identity_index}"
    if stmt.kind is StmtKind.ASSIGN:
        return f"{_lvalue_java(stmt.lhs)} = {_rvalue_java(stmt.rhs)};"
    if stmt.kind is StmtKind.INVOKE:
        return f"{_rvalue_java(stmt.rhs)};"
    if stmt.kind is StmtKind.IF:
        return (f"if ({_imm_java(stmt.cond_left)} {stmt.cond_op} "
                f"{_imm_java(stmt.cond_right)})")
    if stmt.kind is StmtKind.RETURN:
        if stmt.ret_value is None:
            return "return;"
        return f"return {_imm_java(stmt.ret_value)};"
    raise UnsupportedStatementError(f"no Java rendering for {stmt.kind.value}")


def _lvalue_java(lv) -> str:
    if isinstance(lv, LocalRef):
        return lv.name
    if isinstance(lv, ArrayRef):
        return f"{lv.base}[{_imm_java(lv.index)}]"
    if isinstance(lv, FieldRef):
        return lv.render()
    raise UnsupportedStatementError(f"no Java rendering for lvalue {lv!r}")


def _rvalue_java(rv) -> str:
    if isinstance(rv, ImmValue):
        return _imm_java(rv.imm)
    if isinstance(rv, BinExpr):
        return f"{_imm_java(rv.left)} {rv.op} {_imm_java(rv.right)}"
    if isinstance(rv, InvokeExpr):
        args = ", ".join(_imm_java(a) for a in rv.args)
        if rv.kind is InvokeKind.VIRTUAL:
            return f"{rv.receiver}.{rv.callee.method_name}({args})"
        return f"{rv.callee.declaring_class}.{rv.callee.method_name}({args})"
    if isinstance(rv, FieldRead):
        return rv.ref.render()
    if isinstance(rv, ArrayRead):
        return rv.ref.render()
    if isinstance(rv, NewExpr):
        return f"new {rv.class_name}()"
    raise UnsupportedStatementError(f"no Java rendering for rvalue {rv!r}")


def _collapse_kind(kinds: set[str]) -> str:
    return EDGE_CONTROL_DATA if CONTROL in kinds else EDGE_DATA


def build_jimple_view(slice_: Slice, adg: Adg,
                      source_labels: list[SourceLabel],
                      method_labels: list[MethodLabel]) -> ViewGraph:
    """The slice as-is: IR text, helper nodes included, parallel edges
    between a node pair collapsed to one view edge."""
    labels = _labels_by_node(source_labels, method_labels)
    nodes: dict[int, ViewNode] = {}
    for node_id in slice_.node_ids:
        node = adg.by_id[node_id]
        nodes[node_id] = ViewNode(node_id, node.display_text, node.kind,
                                  labels=list(labels.get(node_id, [])),
                                  method=node.method)
    pair_kinds: dict[tuple[int, int], set[str]] = {}
    for src, dst, kind in slice_.edge_ids:
        pair_kinds.setdefault((src, dst), set()).add(kind)
    edges = {(src, dst, _collapse_kind(kinds))
             for (src, dst), kinds in pair_kinds.items()}
    return ViewGraph(JIMPLE, nodes, edges)


def _labels_by_node(source_labels, method_labels) -> dict[int, list[ViewLabel]]:
    out: dict[int, list[ViewLabel]] = {}
    for sl in source_labels:
        out.setdefault(sl.node, []).append(
            ViewLabel("source", sl.entry.data_category, risk=sl.entry.risk))
    for ml in method_labels:
        out.setdefault(ml.node, []).append(
            ViewLabel("method", ml.entry.category,
                      strength=ml.entry.pseudo_strength))
    return out


def strip_param_nodes(graph: ViewGraph) -> ViewGraph:
    """Remove helper-kind nodes; each removed node's predecessors are wired
    straight to its successors with data edges."""
    nodes = dict(graph.nodes)
    edges = set(graph.edges)
    for node_id in sorted(graph.nodes):
        if graph.nodes[node_id].kind not in HELPER_KINDS:
            continue
        preds = {(s, k) for s, d, k in edges if d == node_id}
        succs = {(d, k) for s, d, k in edges if s == node_id}
        edges = {(s, d, k) for s, d, k in edges if s != node_id and d != node_id}
        for s, _ in preds:
            for d, _ in succs:
                if s != d:
                    edges.add((s, d, EDGE_DATA))
        del nodes[node_id]
    return ViewGraph(graph.view, nodes, edges)


def inline_temporaries(graph: ViewGraph) -> ViewGraph:
    """Fold `$` temporaries defined once and used once into their consumer.

    The defining node's right-hand text replaces the temporary inside the
    consumer's text; the defining node disappears and its remaining edges
    and labels move to the consumer. Iterates to a fixpoint, visiting
    candidates in ascending node id order, bounded by the initial node
    count.
    """
    nodes = {i: _copy_node(n) for i, n in graph.nodes.items()}
    edges = set(graph.edges)
    for _ in range(max(1, len(nodes))):
        merged = False
        for def_id in sorted(nodes):
            node = nodes[def_id]
            temp = node.defines
            if (temp is None or not temp.startswith("$")
                    or node.rhs_text is None):
                continue
            definers = [i for i, n in nodes.items() if n.defines == temp]
            users = [i for i, n in nodes.items() if temp in n.uses and i != def_id]
            if len(definers) != 1 or len(users) != 1:
                continue
            use_id = users[0]
            if (def_id, use_id, EDGE_DATA) not in edges and \
               (def_id, use_id, EDGE_CONTROL_DATA) not in edges:
                continue
            user = nodes[use_id]
            user.text = _substitute(user.text, temp, node.rhs_text)
            if user.rhs_text is not None:
                user.rhs_text = _substitute(user.rhs_text, temp, node.rhs_text)
            user.uses = (user.uses - {temp}) | node.uses
            user.labels = user.labels + node.labels
            # rewire the defining node's other edges onto the consumer
            rewired = set()
            for s, d, k in edges:
                if s == def_id and d == use_id:
                    continue
                s = use_id if s == def_id else s
                d = use_id if d == def_id else d
                if s != d:
                    rewired.add((s, d, k))
            edges = rewired
            del nodes[def_id]
            merged = True
            break
        if not merged:
            break
    return ViewGraph(graph.view, nodes, edges)


def _copy_node(node: ViewNode) -> ViewNode:
    return ViewNode(node.id, node.text, node.kind, list(node.labels),
                    node.method, node.defines, node.uses, node.rhs_text)


def _substitute(text: str, temp: str, replacement: str) -> str:
    pattern = re.compile(re.escape(temp) + r"(?![A-Za-z0-9_$])")
    return pattern.sub(lambda _: replacement, text)


def to_java_view(slice_: Slice, adg: Adg, program: Program,
                 source_labels: list[SourceLabel],
                 method_labels: list[MethodLabel]) -> ViewGraph:
    """Compose the whole transformation: strip helpers, render statements
    as Java-like text, inline single-use temporaries."""
    jimple = build_jimple_view(slice_, adg, source_labels, method_labels)
    stripped = strip_param_nodes(jimple)
    for node_id, vnode in stripped.nodes.items():
        adg_node = adg.by_id[node_id]
        if adg_node.kind != KIND_STMT:
            continue
        method = program.index[adg_node.method]
        stmt = method.body[adg_node.stmt_ordinal]
        vnode.text = render_java(stmt, method)
        if stmt.kind is StmtKind.ASSIGN and isinstance(stmt.lhs, LocalRef):
            vnode.defines = stmt.lhs.name
            vnode.rhs_text = _rvalue_java(stmt.rhs)
        vnode.uses = frozenset(stmt_uses(stmt))
    out = inline_temporaries(stripped)
    out.view = JAVA
    return out

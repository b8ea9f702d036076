"""Application dependence graph: per-method statement and entry nodes wired
with data/control dependences, plus call, parameter-in and parameter-out
structure at internal call sites.

Goto statements never become nodes: they define and use nothing and nothing
is control-dependent on them, so their entire effect is already captured by
the control-flow graph the dependences are computed from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cfg import Cfg, build_cfg
from .deps import ENTRY, control_deps, data_deps, field_accesses, reaching_definitions
from .ir import (FieldRead, FieldRef, InvokeExpr, Local, LocalRef, MethodDef,
                 MethodSig, Program, Stmt, StmtKind, stmt_defs, stmt_uses)

KIND_ENTRY = "Entry"
KIND_STMT = "Stmt"
KIND_ACTUAL_IN = "ActualIn"
KIND_ACTUAL_OUT = "ActualOut"
KIND_FORMAL_IN = "FormalIn"
KIND_FORMAL_OUT = "FormalOut"

HELPER_KINDS = {KIND_ACTUAL_IN, KIND_ACTUAL_OUT, KIND_FORMAL_IN, KIND_FORMAL_OUT}

DATA = "Data"
CONTROL = "Control"
CALL = "Call"
PARAM_IN = "ParamIn"
PARAM_OUT = "ParamOut"

# edge kinds a forward slice follows regardless of the control toggle
VALUE_FLOW_KINDS = frozenset({DATA, CALL, PARAM_IN, PARAM_OUT})


@dataclass(frozen=True)
class AdgNode:
    id: int
    kind: str
    method: MethodSig
    display_text: str
    stmt_ordinal: Optional[int] = None
    index: Optional[int] = None  # argument / parameter index for helper kinds
    names: frozenset[str] = frozenset()  # storage locations this node touches


@dataclass(frozen=True)
class AdgEdge:
    src: int
    dst: int
    kind: str


@dataclass
class Adg:
    nodes: list[AdgNode]
    edges: list[AdgEdge]
    include_control: bool
    diagnostics: list[tuple[MethodSig, int]] = field(default_factory=list)

    def __post_init__(self):
        self.adjacency: dict[int, list[tuple[int, str]]] = {n.id: [] for n in self.nodes}
        for e in self.edges:
            self.adjacency[e.src].append((e.dst, e.kind))
        self.by_id = {n.id: n for n in self.nodes}
        self._stmt_index = {(n.method, n.stmt_ordinal): n.id
                            for n in self.nodes if n.kind == KIND_STMT}
        self._entry_index = {n.method: n.id for n in self.nodes if n.kind == KIND_ENTRY}

    def stmt_node(self, method: MethodSig, ordinal: int) -> int:
        return self._stmt_index[(method, ordinal)]

    def entry_node(self, method: MethodSig) -> int:
        return self._entry_index[method]


def _stmt_names(stmt: Stmt, local_types: dict[str, str]) -> frozenset[str]:
    names = {name for name, _ in stmt_defs(stmt)} | stmt_uses(stmt)
    if stmt.kind is StmtKind.IDENTITY and stmt.identity_index is not None:
        names.add(f"@parameter{stmt.identity_index}")
    if stmt.kind is StmtKind.RETURN and stmt.ret_value is not None:
        names.add("@return")
    if isinstance(stmt.lhs, FieldRef):
        names.add(_field_key(stmt.lhs, local_types))
    if isinstance(stmt.rhs, FieldRead):
        names.add(_field_key(stmt.rhs.ref, local_types))
    return frozenset(names)


def _field_key(ref: FieldRef, local_types: dict[str, str]) -> str:
    if ref.base_class is not None:
        return f"{ref.base_class}.{ref.field_name}"
    return f"{local_types.get(ref.base_local, ref.base_local)}.{ref.field_name}"


def build_call_graph(program: Program) -> dict[tuple[MethodSig, int], Optional[MethodSig]]:
    """Resolution for every call site: the callee's MethodDef signature for
    internal calls, None for external ones. Static and virtual invokes both
    resolve by exact signature match; there is no class-hierarchy walk."""
    resolution: dict[tuple[MethodSig, int], Optional[MethodSig]] = {}
    for method in program.methods():
        for stmt in method.body:
            expr = stmt.invoke_expr()
            if expr is None:
                continue
            resolved = expr.callee if expr.callee in program.index else None
            resolution[(method.sig, stmt.ordinal)] = resolved
    return resolution


def build_adg(program: Program, include_control: bool = True) -> Adg:
    nodes: list[AdgNode] = []
    edges: set[tuple[int, int, str]] = set()
    diagnostics: list[tuple[MethodSig, int]] = []

    cfgs: dict[MethodSig, Cfg] = {}
    entry_ids: dict[MethodSig, int] = {}
    stmt_ids: dict[tuple[MethodSig, int], int] = {}
    formal_in_ids: dict[tuple[MethodSig, int], int] = {}
    formal_out_ids: dict[MethodSig, int] = {}
    next_id = 0

    def add_node(kind: str, method: MethodSig, text: str, *, ordinal=None,
                 index=None, names=frozenset()) -> int:
        nonlocal next_id
        nodes.append(AdgNode(next_id, kind, method, text, stmt_ordinal=ordinal,
                             index=index, names=frozenset(names)))
        next_id += 1
        return next_id - 1

    # one pass to materialize per-method nodes in a canonical order
    for method in program.methods():
        sig = method.sig
        cfg = build_cfg(method)
        cfgs[sig] = cfg
        diagnostics.extend((sig, i) for i in cfg.unreachable)
        local_types = dict(method.locals)

        entry_ids[sig] = add_node(KIND_ENTRY, sig, f"entry {sig.render()}")
        for stmt in method.body:
            if stmt.ordinal not in cfg.reachable or stmt.kind is StmtKind.GOTO:
                continue
            stmt_ids[(sig, stmt.ordinal)] = add_node(
                KIND_STMT, sig, stmt.render(), ordinal=stmt.ordinal,
                names=_stmt_names(stmt, local_types))
        for stmt in method.body:
            if (stmt.kind is StmtKind.IDENTITY and stmt.identity_index is not None
                    and stmt.ordinal in cfg.reachable
                    and (sig, stmt.identity_index) not in formal_in_ids):
                k = stmt.identity_index
                formal_in_ids[(sig, k)] = add_node(
                    KIND_FORMAL_IN, sig, f"formal-in {k} (@parameter{k})",
                    index=k, names=frozenset({f"@parameter{k}"}))
        if any(s.kind is StmtKind.RETURN and s.ret_value is not None
               and s.ordinal in cfg.reachable for s in method.body):
            formal_out_ids[sig] = add_node(
                KIND_FORMAL_OUT, sig, "formal-out (@return)",
                names=frozenset({"@return"}))

    # intraprocedural dependences
    for method in program.methods():
        sig = method.sig
        cfg = cfgs[sig]
        for d, u in data_deps(method, cfg):
            if (sig, d) in stmt_ids and (sig, u) in stmt_ids:
                edges.add((stmt_ids[(sig, d)], stmt_ids[(sig, u)], DATA))
        if include_control:
            for b, n in control_deps(cfg):
                if (sig, n) not in stmt_ids:
                    continue
                src = entry_ids[sig] if b == ENTRY else stmt_ids.get((sig, b))
                if src is not None:
                    edges.add((src, stmt_ids[(sig, n)], CONTROL))
        # return value flows into the method's formal-out
        if sig in formal_out_ids:
            for stmt in method.body:
                if (stmt.kind is StmtKind.RETURN and stmt.ret_value is not None
                        and (sig, stmt.ordinal) in stmt_ids):
                    edges.add((stmt_ids[(sig, stmt.ordinal)], formal_out_ids[sig], DATA))
        # formal-in feeds the identity statement that binds the parameter
        for stmt in method.body:
            if (stmt.kind is StmtKind.IDENTITY and stmt.identity_index is not None
                    and (sig, stmt.ordinal) in stmt_ids):
                fin = formal_in_ids.get((sig, stmt.identity_index))
                if fin is not None:
                    edges.add((fin, stmt_ids[(sig, stmt.ordinal)], DATA))

    # field dependences: every write of a qualified field reaches every read
    writes: list[tuple[int, str]] = []
    reads: list[tuple[int, str]] = []
    for method in program.methods():
        w, r = field_accesses(method)
        for ordinal, fld in w.items():
            if (method.sig, ordinal) in stmt_ids:
                writes.append((stmt_ids[(method.sig, ordinal)], fld))
        for ordinal, fld in r.items():
            if (method.sig, ordinal) in stmt_ids:
                reads.append((stmt_ids[(method.sig, ordinal)], fld))
    for w_id, w_field in writes:
        for r_id, r_field in reads:
            if w_field == r_field and w_id != r_id:
                edges.add((w_id, r_id, DATA))

    # interprocedural structure at internal call sites
    call_graph = build_call_graph(program)
    internal_sites: set[int] = set()
    for method in program.methods():
        sig = method.sig
        cfg = cfgs[sig]
        for stmt in method.body:
            expr = stmt.invoke_expr()
            if expr is None or (sig, stmt.ordinal) not in stmt_ids:
                continue
            callee = call_graph[(sig, stmt.ordinal)]
            if callee is None:
                continue
            site_id = stmt_ids[(sig, stmt.ordinal)]
            internal_sites.add(site_id)
            edges.add((site_id, entry_ids[callee], CALL))
            reach = reaching_definitions(method, cfg)[stmt.ordinal]
            for k, arg in enumerate(expr.args):
                if not isinstance(arg, Local):
                    continue
                ai = add_node(KIND_ACTUAL_IN, sig, f"actual-in {k} ({arg.name})",
                              ordinal=None, index=k, names=frozenset({arg.name}))
                for name, d in reach:
                    if name == arg.name and (sig, d) in stmt_ids:
                        edges.add((stmt_ids[(sig, d)], ai, DATA))
                fin = formal_in_ids.get((callee, k))
                if fin is not None:
                    edges.add((ai, fin, PARAM_IN))
            if (stmt.kind is StmtKind.ASSIGN and isinstance(stmt.lhs, LocalRef)
                    and callee in formal_out_ids):
                ao = add_node(KIND_ACTUAL_OUT, sig, f"actual-out ({stmt.lhs.name})",
                              ordinal=None, names=frozenset({stmt.lhs.name}))
                edges.add((formal_out_ids[callee], ao, PARAM_OUT))
                edges.add((ao, site_id, DATA))

    edge_list = [AdgEdge(s, d, k) for s, d, k in
                 sorted(edges, key=lambda e: (e[0], e[1], e[2]))]
    adg = Adg(nodes, edge_list, include_control, diagnostics)
    adg.internal_call_sites = internal_sites
    return adg


def external_invoke_nodes(adg: Adg, program: Program) -> list[tuple[AdgNode, InvokeExpr]]:
    """Statement nodes whose call does not resolve inside the program."""
    out = []
    for node in adg.nodes:
        if node.kind != KIND_STMT:
            continue
        method = program.index[node.method]
        stmt = method.body[node.stmt_ordinal]
        expr = stmt.invoke_expr()
        if expr is not None and expr.callee not in program.index:
            out.append((node, expr))
    return out


def dump_adg(adg: Adg) -> str:
    """Text dump: one `N` line per node and one `E` line per edge, id-sorted."""
    lines = []
    for node in sorted(adg.nodes, key=lambda n: n.id):
        lines.append(f"N{node.id} [{node.kind}] {node.method.render()} {node.display_text}")
    for edge in sorted(adg.edges, key=lambda e: (e.src, e.dst, e.kind)):
        lines.append(f"E {edge.src} -> {edge.dst} [{edge.kind}]")
    return "\n".join(lines) + "\n"

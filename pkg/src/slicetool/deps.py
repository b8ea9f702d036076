"""Intraprocedural dependence computations: control dependence through
postdominators, data dependence through reaching definitions, and the
flow-insensitive field dependences that tie methods together."""

from __future__ import annotations

from .cfg import EXIT, Cfg, build_cfg
from .ir import (FieldRead, FieldRef, MethodDef, Program, StmtKind,
                 stmt_defs, stmt_uses)

ENTRY = -2


def postdominators(cfg: Cfg) -> dict[int, set[int]]:
    """pdom[n] = nodes on every path from n to EXIT (n included), computed
    by the standard iterate-to-fixpoint dataflow over reachable nodes."""
    nodes = set(cfg.reachable) | {EXIT}
    pdom: dict[int, set[int]] = {EXIT: {EXIT}}
    for node in cfg.reachable:
        pdom[node] = set(nodes)
    changed = True
    while changed:
        changed = False
        for node in sorted(cfg.reachable, reverse=True):
            succ_sets = [pdom[s] for s in cfg.successors[node] if s in pdom]
            new = {node} | set.intersection(*succ_sets) if succ_sets else {node}
            if new != pdom[node]:
                pdom[node] = new
                changed = True
    return pdom


def immediate_postdominator(node: int, pdom: dict[int, set[int]]) -> int | None:
    """The strict postdominator closest to `node`: the one every other
    strict postdominator of `node` also postdominates."""
    strict = pdom[node] - {node}
    for cand in strict:
        others = strict - {cand}
        if cand == EXIT:
            if not others:
                return cand
            continue
        if all(other in pdom[cand] for other in others):
            return cand
    return None


def control_deps(cfg: Cfg) -> set[tuple[int, int]]:
    """Edges (b, n): executing n is decided at branch b. Statements decided
    by no branch get an edge from the synthetic ENTRY.

    Uses the postdominator-tree walk: for each branch edge b -> s, every
    node from s up the tree to (excluding) ipdom(b) is control-dependent
    on b.
    """
    pdom = postdominators(cfg)
    ipdom = {n: immediate_postdominator(n, pdom) for n in pdom}
    edges: set[tuple[int, int]] = set()
    for b in cfg.reachable:
        if len(set(cfg.successors[b])) < 2:
            continue
        stop = ipdom[b]
        for s in cfg.successors[b]:
            runner = s
            while runner != stop and runner != EXIT:
                edges.add((b, runner))
                runner = ipdom[runner]
                if runner is None:
                    break
    dependent = {n for _, n in edges}
    for n in sorted(cfg.reachable):
        if n not in dependent:
            edges.add((ENTRY, n))
    return edges


def reaching_definitions(method: MethodDef, cfg: Cfg) -> dict[int, set[tuple[str, int]]]:
    """reach_in[i] = set of (local, def-site ordinal) reaching statement i.

    Definitions kill earlier definitions of the same local, except array
    element writes, which only update part of the array and therefore
    generate without killing.
    """
    gen: dict[int, set[tuple[str, int]]] = {}
    kill_names: dict[int, set[str]] = {}
    for stmt in method.body:
        i = stmt.ordinal
        gen[i] = {(name, i) for name, _ in stmt_defs(stmt)}
        kill_names[i] = {name for name, kills in stmt_defs(stmt) if kills}

    preds = cfg.predecessors()
    reach_in: dict[int, set[tuple[str, int]]] = {i: set() for i in cfg.reachable}
    reach_out: dict[int, set[tuple[str, int]]] = {i: set() for i in cfg.reachable}
    worklist = sorted(cfg.reachable)
    while worklist:
        i = worklist.pop(0)
        new_in: set[tuple[str, int]] = set()
        for p in preds.get(i, []):
            if p in cfg.reachable:
                new_in |= reach_out[p]
        new_out = gen[i] | {d for d in new_in if d[0] not in kill_names[i]}
        if new_in != reach_in[i] or new_out != reach_out[i]:
            reach_in[i] = new_in
            reach_out[i] = new_out
            for s in cfg.successors[i]:
                if s in cfg.reachable and s not in worklist:
                    worklist.append(s)
    return reach_in


def data_deps(method: MethodDef, cfg: Cfg | None = None) -> set[tuple[int, int]]:
    """Def-use edges (d, u) over locals; self-loops are dropped."""
    cfg = cfg or build_cfg(method)
    reach_in = reaching_definitions(method, cfg)
    edges: set[tuple[int, int]] = set()
    for stmt in method.body:
        u = stmt.ordinal
        if u not in cfg.reachable:
            continue
        used = stmt_uses(stmt)
        for name, d in reach_in[u]:
            if name in used and d != u:
                edges.add((d, u))
    return edges


def reaching_defs_of(method: MethodDef, cfg: Cfg, ordinal: int, local: str) -> set[int]:
    """Def sites of `local` that reach the statement at `ordinal`."""
    reach_in = reaching_definitions(method, cfg)
    return {d for name, d in reach_in.get(ordinal, set()) if name == local}


def _field_key(ref: FieldRef, local_types: dict[str, str]) -> str:
    """Qualified field name; instance accesses go through the declared type
    of the base local (the field-based heap abstraction)."""
    if ref.base_class is not None:
        return f"{ref.base_class}.{ref.field_name}"
    base_type = local_types.get(ref.base_local, ref.base_local)
    return f"{base_type}.{ref.field_name}"


def field_accesses(method: MethodDef) -> tuple[dict[int, str], dict[int, str]]:
    """(writes, reads): ordinal -> qualified field name."""
    writes: dict[int, str] = {}
    reads: dict[int, str] = {}
    local_types = dict(method.locals)
    for stmt in method.body:
        if stmt.kind is not StmtKind.ASSIGN:
            continue
        if isinstance(stmt.lhs, FieldRef):
            writes[stmt.ordinal] = _field_key(stmt.lhs, local_types)
        if isinstance(stmt.rhs, FieldRead):
            reads[stmt.ordinal] = _field_key(stmt.rhs.ref, local_types)
    return writes, reads


def field_deps(program: Program) -> set[tuple[tuple, tuple, str]]:
    """Cross-method field edges ((method, write-ordinal), (method, read-ordinal),
    field) connecting every write of a qualified field to every read of it."""
    writes: list[tuple[tuple, str]] = []
    reads: list[tuple[tuple, str]] = []
    for method in program.methods():
        w, r = field_accesses(method)
        for ordinal, field in w.items():
            writes.append(((method.sig, ordinal), field))
        for ordinal, field in r.items():
            reads.append(((method.sig, ordinal), field))
    edges = set()
    for (w_site, w_field) in writes:
        for (r_site, r_field) in reads:
            if w_field == r_field:
                edges.add((w_site, r_site, w_field))
    return edges

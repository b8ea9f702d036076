"""Intraprocedural control-flow graphs over statement indices.

Nodes are body positions 0..n-1 plus the synthetic EXIT. Return statements
flow to EXIT; a method whose body can fall off the end also flows to EXIT.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ir import MethodDef, StmtKind

EXIT = -1


@dataclass(frozen=True)
class Cfg:
    """Successor sets per statement index, plus entry/reachability facts."""

    size: int
    successors: dict[int, tuple[int, ...]]
    reachable: frozenset[int]
    unreachable: tuple[int, ...]

    def predecessors(self) -> dict[int, list[int]]:
        preds: dict[int, list[int]] = {i: [] for i in list(self.successors) + [EXIT]}
        for src, dsts in self.successors.items():
            for dst in dsts:
                preds[dst].append(src)
        return preds


def build_cfg(method: MethodDef) -> Cfg:
    """Successor table for a validated method body."""
    n = len(method.body)
    successors: dict[int, tuple[int, ...]] = {}
    for stmt in method.body:
        i = stmt.ordinal
        if stmt.kind is StmtKind.RETURN:
            successors[i] = (EXIT,)
        elif stmt.kind is StmtKind.GOTO:
            successors[i] = (method.labels[stmt.target],)
        elif stmt.kind is StmtKind.IF:
            fall = i + 1 if i + 1 < n else EXIT
            successors[i] = (fall, method.labels[stmt.target])
        else:
            successors[i] = (i + 1 if i + 1 < n else EXIT,)

    reachable: set[int] = set()
    if n:
        stack = [0]
        while stack:
            node = stack.pop()
            if node in reachable or node == EXIT:
                continue
            reachable.add(node)
            stack.extend(successors[node])
    unreachable = tuple(i for i in range(n) if i not in reachable)
    return Cfg(n, successors, frozenset(reachable), unreachable)

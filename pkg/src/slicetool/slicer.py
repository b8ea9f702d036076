"""Forward slicing over the dependence graph.

A slice is the breadth-first closure of a labeled source over value-flow
edges (data, call, parameter passing), plus control edges when enabled.
Neighbors are visited in ascending node id order, which makes discovery
order, truncation, and every downstream artifact deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .adg import CONTROL, VALUE_FLOW_KINDS, Adg
from .errors import UnknownSourceError
from .labeling import SourceLabel


@dataclass(frozen=True)
class SliceOptions:
    include_control: bool = True
    max_nodes: Optional[int] = None
    time_budget: Optional[float] = None  # seconds, shared across sources
    risk_filter: Optional[frozenset[int]] = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ValueError("max_nodes must be >= 1")
        if self.risk_filter is not None:
            object.__setattr__(self, "risk_filter", frozenset(self.risk_filter))


@dataclass
class Slice:
    source: SourceLabel
    node_ids: list[int]  # BFS discovery order
    edge_ids: list[tuple[int, int, str]]
    truncated: bool = False
    timed_out: bool = False
    id: int = 0

    @property
    def node_set(self) -> frozenset[int]:
        return frozenset(self.node_ids)


def _traversed_kinds(opts: SliceOptions) -> frozenset[str]:
    if opts.include_control:
        return VALUE_FLOW_KINDS | {CONTROL}
    return VALUE_FLOW_KINDS


def forward_slice(adg: Adg, source: SourceLabel, opts: SliceOptions,
                  time_budget: Optional[float] = None) -> Slice:
    """BFS closure from the source node. `time_budget` overrides the
    per-source share already computed by the caller."""
    if source.node not in adg.by_id:
        raise UnknownSourceError(f"node {source.node} is not in the graph")
    kinds = _traversed_kinds(opts)
    budget = time_budget if time_budget is not None else opts.time_budget
    deadline = None if budget is None else time.monotonic() + budget

    discovered: dict[int, None] = {source.node: None}
    queue = [source.node]
    truncated = False
    timed_out = False
    while queue:
        if deadline is not None and time.monotonic() >= deadline:
            timed_out = True
            break
        node = queue.pop(0)
        neighbors = sorted(dst for dst, kind in adg.adjacency[node] if kind in kinds)
        for dst in neighbors:
            if dst in discovered:
                continue
            if opts.max_nodes is not None and len(discovered) >= opts.max_nodes:
                truncated = True
                break
            discovered[dst] = None
            queue.append(dst)
        if truncated:
            break

    node_ids = list(discovered)
    node_set = set(node_ids)
    edge_ids = [(e.src, e.dst, e.kind) for e in adg.edges
                if e.kind in kinds and e.src in node_set and e.dst in node_set]
    return Slice(source, node_ids, edge_ids, truncated=truncated, timed_out=timed_out)


def slice_all(adg: Adg, labels: list[SourceLabel], opts: SliceOptions) -> list[Slice]:
    """One slice per source surviving the risk filter, ordered by
    (risk ascending, source signature, node id). A shared time budget is
    split equally across the surviving sources."""
    survivors = [l for l in labels
                 if opts.risk_filter is None or l.entry.risk in opts.risk_filter]
    survivors.sort(key=lambda l: (l.entry.risk, l.call_site_sig.render(), l.node))
    share = None
    if opts.time_budget is not None and survivors:
        share = opts.time_budget / len(survivors)
    slices = []
    for i, label in enumerate(survivors):
        s = forward_slice(adg, label, opts, time_budget=share)
        s.id = i
        slices.append(s)
    return slices

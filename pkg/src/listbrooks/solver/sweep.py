"""Distance-4 pipeline: conflict digraph over components and a topological recoloring sweep."""

from __future__ import annotations

import heapq
import random
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from listbrooks.characterization import potentially_bad, ringing_vertex
from listbrooks.coloring import DISTANCE4, Coloring, validate_hypotheses
from listbrooks.errors import HypothesisViolation, InternalInvariantError
from listbrooks.graph import Graph, leaf_blocks
from listbrooks.solver.common import (
    BadTracker,
    SolveResult,
    SolveTrace,
    color_P_greedy,
    extend_to_rest,
)


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    label: int  # the P-vertex the arc stands for


@dataclass
class Digraph:
    n: int
    arcs: list[Arc] = field(default_factory=list)

    def outdegree(self, v: int) -> int:
        return sum(a.tail == v for a in self.arcs)

    def indegree(self, v: int) -> int:
        return sum(a.head == v for a in self.arcs)


@dataclass
class ConflictDigraph:
    """Nodes ``0..m-1`` are the components of ``G - P``; nodes from ``m`` on are sinks ``x_p``."""

    digraph: Digraph
    components: list[frozenset[int]]
    S: frozenset[int]
    sink_of: dict[int, int]  # node id -> p
    leaf_block_of: dict[int, frozenset[int]]  # arc index -> ringed leaf block


def build_conflict_digraph(tracker: BadTracker) -> ConflictDigraph:
    g, P = tracker.g, tracker.P
    delta = g.max_degree
    m = len(tracker.components)
    digraph = Digraph(m)
    sink_of: dict[int, int] = {}
    leaf_block_of: dict[int, frozenset[int]] = {}
    S = set()
    for t, comp in enumerate(tracker.components):
        dec = tracker.decs[t]
        if potentially_bad(g, tracker.lists, comp, dec):
            S.add(t)
        for bid in sorted(leaf_blocks(dec)):
            block = dec.blocks[bid]
            p = ringing_vertex(g, block, P, delta - 1)
            if p is None:
                continue
            others = [w for w in g.adjacency[p] if w not in block]
            if len(others) > 1:
                raise HypothesisViolation(f"P-vertex {p} rings a leaf block but has {len(others)} outside neighbors")
            if others:
                head = tracker.comp_of[others[0]]
            else:
                head = digraph.n
                digraph.n += 1
                sink_of[head] = p
            leaf_block_of[len(digraph.arcs)] = block
            digraph.arcs.append(Arc(t, head, p))
    for t in sorted(S):
        out, inn = digraph.outdegree(t), digraph.indegree(t)
        if out <= inn:
            raise HypothesisViolation(
                f"component {sorted(tracker.components[t])} has outdegree {out} <= indegree {inn}"
            )
    return ConflictDigraph(digraph, list(tracker.components), frozenset(S), sink_of, leaf_block_of)


def acyclic_one_out(digraph: Digraph, S: Iterable[int]) -> tuple[dict[int, Arc], list[int]]:
    """Choose one out-arc per ``S``-vertex so the chosen arcs form an acyclic subgraph.

    Vertices outside ``S`` start out resolved; repeatedly the lowest-id
    ``S``-vertex with an arc into the resolved set takes that arc (lowest
    head, then label) and becomes resolved. Returns the chosen arcs and an
    order in which every chosen arc points forward.
    """
    S = frozenset(S)
    for v in S:
        if digraph.outdegree(v) <= digraph.indegree(v):
            raise ValueError(f"vertex {v}: outdegree does not exceed indegree")
    into: dict[int, list[Arc]] = {}
    for a in digraph.arcs:
        into.setdefault(a.head, []).append(a)
    resolved = {v for v in range(digraph.n) if v not in S}
    ready: list[int] = []
    candidates: dict[int, list[Arc]] = {}

    def offer(head: int) -> None:
        for a in into.get(head, ()):
            if a.tail in S and a.tail not in resolved:
                if a.tail not in candidates:
                    heapq.heappush(ready, a.tail)
                candidates.setdefault(a.tail, []).append(a)

    for v in sorted(resolved):
        offer(v)
    chosen: dict[int, Arc] = {}
    resolution = []
    while ready:
        t = heapq.heappop(ready)
        if t in resolved:
            continue
        chosen[t] = min(candidates[t], key=lambda a: (a.head, a.label))
        resolved.add(t)
        resolution.append(t)
        offer(t)
    if len(chosen) != len(S):
        raise ValueError("no acyclic one-out selection; degree condition must be violated")
    return chosen, resolution[::-1]


def recolor_sweep(
    tracker: BadTracker,
    chosen: Mapping[int, Arc],
    order: list[int],
    lists: Mapping[int, frozenset[int]],
    trace: SolveTrace | None = None,
) -> Coloring:
    """Walk ``order``; whenever the current component is bad, recolor its arc's ``P``-vertex."""
    done: list[int] = []
    for t in order:
        if tracker.is_bad(t):
            p = chosen[t].label
            old = tracker.phi[p]
            alternatives = sorted(lists[p] - {old})
            if not alternatives:
                raise InternalInvariantError(f"P-vertex {p} has no second color")
            tracker.recolor(p, alternatives[0])
            if trace is not None:
                trace.recolorings.append((p, old, alternatives[0]))
                trace.bad_counts.append(tracker.count)
            if tracker.is_bad(t):
                raise InternalInvariantError(f"component {t} still bad after recoloring {p}")
        done.append(t)
        regressed = [i for i in done if tracker.is_bad(i)]
        if regressed:
            raise InternalInvariantError(f"components {regressed} became bad again")
    if tracker.count:
        raise InternalInvariantError(f"{tracker.count} bad component(s) remain after the sweep")
    return dict(tracker.phi)


def solve_distance4(
    g: Graph,
    P: Iterable[int],
    lists: Mapping[int, frozenset[int]],
    seed: int | None = None,
    validate: bool = True,
) -> SolveResult:
    """Color ``G`` from ``lists`` when ``P``-lists have size >= 2 and ``P`` is 4-scattered."""
    P = frozenset(P)
    if validate:
        report = validate_hypotheses(g, P, lists, DISTANCE4)
        if not report.ok:
            raise HypothesisViolation(str(report), report)
    trace = SolveTrace(DISTANCE4)
    rng = random.Random(seed) if seed is not None else None
    phi0 = color_P_greedy(g, P, lists, rng)
    tracker = BadTracker(g, P, lists, phi0)
    trace.initial_bad = tracker.count
    trace.bad_counts.append(tracker.count)
    if tracker.count:
        cd = build_conflict_digraph(tracker)
        chosen, order = acyclic_one_out(cd.digraph, cd.S)
        recolor_sweep(tracker, chosen, order, lists, trace)
    coloring = extend_to_rest(g, P, tracker.phi, lists)
    return SolveResult(coloring, trace)

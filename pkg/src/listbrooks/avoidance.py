"""Proper ``Delta``-colorings that avoid a given partial coloring ``phi``.

Every function returns a total coloring ``f`` with ``f(v) != phi(v)`` on the
domain of ``phi``, or raises :class:`HypothesisViolation` when the inputs do
not meet the corresponding sufficient condition.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from listbrooks.coloring import Coloring, HypothesisReport, is_independent, is_proper, palette
from listbrooks.errors import GraphError, HypothesisViolation, InternalInvariantError
from listbrooks.graph import Graph, block_decomposition, connected_components, is_complete, is_connected, leaf_blocks
from listbrooks.oracle import exact_avoid
from listbrooks.solver.common import extend_to_rest

CONFLICT_GRAPH = "conflict-graph"
SPARSE = "sparse"
INDEPENDENT_DENSE = "independent-dense"
SMALL_CLASSES = "small-classes"
KPLUS1 = "kplus1"
PROPOSITIONS = (CONFLICT_GRAPH, SPARSE, INDEPENDENT_DENSE, SMALL_CLASSES, KPLUS1)
ORACLE_BACKED = frozenset({SMALL_CLASSES})


@dataclass(frozen=True)
class AvoidanceParams:
    d0: int = 0  # max P-neighbors of a vertex outside P
    d1: int = 0  # max number of components of G - P a P-vertex touches
    d: int = 3  # P-neighbor threshold for the sparse proposition
    k: int = 1  # colors used by phi / by the base coloring for kplus1

    def __post_init__(self) -> None:
        if min(self.d0, self.d1, self.d, self.k) < 0:
            raise ValueError("avoidance parameters must be nonnegative")


def _base_report(g: Graph, name: str, min_delta: int = 3) -> HypothesisReport:
    report = HypothesisReport(name)
    if g.n == 0 or not is_connected(g):
        report.add("disconnected", "graph is not connected")
    elif is_complete(g):
        report.add("complete", f"graph is complete (K{g.n})")
    if g.max_degree < min_delta:
        report.add("max_degree", f"maximum degree {g.max_degree} < {min_delta}")
    return report


def _raise_if(report: HypothesisReport) -> None:
    if not report.ok:
        raise HypothesisViolation(str(report), report)


def _check_phi(g: Graph, phi: Mapping[int, int], report: HypothesisReport) -> None:
    for v, c in phi.items():
        if not 0 <= v < g.n:
            report.add("bad_vertex", f"precolored vertex {v} out of range")
        elif c < 1:
            report.add("bad_color", f"vertex {v} precolored with {c} < 1")


def _p_neighbors(g: Graph, v: int, P: frozenset[int]) -> list[int]:
    return [p for p in g.adjacency[v] if p in P]


def _greedy(g: Graph, order: Iterable[int], allowed: Mapping[int, frozenset[int]], adj) -> Coloring:
    out: Coloring = {}
    for v in order:
        free = allowed[v] - {out[w] for w in adj(v) if w in out}
        if not free:
            raise InternalInvariantError(f"greedy coloring stuck at {v}")
        out[v] = min(free)
    return out


def _finish(g: Graph, P: frozenset[int], f: Coloring, phi: Mapping[int, int]) -> Coloring:
    delta = g.max_degree
    lists = {v: palette(delta) for v in range(g.n)}
    for v, c in phi.items():
        if v not in P:
            lists[v] = lists[v] - {c}
    out = extend_to_rest(g, P, f, lists)
    if not is_proper(g, out) or any(out[v] == c for v, c in phi.items()):
        raise InternalInvariantError("extension does not avoid phi")
    return out


def conflict_graph(g: Graph, P: Iterable[int], d0: int) -> dict[int, set[int]]:
    """Per component of ``G - P``: a clique on the lowest ``d0 + 1`` P-neighbors of its first qualifying leaf block."""
    P = frozenset(P)
    D: dict[int, set[int]] = {p: set() for p in P}
    rest = [v for v in range(g.n) if v not in P]
    for comp in connected_components(g, rest):
        dec = block_decomposition(g, comp)
        for bid in sorted(leaf_blocks(dec)):
            seen = sorted({p for u in dec.blocks[bid] for p in _p_neighbors(g, u, P)})
            if len(seen) >= d0 + 1:
                chosen = seen[: d0 + 1]
                for p in chosen:
                    D[p].update(q for q in chosen if q != p)
                break
        else:
            raise HypothesisViolation(f"component {sorted(comp)} has no leaf block with {d0 + 1} distinct P-neighbors")
    return D


def check_conflict_graph(g: Graph, P: Iterable[int], phi: Mapping[int, int], params: AvoidanceParams) -> HypothesisReport:
    P = frozenset(P)
    delta = g.max_degree
    report = _base_report(g, CONFLICT_GRAPH)
    _check_phi(g, phi, report)
    if set(phi) - P:
        report.add("phi_domain", "phi is defined outside P")
    if not is_independent(g, P):
        report.add("not_independent", "P is not independent")
    if params.d0 * params.d1 >= delta - 1:
        report.add("d0d1", f"d0*d1 = {params.d0 * params.d1} >= Delta - 1 = {delta - 1}")
    rest = [v for v in range(g.n) if v not in P]
    for v in rest:
        k = len(_p_neighbors(g, v, P))
        if k > params.d0:
            report.add("d0", f"vertex {v} has {k} > d0 neighbors in P")
    comp_of = {v: i for i, c in enumerate(connected_components(g, rest)) for v in c}
    for p in sorted(P):
        touched = {comp_of[w] for w in g.adjacency[p] if w in comp_of}
        if len(touched) > params.d1:
            report.add("d1", f"P-vertex {p} touches {len(touched)} > d1 components")
    for comp in connected_components(g, rest):
        dec = block_decomposition(g, comp)
        if not any(
            len({p for u in dec.blocks[b] for p in _p_neighbors(g, u, P)}) > params.d0 for b in leaf_blocks(dec)
        ):
            report.add("leaf_block", f"component {sorted(comp)} has no leaf block with d0 + 1 distinct P-neighbors")
    return report


def avoid_conflict_graph(g: Graph, P: Iterable[int], phi: Mapping[int, int], params: AvoidanceParams) -> Coloring:
    """Avoid ``phi`` on ``P`` when ``d0 * d1 < Delta - 1``, via a greedily colored conflict graph."""
    P = frozenset(P)
    delta = g.max_degree
    _raise_if(check_conflict_graph(g, P, phi, params))
    D = conflict_graph(g, P, params.d0)
    allowed = {p: palette(delta) - {phi[p]} if p in phi else palette(delta) for p in P}
    f = _greedy(g, sorted(P), allowed, lambda p: D[p])
    return _finish(g, P, f, phi)


def check_sparse(g: Graph, P: Iterable[int], phi: Mapping[int, int], d: int) -> HypothesisReport:
    P = frozenset(P)
    delta = g.max_degree
    report = _base_report(g, SPARSE)
    _check_phi(g, phi, report)
    if set(phi) - P:
        report.add("phi_domain", "phi is defined outside P")
    inner = max((len(_p_neighbors(g, p, P)) for p in P), default=0)
    if inner >= d - 2:
        report.add("dense_P", f"Delta(G[P]) = {inner} >= d - 2 = {d - 2}")
    if d - 1 > delta:
        report.add("d", f"d - 1 = {d - 1} exceeds Delta = {delta}")
    for v in range(g.n):
        if v not in P:
            k = len(_p_neighbors(g, v, P))
            if 0 < k < d:
                report.add("threshold", f"vertex {v} has {k} P-neighbors, between 1 and d - 1")
    return report


def avoid_sparse_precolored_subgraph(g: Graph, P: Iterable[int], phi: Mapping[int, int], d: int) -> Coloring:
    """Avoid ``phi`` on ``P`` when outside vertices see ``0`` or ``>= d`` P-vertices and ``Delta(G[P]) < d - 2``."""
    P = frozenset(P)
    _raise_if(check_sparse(g, P, phi, d))
    colors = palette(d - 1)
    allowed = {p: colors - {phi[p]} if p in phi else colors for p in P}
    f = _greedy(g, sorted(P), allowed, lambda p: _p_neighbors(g, p, P))
    return _finish(g, P, f, phi)


def avoid_independent_dense(g: Graph, P: Iterable[int], phi: Mapping[int, int]) -> Coloring:
    """Independent ``P`` where every outside vertex sees none or at least three ``P``-vertices."""
    P = frozenset(P)
    if not is_independent(g, P):
        report = HypothesisReport(INDEPENDENT_DENSE)
        report.add("not_independent", "P is not independent")
        _raise_if(report)
    return avoid_sparse_precolored_subgraph(g, P, phi, 3)


def color_class_sizes(phi: Mapping[int, int]) -> dict[int, int]:
    sizes: dict[int, int] = {}
    for c in phi.values():
        sizes[c] = sizes.get(c, 0) + 1
    return sizes


def check_small_color_classes(g: Graph, phi: Mapping[int, int], k: int) -> HypothesisReport:
    delta = g.max_degree
    report = _base_report(g, SMALL_CLASSES)
    _check_phi(g, phi, report)
    sizes = color_class_sizes(phi)
    if len(sizes) > k:
        report.add("too_many_colors", f"phi uses {len(sizes)} > k = {k} colors")
    for c, s in sorted(sizes.items()):
        if s > delta - k:
            report.add("class_size", f"color {c} appears on {s} > Delta - k = {delta - k} vertices")
    return report


def avoid_small_color_classes(g: Graph, phi: Mapping[int, int], k: int) -> Coloring:
    """Oracle-backed: ``phi`` with at most ``k`` colors, each on at most ``Delta - k`` vertices."""
    delta = g.max_degree
    _raise_if(check_small_color_classes(g, phi, k))
    f = exact_avoid(g, phi, delta)
    if f is None:
        raise InternalInvariantError("oracle found no avoiding coloring although the hypotheses hold")
    return f


def avoid_kplus1(g: Graph, phi: Mapping[int, int], k: int, f: Mapping[int, int]) -> Coloring:
    """Move every vertex where the proper ``k``-coloring ``f`` agrees with ``phi`` to color ``k + 1``."""
    if len(f) != g.n or not is_proper(g, f) or any(not 1 <= c <= k for c in f.values()):
        raise GraphError(f"base coloring is not a proper total {k}-coloring")
    if not is_independent(g, phi):
        raise GraphError("the domain of phi is not independent")
    if len(set(phi.values())) > k + 1:
        raise GraphError(f"phi uses more than {k + 1} colors")
    return {v: k + 1 if phi.get(v) == c else c for v, c in f.items()}

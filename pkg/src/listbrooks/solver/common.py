"""Pieces shared by both solver pipelines."""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from listbrooks.characterization import UncolorabilityCertificate, find_certificate
from listbrooks.coloring import Coloring, Lists
from listbrooks.errors import InternalInvariantError, ListError
from listbrooks.graph import BlockDecomposition, Graph, block_decomposition, bfs_distances, connected_components
from listbrooks.oracle import exact_list_color


@dataclass
class SolveTrace:
    """What a pipeline did, for tests and the CLI's ``--trace`` output."""

    mode: str
    initial_bad: int = 0
    bad_counts: list[int] = field(default_factory=list)
    recolorings: list[tuple[int, int, int]] = field(default_factory=list)
    # distance-3 pipeline only
    konig_proper: bool | None = None
    f_max_degree: int | None = None
    f_covers_components: bool | None = None
    fpp_unicyclic: bool | None = None
    fpp_proper_initially: bool | None = None
    fallback_moves: int = 0


@dataclass
class SolveResult:
    coloring: Coloring
    trace: SolveTrace


def color_P_greedy(
    g: Graph, P: Iterable[int], lists: Mapping[int, frozenset[int]], rng: random.Random | None = None
) -> Coloring:
    """Color an independent ``P`` with the smallest (or a random) color of each list."""
    phi: Coloring = {}
    for p in sorted(set(P)):
        if not lists[p]:
            raise ListError(f"vertex {p} has an empty list")
        phi[p] = rng.choice(sorted(lists[p])) if rng is not None else min(lists[p])
    return phi


class BadTracker:
    """Keeps the set of bad components of ``G - P`` current under recolorings of ``P``."""

    def __init__(self, g: Graph, P: Iterable[int], lists: Mapping[int, frozenset[int]], phi: Mapping[int, int]):
        self.g = g
        self.P = frozenset(P)
        self.lists = lists
        self.phi = dict(phi)
        rest = [v for v in range(g.n) if v not in self.P]
        self.components = [frozenset(c) for c in connected_components(g, rest)]
        self.comp_of = {v: i for i, comp in enumerate(self.components) for v in comp}
        self.decs: list[BlockDecomposition] = [block_decomposition(g, c) for c in self.components]
        self.certs: list[UncolorabilityCertificate | None] = [None] * len(self.components)
        for i in range(len(self.components)):
            self._refresh(i)

    def residual(self, i: int) -> Lists:
        out = {}
        for v in self.components[i]:
            used = {self.phi[u] for u in self.g.adjacency[v] if u in self.P}
            out[v] = self.lists[v] - used if used else self.lists[v]
        return out

    def _refresh(self, i: int) -> None:
        self.certs[i] = find_certificate(self.g, self.residual(i), self.components[i], self.decs[i])

    def touched(self, p: int) -> set[int]:
        return {self.comp_of[w] for w in self.g.adjacency[p] if w not in self.P}

    def recolor(self, p: int, c: int) -> None:
        self.phi[p] = c
        for i in self.touched(p):
            self._refresh(i)

    def is_bad(self, i: int) -> bool:
        return self.certs[i] is not None

    def bad(self) -> list[int]:
        return [i for i, cert in enumerate(self.certs) if cert is not None]

    @property
    def count(self) -> int:
        return sum(cert is not None for cert in self.certs)


def bad_components(
    g: Graph, P: Iterable[int], phi: Mapping[int, int], lists: Mapping[int, frozenset[int]]
) -> list[tuple[frozenset[int], UncolorabilityCertificate]]:
    """Components of ``G - P`` with no coloring from their residual lists, with certificates."""
    tracker = BadTracker(g, P, lists, phi)
    return [(tracker.components[i], tracker.certs[i]) for i in tracker.bad()]


def _tree_greedy(g: Graph, verts: set[int], lists: Mapping[int, frozenset[int]], root: int) -> Coloring:
    # Color farthest-first from the root: every non-root vertex still has its BFS parent uncolored.
    order = list(bfs_distances(g, root, verts))
    out: Coloring = {}
    for v in reversed(order):
        taken = {out[w] for w in g.adjacency[v] if w in out}
        free = lists[v] - taken
        if not free:
            raise InternalInvariantError(f"greedy step stuck at vertex {v}")
        out[v] = min(free)
    return out


def color_component(g: Graph, component: Iterable[int], lists: Mapping[int, frozenset[int]]) -> Coloring | None:
    """List-color a connected ``G[component]`` with supervalent lists; ``None`` if impossible.

    With a vertex of slack the greedy tree order works. Otherwise a non-cut
    vertex is fixed to a color that leaves the rest certificate-free, and the
    remainder is handled the same way.
    """
    remaining = set(component)
    cur = {v: frozenset(lists[v]) for v in remaining}
    if any(len(cur[v]) < g.degree(v, remaining) for v in remaining):
        return exact_list_color(g, cur, remaining)
    if find_certificate(g, cur, remaining) is not None:
        return None
    out: Coloring = {}
    while remaining:
        slack = [v for v in sorted(remaining) if len(cur[v]) > g.degree(v, remaining)]
        if slack:
            out.update(_tree_greedy(g, remaining, cur, slack[0]))
            return out
        u = list(bfs_distances(g, min(remaining), remaining))[-1]
        rest = remaining - {u}
        for c in sorted(cur[u]):
            trial = {v: cur[v] - {c} if g.has_edge(u, v) else cur[v] for v in rest}
            if not rest or find_certificate(g, trial, rest) is None:
                break
        else:
            raise InternalInvariantError(f"no color of vertex {u} keeps the remainder colorable")
        out[u] = c
        remaining = rest
        cur = trial
    return out


def extend_to_rest(
    g: Graph, P: Iterable[int], phi: Mapping[int, int], lists: Mapping[int, frozenset[int]]
) -> Coloring:
    """Extend a coloring of ``P`` to all of ``G`` by coloring each component of ``G - P``."""
    tracker = BadTracker(g, P, lists, phi)
    if tracker.count:
        raise InternalInvariantError(f"{tracker.count} component(s) of G - P are still bad")
    out = dict(phi)
    for i, comp in enumerate(tracker.components):
        col = color_component(g, comp, tracker.residual(i))
        if col is None:
            raise InternalInvariantError(f"component {sorted(comp)} could not be colored")
        out.update(col)
    return out

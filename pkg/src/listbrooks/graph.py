"""Simple undirected graphs, multigraphs and block (biconnected) decomposition.

Vertices are dense integers ``0..n-1``. Most routines accept an optional
``within`` vertex set and then operate on the induced subgraph ``G[within]``
without relabelling, which is how components of ``G - P`` are handled
throughout the package.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from listbrooks.errors import GraphError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with sorted adjacency lists."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    _adjsets: tuple[frozenset[int], ...] = field(repr=False, compare=False, default=())

    def __post_init__(self) -> None:
        if not self._adjsets:
            object.__setattr__(self, "_adjsets", tuple(frozenset(a) for a in self.adjacency))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def adjset(self, v: int) -> frozenset[int]:
        return self._adjsets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def degree(self, v: int, within: frozenset[int] | set[int] | None = None) -> int:
        if within is None:
            return len(self.adjacency[v])
        return sum(1 for w in self.adjacency[v] if w in within)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def vertices(self) -> range:
        return range(self.n)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph, dropping duplicate edges.

    Raises :class:`GraphError` on self-loops or endpoints outside ``[0, n)``.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj))


@dataclass
class Multigraph:
    """Undirected multigraph; an edge's id is its index in ``edges``."""

    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        for u, v in self.edges:
            self._check(u, v)

    def _check(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")

    def add_edge(self, u: int, v: int) -> int:
        self._check(u, v)
        self.edges.append((u, v))
        return len(self.edges) - 1

    def incidence(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return inc

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def bfs_distances(
    g: Graph, source: int, within: frozenset[int] | set[int] | None = None, limit: int | None = None
) -> dict[int, int]:
    """Hop distances from ``source``; stops expanding at depth ``limit``."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if limit is not None and d >= limit:
            continue
        for w in g.adjacency[v]:
            if w not in dist and (within is None or w in within):
                dist[w] = d + 1
                queue.append(w)
    return dist


def pairwise_distance(g: Graph, u: int, v: int) -> float:
    """Shortest-path length between ``u`` and ``v``; ``math.inf`` if disconnected."""
    for x in (u, v):
        if not 0 <= x < g.n:
            raise GraphError(f"vertex {x} out of range")
    return bfs_distances(g, u).get(v, math.inf)


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    """Components of ``G[within]`` as sorted vertex lists, ordered by smallest vertex."""
    inside = frozenset(range(g.n)) if within is None else frozenset(within)
    seen: set[int] = set()
    comps = []
    for s in sorted(inside):
        if s in seen:
            continue
        comp = list(bfs_distances(g, s, inside))
        seen.update(comp)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph, within: Iterable[int] | None = None) -> bool:
    return len(connected_components(g, within)) <= 1


def is_complete(g: Graph, within: Iterable[int] | None = None) -> bool:
    verts = list(range(g.n)) if within is None else sorted(set(within))
    inside = frozenset(verts)
    k = len(verts)
    return all(g.degree(v, inside) == k - 1 for v in verts)


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks of a graph (or induced subgraph) and its block-cutpoint tree.

    ``bc_edges`` holds one ``(block_id, cut_vertex)`` pair per incidence of a
    cut vertex with a block; together these form the block-cutpoint forest.
    """

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    membership: dict[int, tuple[int, ...]]
    bc_edges: tuple[tuple[int, int], ...]

    def cut_vertices_of(self, block_id: int) -> frozenset[int]:
        return self.blocks[block_id] & self.cut_vertices


def block_decomposition(g: Graph, within: Iterable[int] | None = None) -> BlockDecomposition:
    """Biconnected components via an iterative Hopcroft-Tarjan DFS.

    Bridges become two-vertex blocks and isolated vertices one-vertex blocks.
    """
    verts = list(range(g.n)) if within is None else sorted(set(within))
    inside = frozenset(verts)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[frozenset[int]] = []
    clock = 0
    for root in verts:
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        if not any(w in inside for w in g.adjacency[root]):
            blocks.append(frozenset((root,)))
            continue
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if w not in inside:
                    continue
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(g.adjacency[w])))
                    descended = True
                    break
                if w != parent and disc[w] < disc[v]:
                    low[v] = min(low[v], disc[w])
                    edge_stack.append((v, w))
            if descended:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                comp: set[int] = set()
                while True:
                    e = edge_stack.pop()
                    comp.update(e)
                    if e == (u, v):
                        break
                blocks.append(frozenset(comp))

    membership: dict[int, list[int]] = {v: [] for v in verts}
    for i, b in enumerate(blocks):
        for v in b:
            membership[v].append(i)
    cuts = frozenset(v for v, bs in membership.items() if len(bs) >= 2)
    bc_edges = tuple((i, v) for i, b in enumerate(blocks) for v in sorted(b & cuts))
    return BlockDecomposition(
        blocks=tuple(blocks),
        cut_vertices=cuts,
        membership={v: tuple(bs) for v, bs in membership.items()},
        bc_edges=bc_edges,
    )


def leaf_blocks(dec: BlockDecomposition) -> set[int]:
    """Ids of blocks containing at most one cut vertex."""
    return {i for i, b in enumerate(dec.blocks) if len(b & dec.cut_vertices) <= 1}


def block_kind(g: Graph, block: frozenset[int]) -> str:
    """Classify a block as ``"complete"``, ``"odd_cycle"`` or ``"other"``.

    ``K3`` reports as complete.
    """
    k = len(block)
    m = sum(g.degree(v, block) for v in block) // 2
    if m == k * (k - 1) // 2:
        return "complete"
    if k >= 3 and k % 2 == 1 and m == k:
        return "odd_cycle"
    return "other"


def block_chromatic_number(g: Graph, block: frozenset[int]) -> int:
    kind = block_kind(g, block)
    if kind == "complete":
        return len(block)
    if kind == "odd_cycle":
        return 3
    raise GraphError("chromatic number only tracked for Gallai blocks")


def is_gallai_tree(
    g: Graph, within: Iterable[int] | None = None, dec: BlockDecomposition | None = None
) -> bool:
    """True iff the (connected) graph has only complete and odd-cycle blocks."""
    verts = list(range(g.n)) if within is None else sorted(set(within))
    if not verts or not is_connected(g, verts):
        raise GraphError("is_gallai_tree needs a nonempty connected graph")
    if dec is None:
        dec = block_decomposition(g, verts)
    return all(block_kind(g, b) != "other" for b in dec.blocks)


def induced_edges(g: Graph, vertices: Sequence[int]) -> list[tuple[int, int]]:
    inside = frozenset(vertices)
    return [(u, v) for u in sorted(inside) for v in g.adjacency[u] if v in inside and u < v]

"""Distance-3 pipeline.

The ``P``-vertices are first colored along an auxiliary graph ``F''`` on
``P`` built from an edge coloring of the bipartite multigraph ``J``
(``P`` versus leaf blocks of ``G - P``), then a local search removes the
remaining bad components one recoloring at a time.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from listbrooks.characterization import leaf_block_with_private_p, potentially_bad
from listbrooks.coloring import DISTANCE3, Coloring, validate_hypotheses
from listbrooks.errors import GraphError, HypothesisViolation, InternalInvariantError
from listbrooks.graph import Graph, Multigraph, leaf_blocks
from listbrooks.solver.common import BadTracker, SolveResult, SolveTrace, color_P_greedy, extend_to_rest

EULER_COLORS = 4  # J' keeps the edges colored 1..4


@dataclass
class LeafMultigraph:
    """``J``: nodes ``0..|P|-1`` are ``P``-vertices, the rest are leaf blocks."""

    J: Multigraph
    p_of_node: list[int]
    node_of_p: dict[int, int]
    blocks: list[frozenset[int]]
    component_of_block: list[int]
    g_edge: list[tuple[int, int]]  # J edge -> (p, u) in G

    @property
    def num_p(self) -> int:
        return len(self.p_of_node)

    def is_block_node(self, x: int) -> bool:
        return x >= self.num_p

    def block(self, x: int) -> frozenset[int]:
        return self.blocks[x - self.num_p]


def build_leaf_multigraph(tracker: BadTracker) -> LeafMultigraph:
    """One node per leaf block of each component that could turn bad; one edge per G-edge to ``P``."""
    g, P = tracker.g, tracker.P
    delta = g.max_degree
    p_of_node = sorted(P)
    node_of_p = {p: i for i, p in enumerate(p_of_node)}
    J = Multigraph(len(p_of_node))
    blocks: list[frozenset[int]] = []
    comp_of_block: list[int] = []
    g_edge: list[tuple[int, int]] = []
    for t, comp in enumerate(tracker.components):
        dec = tracker.decs[t]
        if not potentially_bad(g, tracker.lists, comp, dec):
            continue
        for bid in sorted(leaf_blocks(dec)):
            block = dec.blocks[bid]
            J.n += 1
            node = J.n - 1
            blocks.append(block)
            comp_of_block.append(t)
            for u in sorted(block):
                for p in g.adjacency[u]:
                    if p in P:
                        J.add_edge(node_of_p[p], node)
                        g_edge.append((p, u))
    deg = J.degrees()
    for x in range(J.n):
        if x < len(p_of_node):
            if deg[x] > delta:
                raise HypothesisViolation(f"P-vertex {p_of_node[x]} has degree {deg[x]} > {delta} in J")
        elif deg[x] not in (delta - 1, delta):
            raise HypothesisViolation(
                f"leaf block {sorted(blocks[x - len(p_of_node)])} has {deg[x]} edges to P, expected {delta - 1} or {delta}"
            )
    return LeafMultigraph(J, p_of_node, node_of_p, blocks, comp_of_block, g_edge)


def bipartition(J: Multigraph) -> list[int]:
    side = [-1] * J.n
    adj: list[list[int]] = [[] for _ in range(J.n)]
    for u, v in J.edges:
        adj[u].append(v)
        adj[v].append(u)
    for s in range(J.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    raise GraphError("multigraph is not bipartite")
    return side


def konig_edge_coloring(J: Multigraph, k: int) -> list[int]:
    """Proper edge coloring of a bipartite multigraph with colors ``1..k``.

    Each edge ``uv`` takes a color ``a`` missing at ``u``; if ``a`` is present
    at ``v``, the ``a``/``b`` alternating path from ``v`` (``b`` missing at
    ``v``) is swapped first.
    """
    bipartition(J)
    at: list[dict[int, int]] = [{} for _ in range(J.n)]
    colors = [0] * len(J.edges)

    def free(x: int) -> int:
        for c in range(1, k + 1):
            if c not in at[x]:
                return c
        raise ValueError(f"vertex {x} has degree above {k}")

    for e, (u, v) in enumerate(J.edges):
        a, b = free(u), free(v)
        if a in at[v]:
            path = []
            x, c = v, a
            while c in at[x]:
                f = at[x][c]
                path.append(f)
                fu, fv = J.edges[f]
                x = fv if fu == x else fu
                c = b if c == a else a
            for f in path:
                for y in J.edges[f]:
                    del at[y][colors[f]]
            for f in path:
                colors[f] = b if colors[f] == a else a
                for y in J.edges[f]:
                    at[y][colors[f]] = f
            if a in at[u] or a in at[v]:
                raise InternalInvariantError("alternating path swap left the color occupied")
        colors[e] = a
        at[u][a] = e
        at[v][a] = e
    return colors


def is_proper_edge_coloring(J: Multigraph, colors: list[int], k: int) -> bool:
    seen: set[tuple[int, int]] = set()
    for (u, v), c in zip(J.edges, colors):
        if not 1 <= c <= k or (u, c) in seen or (v, c) in seen:
            return False
        seen.add((u, c))
        seen.add((v, c))
    return True


def euler_circuit(edges: list[tuple[int, int]], edge_ids: list[int], start: int) -> list[int]:
    """Hierholzer: edge ids of a closed trail through all given edges, starting at ``start``."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in edge_ids:
        u, v = edges[e]
        adj.setdefault(u, []).append((v, e))
        adj.setdefault(v, []).append((u, e))
    used: set[int] = set()
    ptr = {x: 0 for x in adj}
    stack: list[tuple[int, int | None]] = [(start, None)]
    circuit: list[int] = []
    while stack:
        x, via = stack[-1]
        nbrs = adj[x]
        while ptr[x] < len(nbrs) and nbrs[ptr[x]][1] in used:
            ptr[x] += 1
        if ptr[x] < len(nbrs):
            y, e = nbrs[ptr[x]]
            used.add(e)
            stack.append((y, e))
        else:
            stack.pop()
            if via is not None:
                circuit.append(via)
    circuit.reverse()
    return circuit


@dataclass
class PairingStructure:
    lm: LeafMultigraph
    colors: list[int]
    j_prime: list[int]
    moved: dict[int, tuple[int, int]] = field(default_factory=dict)  # J edge -> (b2, b1)
    k_edges: list[tuple[int, int]] = field(default_factory=list)
    k_source: list[int | None] = field(default_factory=list)  # K edge -> J edge, None for parity edges
    f_edges: list[int] = field(default_factory=list)  # J edge ids; F is a subgraph of J'
    f_degree: list[int] = field(default_factory=list)
    # derived in build_F_doubleprime
    B2: set[int] = field(default_factory=set)
    Bd: set[int] = field(default_factory=set)
    B1: set[int] = field(default_factory=set)
    B1_prime: set[int] = field(default_factory=set)
    P_prime: set[int] = field(default_factory=set)
    fpp: dict[int, set[int]] = field(default_factory=dict)


def build_F(lm: LeafMultigraph, colors: list[int], tracker: BadTracker) -> PairingStructure:
    J = lm.J
    ps = PairingStructure(lm, colors, [e for e, c in enumerate(colors) if c <= EULER_COLORS])
    jdeg = [0] * J.n
    for e in ps.j_prime:
        for x in J.edges[e]:
            jdeg[x] += 1
    endpoints = {e: J.edges[e] for e in ps.j_prime}

    nodes_of: dict[int, list[int]] = {}
    for x in range(lm.num_p, J.n):
        nodes_of.setdefault(lm.component_of_block[x - lm.num_p], []).append(x)
    for t in sorted(nodes_of):
        bnodes = sorted(nodes_of[t])
        if all(jdeg[b] == 3 for b in bnodes):
            if len(bnodes) < 2:
                raise InternalInvariantError(f"component {t}: a single leaf block of degree 3 in J'")
            b1, b2 = bnodes[0], bnodes[1]
            e = min(f for f in ps.j_prime if b2 in J.edges[f])
            p_node = J.edges[e][0] if J.edges[e][1] == b2 else J.edges[e][1]
            endpoints[e] = (p_node, b1)
            ps.moved[e] = (b2, b1)

    kdeg = [0] * J.n
    for e in ps.j_prime:
        ps.k_edges.append(endpoints[e])
        ps.k_source.append(e)
        for x in endpoints[e]:
            kdeg[x] += 1
    if max(kdeg, default=0) > 4:
        raise InternalInvariantError("J'' has a vertex of degree above 4")
    odd = [x for x in range(J.n) if kdeg[x] % 2]
    for x, y in zip(odd[::2], odd[1::2]):
        ps.k_edges.append((x, y))
        ps.k_source.append(None)

    # Components of K; each Euler circuit starts at its lowest node, always a P-node.
    parent = list(range(J.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in ps.k_edges:
        parent[find(x)] = find(y)
    groups: dict[int, list[int]] = {}
    for i, (x, _) in enumerate(ps.k_edges):
        groups.setdefault(find(x), []).append(i)
    selected: list[int] = []
    for ids in groups.values():
        start = min(min(ps.k_edges[i]) for i in ids)
        circuit = euler_circuit(ps.k_edges, ids, start)
        # Odd circuits take the even positions, so only the start loses an edge.
        offset = 0 if len(circuit) % 2 == 0 else 1
        selected.extend(circuit[offset::2])
    ps.f_edges = sorted(ps.k_source[i] for i in selected if ps.k_source[i] is not None)

    ps.f_degree = [0] * J.n
    for e in ps.f_edges:
        for x in J.edges[e]:
            ps.f_degree[x] += 1
    if max(ps.f_degree, default=0) > 2:
        raise InternalInvariantError("F has a vertex of degree above 2")
    for t, bnodes in nodes_of.items():
        if not any(ps.f_degree[b] == 2 for b in bnodes):
            raise InternalInvariantError(f"component {t} has no leaf block of degree 2 in F")
    return ps


def build_F_doubleprime(ps: PairingStructure, tracker: BadTracker) -> dict[int, set[int]]:
    """Graph on ``P``: pairs sharing an ``F``-neighbor, plus one extra edge per ``P'``-vertex."""
    lm, J, g = ps.lm, ps.lm.J, tracker.g
    f_nbrs: dict[int, list[int]] = {}
    for e in ps.f_edges:
        p_node, b = sorted(J.edges[e])
        f_nbrs.setdefault(b, []).append(lm.p_of_node[p_node])
    j_nbrs: dict[int, set[int]] = {}
    for e, (x, y) in enumerate(J.edges):
        p_node, b = sorted((x, y))
        j_nbrs.setdefault(b, set()).add(lm.p_of_node[p_node])

    ps.B2 = {b for b in range(lm.num_p, J.n) if ps.f_degree[b] == 2}
    ps.Bd = {b for b in ps.B2 if len(set(f_nbrs[b])) == 2}
    ps.B1 = ps.B2 - ps.Bd
    ps.B1_prime = {b for b in ps.B1 if len(j_nbrs[b]) >= 2}
    owner = {f_nbrs[b][0]: b for b in ps.B1_prime}
    ps.P_prime = set(owner)

    fpp: dict[int, set[int]] = {p: set() for p in lm.p_of_node}

    def join(p: int, q: int) -> None:
        fpp[p].add(q)
        fpp[q].add(p)

    for b in sorted(ps.Bd):
        p, q = sorted(set(f_nbrs[b]))
        join(p, q)
    for p in sorted(ps.P_prime):
        join(p, min(j_nbrs[owner[p]] - {p}))
    ps.fpp = fpp

    if not is_unicyclic_forest(fpp):
        raise InternalInvariantError("a component of F'' has more than one cycle")
    for b in ps.B2:
        if len(j_nbrs[b]) >= 2 and not any(q in fpp[p] for p in j_nbrs[b] for q in j_nbrs[b]):
            raise InternalInvariantError(f"leaf block {sorted(lm.block(b))} has no F''-adjacent pair of P-neighbors")
    delta = g.max_degree
    for t, comp in enumerate(tracker.components):
        if len(comp) == delta and len(tracker.decs[t].blocks) == 1 and potentially_bad(g, tracker.lists, comp):
            seen = {p for u in comp for p in g.adjacency[u] if p in tracker.P}
            if not any(q in fpp[p] for p in seen for q in seen):
                raise InternalInvariantError(f"K_Delta component {sorted(comp)} has no F''-adjacent pair")
    return fpp


def is_unicyclic_forest(adj: Mapping[int, set[int]]) -> bool:
    """Every component has at most as many edges as vertices."""
    seen: set[int] = set()
    for s in adj:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        i = 0
        while i < len(comp):
            for y in adj[comp[i]]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
            i += 1
        edges = sum(len(adj[x]) for x in comp) // 2
        if edges > len(comp):
            return False
    return True


def color_F_doubleprime(fpp: Mapping[int, set[int]], lists: Mapping[int, frozenset[int]]) -> Coloring:
    """Peel degree-<=1 vertices down to the core, color the core, then re-add in reverse."""
    deg = {p: len(nb) for p, nb in fpp.items()}
    alive = set(fpp)
    queue = deque(sorted(p for p in alive if deg[p] <= 1))
    peeled: list[int] = []
    while queue:
        p = queue.popleft()
        if p not in alive:
            continue
        alive.discard(p)
        peeled.append(p)
        for q in fpp[p]:
            if q in alive:
                deg[q] -= 1
                if deg[q] == 1:
                    queue.append(q)
    if any(deg[p] > 2 for p in alive):
        raise InternalInvariantError("core of F'' has a vertex of degree above 2")
    phi: Coloring = {}
    for p in sorted(alive) + peeled[::-1]:
        free = lists[p] - {phi[q] for q in fpp[p] if q in phi}
        if not free:
            raise InternalInvariantError(f"no color left for {p} while coloring F''")
        phi[p] = min(free)
    return phi


def minimize_bad_local_search(
    tracker: BadTracker,
    lists: Mapping[int, frozenset[int]],
    trace: SolveTrace | None = None,
) -> Coloring:
    """Recolor ``P``-vertices until no component is bad, strictly lowering the count each move.

    Preferred moves recolor a ``p`` seeing ``Delta - 1`` vertices of a leaf
    block of a bad component with the two smallest other colors of ``L(p)``.
    If no such move helps, any strictly improving single recoloring of a
    ``P``-neighbor of a bad component is taken instead.
    """
    g = tracker.g
    while tracker.count:
        before = tracker.count
        move = _private_move(tracker, lists, before) or _any_move(tracker, lists, before)
        if move is None:
            raise InternalInvariantError(f"no recoloring lowers the number of bad components below {before}")
        if trace is not None:
            trace.recolorings.append(move[:3])
            trace.bad_counts.append(tracker.count)
            trace.fallback_moves += move[3]
        if tracker.count >= before:
            raise InternalInvariantError("bad-component count did not decrease")
    del g
    return dict(tracker.phi)


def _try(tracker: BadTracker, p: int, colors: Iterable[int], before: int) -> int | None:
    old = tracker.phi[p]
    for c in colors:
        tracker.recolor(p, c)
        if tracker.count < before:
            return c
    tracker.recolor(p, old)
    return None


def _private_move(tracker: BadTracker, lists, before: int):
    for t in tracker.bad():
        found = leaf_block_with_private_p(tracker.g, tracker.components[t], tracker.P, tracker.decs[t])
        if found is None:
            continue
        p = found[1]
        old = tracker.phi[p]
        c = _try(tracker, p, sorted(lists[p] - {old})[:2], before)
        if c is not None:
            return p, old, c, 0
    return None


def _any_move(tracker: BadTracker, lists, before: int):
    for t in tracker.bad():
        near = sorted({p for u in tracker.components[t] for p in tracker.g.adjacency[u] if p in tracker.P})
        for p in near:
            old = tracker.phi[p]
            c = _try(tracker, p, sorted(lists[p] - {old}), before)
            if c is not None:
                return p, old, c, 1
    return None


def solve_distance3(
    g: Graph,
    P: Iterable[int],
    lists: Mapping[int, frozenset[int]],
    seed: int | None = None,
    validate: bool = True,
) -> SolveResult:
    """Color ``G`` from ``lists`` when ``P``-lists have size >= 3 and ``P`` is 3-scattered."""
    P = frozenset(P)
    if validate:
        report = validate_hypotheses(g, P, lists, DISTANCE3)
        if not report.ok:
            raise HypothesisViolation(str(report), report)
    delta = g.max_degree
    trace = SolveTrace(DISTANCE3)
    tracker = BadTracker(g, P, lists, color_P_greedy(g, P, lists))
    lm = build_leaf_multigraph(tracker)
    colors = konig_edge_coloring(lm.J, delta)
    trace.konig_proper = is_proper_edge_coloring(lm.J, colors, delta)
    if not trace.konig_proper:
        raise InternalInvariantError("edge coloring of J is not proper")
    ps = build_F(lm, colors, tracker)
    trace.f_max_degree = max(ps.f_degree, default=0)
    trace.f_covers_components = True
    fpp = build_F_doubleprime(ps, tracker)
    trace.fpp_unicyclic = True
    phi = color_F_doubleprime(fpp, lists)
    trace.fpp_proper_initially = all(phi[p] != phi[q] for p in fpp for q in fpp[p])
    for p, c in phi.items():
        if tracker.phi[p] != c:
            tracker.recolor(p, c)
    trace.initial_bad = tracker.count
    trace.bad_counts.append(tracker.count)
    minimize_bad_local_search(tracker, lists, trace)
    coloring = extend_to_rest(g, P, tracker.phi, lists)
    return SolveResult(coloring, trace)

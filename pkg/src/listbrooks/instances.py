"""Gadget generators and a seeded random generator of valid solver instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from listbrooks.coloring import DISTANCE3, DISTANCE4, MODE_BOUNDS, Lists, palette, validate_hypotheses
from listbrooks.graph import Graph, bfs_distances, build_graph, is_connected
from listbrooks.oracle import exact_avoid, exact_list_color

COLORABLE = "colorable"
UNCOLORABLE = "uncolorable"
AVOIDABLE = "avoidable"
UNAVOIDABLE = "unavoidable"
UNKNOWN = "unknown"


@dataclass
class InstanceBundle:
    graph: Graph
    P: frozenset[int]
    lists: Lists
    precoloring: dict[int, int] = field(default_factory=dict)
    verdict: str = UNKNOWN
    provenance: str = ""
    mode: str | None = None

    @property
    def delta(self) -> int:
        return self.graph.max_degree

    def oracle_verdict(self) -> str:
        """Recompute the verdict with the exact oracle."""
        if self.precoloring:
            found = exact_avoid(self.graph, self.precoloring, self.delta)
            return AVOIDABLE if found is not None else UNAVOIDABLE
        return COLORABLE if exact_list_color(self.graph, self.lists) is not None else UNCOLORABLE


def _clique(vertices: list[int]) -> list[tuple[int, int]]:
    return [(a, b) for i, a in enumerate(vertices) for b in vertices[i + 1 :]]


def _check_delta(delta: int) -> None:
    if delta < 4:
        raise ValueError(f"delta must be at least 4, got {delta}")


def gen_two_cliques(delta: int) -> InstanceBundle:
    """Two ``K_Delta`` joined by an edge between connectors; ``u``, ``v`` with list ``{1}`` ring the rest.

    Each ring forces its clique's connector to take color 1, so both connectors clash.
    """
    _check_delta(delta)
    a = list(range(delta))
    b = list(range(delta, 2 * delta))
    u, v = 2 * delta, 2 * delta + 1
    edges = _clique(a) + _clique(b) + [(a[-1], b[-1])]
    edges += [(u, x) for x in a[:-1]] + [(v, x) for x in b[:-1]]
    g = build_graph(2 * delta + 2, edges)
    lists = {x: palette(delta) for x in range(g.n)}
    lists[u] = lists[v] = frozenset({1})
    return InstanceBundle(g, frozenset({u, v}), lists, verdict=UNCOLORABLE, provenance=f"two-cliques delta={delta}")


def gen_fig2(delta: int) -> InstanceBundle:
    """Three ``K_Delta`` copies and three outside vertices with list ``{1, 2}``, attached cyclically."""
    _check_delta(delta)
    copies = [list(range(i * delta, (i + 1) * delta)) for i in range(3)]
    outside = [3 * delta + i for i in range(3)]
    edges = [e for c in copies for e in _clique(c)]
    for i, w in enumerate(outside):
        edges += [(w, x) for x in copies[i][: delta - 1]]
        edges.append((w, copies[(i + 1) % 3][-1]))
    g = build_graph(3 * delta + 3, edges)
    lists = {x: palette(delta) for x in range(g.n)}
    for w in outside:
        lists[w] = frozenset({1, 2})
    return InstanceBundle(g, frozenset(outside), lists, verdict=UNCOLORABLE, provenance=f"fig2 delta={delta}")


def gen_join_distance2(delta: int) -> InstanceBundle:
    """``K_{Delta-1}`` joined to ``u`` (list ``{1,2,3}``) and ``v`` (list ``{4,5,6}``).

    The verdict is computed by the oracle: with clique lists ``{1..Delta}`` the
    gadget is only uncolorable once ``Delta >= 6``.
    """
    _check_delta(delta)
    k = list(range(delta - 1))
    u, v = delta - 1, delta
    edges = _clique(k) + [(u, x) for x in k] + [(v, x) for x in k]
    g = build_graph(delta + 1, edges)
    lists = {x: palette(delta) for x in k}
    lists[u] = frozenset({1, 2, 3})
    lists[v] = frozenset({4, 5, 6})
    bundle = InstanceBundle(g, frozenset({u, v}), lists, provenance=f"join-d2 delta={delta}")
    bundle.verdict = bundle.oracle_verdict()
    return bundle


def gen_fig3() -> InstanceBundle:
    """The 4-regular 33-vertex graph with a proper precoloring of 12 vertices that no 4-coloring avoids."""
    edges: list[tuple[int, int]] = []
    precoloring: dict[int, int] = {}
    apexes = []
    for i in range(3):
        u1, u2, x1, x2, x3, y1, y2, y3, z1, z2, w = range(11 * i, 11 * i + 11)
        xs, ys = [x1, x2, x3], [y1, y2, y3]
        edges.append((u1, u2))
        edges += [(u1, x) for x in xs] + [(u2, y) for y in ys]
        edges += _clique(xs) + _clique(ys)
        edges += [(z1, x) for x in xs] + [(z2, y) for y in ys]
        edges += [(z1, w), (z2, w)]
        precoloring.update({u1: 1, u2: 2, z1: 2, z2: 1})
        apexes.append(w)
    edges += _clique(apexes)
    g = build_graph(33, edges)
    lists = {x: palette(4) for x in range(g.n)}
    return InstanceBundle(g, frozenset(), lists, precoloring, verdict=UNAVOIDABLE, provenance="fig3")


# ---------------------------------------------------------------------------
# random valid instances


class _Builder:
    def __init__(self, delta: int, mode: str, rng: random.Random):
        self.delta = delta
        self.mode = mode
        self.rng = rng
        self.n = 0
        self.adj: list[set[int]] = []
        self.P: set[int] = set()
        self.leaf_rings: list[list[int]] = []  # per leaf block, the vertices needing a P-neighbor
        self.slots: list[int] = []  # internal vertices one edge short of degree Delta
        self.components: list[list[int]] = []

    def new(self, k: int = 1) -> list[int]:
        out = list(range(self.n, self.n + k))
        self.n += k
        self.adj.extend(set() for _ in range(k))
        return out

    def edge(self, u: int, v: int) -> None:
        self.adj[u].add(v)
        self.adj[v].add(u)

    def clique(self, vs: list[int]) -> None:
        for a, b in _clique(vs):
            self.edge(a, b)

    def pod(self) -> tuple[int, list[int]]:
        """A ``K_Delta`` leaf block: one connector plus ``Delta - 1`` ring vertices."""
        vs = self.new(self.delta)
        self.clique(vs)
        self.leaf_rings.append(vs[1:])
        return vs[0], vs[1:]

    # component templates; each returns its vertices
    def dumbbell(self) -> list[int]:
        (a, ra), (b, rb) = self.pod(), self.pod()
        self.edge(a, b)
        return [a, *ra, b, *rb]

    def lone_clique(self) -> list[int]:
        vs = self.new(self.delta)
        self.clique(vs)
        self.leaf_rings.append(vs)
        return vs

    def hub(self) -> list[int]:
        """A clique core whose vertices each carry a pod or wait for a P-neighbor."""
        core = self.new(self.delta)
        self.clique(core)
        out = list(core)
        carried = self.rng.randint(2, self.delta)
        for i, c in enumerate(core):
            if i < carried:
                a, ring = self.pod()
                self.edge(c, a)
                out += [a, *ring]
            else:
                self.slots.append(c)
        return out

    def cycle_hub(self) -> list[int]:
        """An odd cycle core; each cycle vertex carries ``Delta - 3`` pods and one P-slot."""
        m = self.rng.choice([3, 5])
        core = self.new(m)
        for i in range(m):
            self.edge(core[i], core[(i + 1) % m])
        out = list(core)
        for c in core:
            for _ in range(self.delta - 3):
                a, ring = self.pod()
                self.edge(c, a)
                out += [a, *ring]
            self.slots.append(c)
        return out

    def cost(self, template: str) -> int:
        d = self.delta
        p = 1 if self.mode == DISTANCE4 else 0
        return {
            "dumbbell": 2 * d + 2 * p,
            "lone_clique": d + 2,
            "hub": d + d * (d + p),
            "cycle_hub": 5 + 5 * (d - 3) * (d + p),
        }[template]

    def far_from_P(self, w: int, exclude: int | None, radius: int) -> bool:
        return not any(q in self.P and q != exclude for q in bfs_distances(self._graph(), w, limit=radius))

    def _graph(self) -> Graph:
        return Graph(self.n, tuple(tuple(sorted(a)) for a in self.adj))


def _ring(b: _Builder) -> None:
    """Give every ring vertex exactly one P-neighbor."""
    d = b.delta
    if b.mode == DISTANCE4:
        for ring in b.leaf_rings:
            (p,) = b.new()
            b.P.add(p)
            for u in ring:
                b.edge(p, u)
        return
    # distance 3: P-vertices may split a ring and serve several blocks
    open_p: list[int] = []
    for ring in b.leaf_rings:
        ring = list(ring)
        if len(ring) == d or b.rng.random() < 0.3:
            cut = b.rng.randint(1, len(ring) - 1)
            parts = [ring[:cut], ring[cut:]]
        else:
            parts = [ring]
        for part in parts:
            room = [p for p in open_p if len(b.adj[p]) + len(part) <= d and not any(u in b.adj[p] for u in part)]
            if room and b.rng.random() < 0.4:
                p = b.rng.choice(room)
            else:
                (p,) = b.new()
                b.P.add(p)
                open_p.append(p)
            for u in part:
                b.edge(p, u)


def _build(delta: int, n: int, mode: str, rng: random.Random) -> _Builder | None:
    b = _Builder(delta, mode, rng)
    templates = ["dumbbell", "hub"] + (["lone_clique"] if mode == DISTANCE3 else [])
    if delta == 4:
        templates.append("cycle_hub")
    budget = n - 3  # leave room for filler
    while True:
        fits = [t for t in templates if b.cost(t) <= budget - b.n - len(b.P) - len(b.leaf_rings)]
        if not fits or (b.components and rng.random() < 0.15):
            break
        b.components.append(getattr(b, rng.choice(fits))())
    if not b.components:
        return None
    _ring(b)
    _, min_dist = MODE_BOUNDS[mode]
    filler = b.new(n - b.n) if n > b.n else []
    if not filler:
        return None
    for i, x in enumerate(filler[1:], 1):  # random tree of bounded degree
        options = [y for y in filler[:i] if len(b.adj[y]) < delta - 1]
        b.edge(x, rng.choice(options or filler[:i]))

    # Link the template components to the rest through their P-vertices or slots.
    for comp in b.components:
        comp_set = set(comp)
        linkers = sorted({p for u in comp for p in b.adj[u] if p in b.P})
        rng.shuffle(linkers)
        linked = False
        for p in linkers:
            if len(b.adj[p]) >= delta:
                continue
            if mode == DISTANCE4 and len([w for w in b.adj[p] if w not in comp_set]) >= 1:
                continue
            targets = [w for w in range(b.n) if w not in comp_set and w not in b.P and len(b.adj[w]) < delta]
            targets = [w for w in targets if w not in b.adj[p]]
            rng.shuffle(targets)
            for w in targets[:40]:
                if b.far_from_P(w, p, min_dist - 2):
                    b.edge(p, w)
                    linked = True
                    break
            if linked and rng.random() < 0.6:
                break
        if not linked:
            return None

    # Fill some slots with fresh or existing P-vertices; unfilled slots keep slack.
    for s in b.slots:
        if len(b.adj[s]) >= delta or rng.random() < 0.3:
            continue
        if b.far_from_P(s, None, min_dist - 1):
            (p,) = b.new()
            b.P.add(p)
            b.edge(p, s)
    # A few short-listed vertices among the filler.
    for x in rng.sample(filler, len(filler)):
        if rng.random() < 0.3 and b.far_from_P(x, None, min_dist - 1):
            b.P.add(x)
    return b


def random_instance(delta: int, n: int, mode: str, seed: int, max_tries: int = 200) -> InstanceBundle:
    """Seeded instance meeting the hypotheses of ``mode`` on exactly ``n`` vertices.

    Components of ``G - P`` are built from ``K_Delta`` leaf blocks ringed by
    ``P``-vertices, so bad components genuinely arise under naive colorings.
    """
    _check_delta(delta)
    if mode not in MODE_BOUNDS:
        raise ValueError(f"unknown mode {mode!r}")
    if n < delta + 2:
        raise ValueError(f"need n >= delta + 2, got n={n}")
    rng = random.Random(seed)
    min_list, _ = MODE_BOUNDS[mode]
    for _ in range(max_tries):
        b = _build(delta, n, mode, rng) if n >= 2 * delta + 4 else None
        if b is None:
            b = _generic(delta, n, mode, rng)
        if b is None or b.n != n:
            continue
        perm = list(range(n))
        rng.shuffle(perm)
        g = build_graph(n, [(perm[u], perm[v]) for u in range(n) for v in b.adj[u] if u < v])
        P = frozenset(perm[p] for p in b.P)
        lists = {v: palette(delta) for v in range(n)}
        for p in sorted(P):
            lists[p] = frozenset(rng.sample(range(1, delta + 1), min_list))
        if g.max_degree != delta or not is_connected(g):
            continue
        if validate_hypotheses(g, P, lists, mode).ok:
            return InstanceBundle(g, P, lists, mode=mode, provenance=f"random delta={delta} n={n} mode={mode} seed={seed}")
    raise ValueError(f"no valid {mode} instance with delta={delta}, n={n} after {max_tries} tries")


def _generic(delta: int, n: int, mode: str, rng: random.Random) -> _Builder | None:
    """Small fallback: a random connected graph with a degree-``Delta`` vertex and a scattered ``P``."""
    b = _Builder(delta, mode, rng)
    vs = b.new(n)
    for i in range(1, delta + 1):
        b.edge(0, i)
    for x in vs[delta + 1 :]:
        options = [y for y in vs[1:x] if len(b.adj[y]) < delta]
        if not options:
            return None
        b.edge(x, rng.choice(options))
    for _ in range(n):
        u, v = rng.sample(vs, 2)
        if v not in b.adj[u] and len(b.adj[u]) < delta and len(b.adj[v]) < delta:
            b.edge(u, v)
    _, min_dist = MODE_BOUNDS[mode]
    for x in rng.sample(vs, n):
        if rng.random() < 0.5 and b.far_from_P(x, None, min_dist - 1):
            b.P.add(x)
    return b



# ---------------------------------------------------------------------------
# avoidance instances


@dataclass
class AvoidanceInstance:
    graph: Graph
    P: frozenset[int]
    phi: dict[int, int]
    d0: int = 0
    d1: int = 0
    d: int = 3
    k: int = 1
    base: dict[int, int] = field(default_factory=dict)  # proper k-coloring for the kplus1 proposition


def _attach_ok(adj: list[set[int]], v: int, cap: int) -> bool:
    return len(adj[v]) < cap


def random_conflict_instance(seed: int, max_tries: int = 200) -> AvoidanceInstance:
    """Cliques (some with tails) whose leaf blocks see ``d0 + 1`` distinct P-vertices; P links components."""
    from listbrooks.avoidance import AvoidanceParams, check_conflict_graph

    rng = random.Random(seed)
    for _ in range(max_tries):
        delta = rng.choice([4, 5, 6])
        d0, d1 = (2, 2) if delta == 6 and rng.random() < 0.5 else (1, rng.randint(1, delta - 2))
        b = _Builder(delta, DISTANCE4, rng)
        comps: list[list[int]] = []
        ringers: list[list[int]] = []
        pcount: dict[int, int] = {}
        for _ in range(rng.randint(1, 4)):
            m = rng.randint(d0 + 2, delta)
            core = b.new(m)
            b.clique(core)
            comp = list(core)
            if rng.random() < 0.5:
                prev = core[0]
                for x in b.new(rng.randint(1, 3)):
                    b.edge(prev, x)
                    comp.append(x)
                    prev = x
            ps = b.new(d0 + 1)
            for p, u in zip(ps, core[1 : d0 + 2]):
                b.edge(p, u)
                pcount[u] = pcount.get(u, 0) + 1
            comps.append(comp)
            ringers.append(ps)
            b.P.update(ps)
        ok = True
        for i in range(1, len(comps)):
            j = rng.randrange(i)
            targets = [u for u in comps[j] if pcount.get(u, 0) < d0 and _attach_ok(b.adj, u, delta)]
            if not targets or d1 < 2:
                ok = False
                break
            u = rng.choice(targets)
            b.edge(rng.choice(ringers[i]), u)
            pcount[u] = pcount.get(u, 0) + 1
        if not ok:
            continue
        for _ in range(rng.randint(0, 4)):  # extra P-edges inside already touched components
            p = rng.choice(sorted(b.P))
            comp = next(c for c in comps if any(u in b.adj[p] for u in c))
            targets = [u for u in comp if u not in b.adj[p] and pcount.get(u, 0) < d0 and _attach_ok(b.adj, u, delta)]
            if targets and len(b.adj[p]) < delta:
                u = rng.choice(targets)
                b.edge(p, u)
                pcount[u] = pcount.get(u, 0) + 1
        g = b._graph()
        P = frozenset(b.P)
        phi = {p: rng.randint(1, g.max_degree) for p in P}
        if check_conflict_graph(g, P, phi, AvoidanceParams(d0=d0, d1=d1)).ok:
            return AvoidanceInstance(g, P, phi, d0=d0, d1=d1)
    raise ValueError(f"no conflict-graph instance for seed {seed}")


def random_sparse_instance(seed: int, d: int | None = None, max_tries: int = 200) -> AvoidanceInstance:
    """Outside vertices see none or at least ``d`` P-vertices; ``G[P]`` has maximum degree below ``d - 2``."""
    from listbrooks.avoidance import check_sparse

    rng = random.Random(seed)
    for _ in range(max_tries):
        delta = rng.choice([4, 5, 6])
        dd = d if d is not None else rng.randint(3, delta)
        b = _Builder(delta, DISTANCE4, rng)
        P = b.new(rng.randint(dd, dd + 6))
        b.P.update(P)
        for _ in range(len(P)):
            x, y = rng.sample(P, 2)
            if y not in b.adj[x] and max(len([w for w in b.adj[z] if w in b.P]) for z in (x, y)) < dd - 3:
                b.edge(x, y)
        dense = b.new(rng.randint(1, 5))
        for v in dense:
            room = [p for p in P if len(b.adj[p]) < delta]
            if len(room) < dd:
                break
            for p in rng.sample(room, rng.randint(dd, min(len(room), delta))):
                b.edge(v, p)
        free = b.new(rng.randint(0, 6))
        outside = dense + free
        for x in free:
            others = [y for y in outside if y != x and len(b.adj[y]) < delta]
            if others:
                b.edge(x, rng.choice(others))
        for _ in range(len(outside) if len(outside) > 1 else 0):
            x, y = rng.sample(outside, 2)
            if y not in b.adj[x] and len(b.adj[x]) < delta and len(b.adj[y]) < delta:
                b.edge(x, y)
        g = b._graph()
        Pset = frozenset(P)
        phi = {p: rng.randint(1, max(g.max_degree, 1)) for p in P}
        if is_connected(g) and check_sparse(g, Pset, phi, dd).ok:
            return AvoidanceInstance(g, Pset, phi, d=dd)
    raise ValueError(f"no sparse instance for seed {seed}")


def _random_connected(rng: random.Random, n: int, delta: int) -> Graph | None:
    b = _Builder(delta, DISTANCE4, rng)
    vs = b.new(n)
    for x in vs[1:]:
        options = [y for y in vs[:x] if len(b.adj[y]) < delta]
        if not options:
            return None
        b.edge(x, rng.choice(options))
    for _ in range(2 * n):
        x, y = rng.sample(vs, 2)
        if y not in b.adj[x] and len(b.adj[x]) < delta and len(b.adj[y]) < delta:
            b.edge(x, y)
    return b._graph()


def random_small_classes_instance(seed: int, max_tries: int = 200) -> AvoidanceInstance:
    """A precoloring with at most ``k`` colors, each used on at most ``Delta - k`` independent vertices."""
    from listbrooks.avoidance import check_small_color_classes

    rng = random.Random(seed)
    for _ in range(max_tries):
        delta = rng.choice([3, 4, 5])
        g = _random_connected(rng, rng.randint(delta + 2, 14), delta)
        if g is None or g.max_degree < 3:
            continue
        delta = g.max_degree
        k = rng.randint(1, delta - 1)
        phi: dict[int, int] = {}
        for c in rng.sample(range(1, delta + 1), k):
            for v in rng.sample(range(g.n), rng.randint(0, delta - k)):
                if v not in phi and not any(phi.get(w) == c for w in g.adjacency[v]):
                    phi[v] = c
        if phi and check_small_color_classes(g, phi, k).ok:
            return AvoidanceInstance(g, frozenset(phi), phi, k=k)
    raise ValueError(f"no small-classes instance for seed {seed}")


def random_kplus1_instance(seed: int) -> AvoidanceInstance:
    """A greedy proper ``k``-coloring and a precoloring of a random independent set with ``k + 1`` colors."""
    rng = random.Random(seed)
    while True:
        g = _random_connected(rng, rng.randint(6, 30), rng.choice([3, 4, 5, 6]))
        if g is not None:
            break
    order = list(range(g.n))
    rng.shuffle(order)
    base: dict[int, int] = {}
    for v in order:
        taken = {base[w] for w in g.adjacency[v] if w in base}
        base[v] = min(c for c in range(1, g.n + 2) if c not in taken)
    k = max(base.values())
    phi: dict[int, int] = {}
    for v in order:
        if rng.random() < 0.5 and not any(w in phi for w in g.adjacency[v]):
            phi[v] = base[v] if rng.random() < 0.5 else rng.randint(1, k + 1)
    return AvoidanceInstance(g, frozenset(phi), phi, k=k, base=base)

__all__ = [
    "AVOIDABLE",
    "AvoidanceInstance",
    "COLORABLE",
    "DISTANCE3",
    "DISTANCE4",
    "InstanceBundle",
    "UNAVOIDABLE",
    "UNCOLORABLE",
    "UNKNOWN",
    "gen_fig2",
    "gen_fig3",
    "gen_join_distance2",
    "gen_two_cliques",
    "random_conflict_instance",
    "random_instance",
    "random_kplus1_instance",
    "random_small_classes_instance",
    "random_sparse_instance",
]

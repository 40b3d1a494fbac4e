"""Random search for counterexamples to the two open problems.

``problem1``: an independent ``P`` with lists of size ``list_size``, lists of
size ``Delta`` elsewhere, no ``K_{Delta+1}`` -- is ``G`` always colorable?
``problem2``: is every partial proper ``Delta``-coloring avoidable?

Known gadgets that fit the search space are tried first (with randomly
permuted colors), followed by random graphs.
"""

from __future__ import annotations

import json
import random
import time
from collections.abc import Iterator
from dataclasses import asdict, dataclass, field

from listbrooks.coloring import palette
from listbrooks.graph import Graph, build_graph, is_connected
from listbrooks.instances import UNAVOIDABLE, UNCOLORABLE, gen_fig2, gen_fig3
from listbrooks.oracle import exact_avoid, exact_list_color

PROBLEM1 = "problem1"
PROBLEM2 = "problem2"


@dataclass
class SearchRecord:
    id: int
    problem: str
    source: str
    verdict: str
    n: int
    edges: list[tuple[int, int]]
    P: list[int] = field(default_factory=list)
    lists: dict[int, list[int]] = field(default_factory=dict)
    precoloring: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass
class SearchReport:
    problem: str
    delta: int
    max_n: int
    list_size: int
    budget: int
    sampled: int = 0
    skipped: int = 0
    seconds: float = 0.0
    found: list[SearchRecord] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "summary": True,
            "problem": self.problem,
            "delta": self.delta,
            "max_n": self.max_n,
            "list_size": self.list_size,
            "budget": self.budget,
            "sampled": self.sampled,
            "skipped": self.skipped,
            "found": len(self.found),
            "seconds": round(self.seconds, 3),
        }

    def jsonl(self) -> str:
        lines = [r.to_json() for r in self.found]
        lines.append(json.dumps(self.summary(), sort_keys=True))
        return "\n".join(lines) + "\n"


def has_big_clique(g: Graph) -> bool:
    """Whether ``G`` contains ``K_{Delta+1}``: some vertex of degree Delta whose closed neighborhood is a clique."""
    delta = g.max_degree
    for v in range(g.n):
        nb = g.adjacency[v]
        if len(nb) == delta and all(g.has_edge(a, b) for i, a in enumerate(nb) for b in nb[i + 1 :]):
            return True
    return False


def random_host(rng: random.Random, delta: int, max_n: int) -> Graph | None:
    """A connected graph with maximum degree exactly ``delta``, biased toward regularity."""
    n = rng.randint(delta + 2, max(delta + 2, max_n))
    stubs = {v: delta for v in range(n)}
    adj: list[set[int]] = [set() for _ in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):  # spanning tree first
        v = order[i]
        options = [u for u in order[:i] if stubs[u] > 0]
        if not options:
            return None
        u = rng.choice(options)
        adj[u].add(v)
        adj[v].add(u)
        stubs[u] -= 1
        stubs[v] -= 1
    for _ in range(4 * n):
        open_ = [v for v in range(n) if stubs[v] > 0]
        if len(open_) < 2:
            break
        u, v = rng.sample(open_, 2)
        if v not in adj[u]:
            adj[u].add(v)
            adj[v].add(u)
            stubs[u] -= 1
            stubs[v] -= 1
    g = build_graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])
    if g.max_degree != delta or not is_connected(g) or has_big_clique(g):
        return None
    return g


def _random_independent(rng: random.Random, g: Graph) -> list[int]:
    chosen: set[int] = set()
    for v in rng.sample(range(g.n), g.n):
        if rng.random() < 0.5 and not any(w in chosen for w in g.adjacency[v]):
            chosen.add(v)
    return sorted(chosen)


def _random_partial_coloring(rng: random.Random, g: Graph, k: int) -> dict[int, int]:
    phi: dict[int, int] = {}
    for v in rng.sample(range(g.n), g.n):
        if rng.random() < 0.5:
            free = [c for c in range(1, k + 1) if all(phi.get(w) != c for w in g.adjacency[v])]
            if free:
                phi[v] = rng.choice(free)
    return phi


def _catalog(problem: str, delta: int, max_n: int, list_size: int, rng: random.Random) -> Iterator[tuple[str, Graph, dict]]:
    if problem == PROBLEM1 and list_size == 2 and 3 * delta + 3 <= max_n:
        b = gen_fig2(delta)
        perm = rng.sample(range(1, delta + 1), delta)
        lists = {v: frozenset(perm[c - 1] for c in L) for v, L in b.lists.items()}
        yield "catalog:fig2", b.graph, {"P": sorted(b.P), "lists": lists}
    if problem == PROBLEM2 and delta == 4 and max_n >= 33:
        b = gen_fig3()
        perm = rng.sample(range(1, 5), 4)
        yield "catalog:fig3", b.graph, {"precoloring": {v: perm[c - 1] for v, c in b.precoloring.items()}}


def search_counterexample(
    delta: int, max_n: int, list_size: int, mode: str, budget: int, seed: int = 0
) -> SearchReport:
    """Sample ``budget`` instances and keep every one the exact oracle rejects."""
    if mode not in (PROBLEM1, PROBLEM2):
        raise ValueError(f"unknown search mode {mode!r}")
    rng = random.Random(seed)
    report = SearchReport(mode, delta, max_n, list_size, budget)
    start = time.perf_counter()
    catalog = _catalog(mode, delta, max_n, list_size, rng)
    while report.sampled < budget:
        item = next(catalog, None)
        if item is None:
            g = random_host(rng, delta, max_n)
            if g is None:
                report.skipped += 1
                if report.skipped > 100 * max(budget, 1):
                    break
                continue
            source = "random"
            if mode == PROBLEM1:
                P = _random_independent(rng, g)
                lists = {v: palette(delta) for v in range(g.n)}
                for p in P:
                    lists[p] = frozenset(rng.sample(range(1, delta + 1), min(list_size, delta)))
                data = {"P": P, "lists": lists}
            else:
                data = {"precoloring": _random_partial_coloring(rng, g, delta)}
        else:
            source, g, data = item
        iid = report.sampled
        report.sampled += 1
        if mode == PROBLEM1:
            if exact_list_color(g, data["lists"]) is None:
                report.found.append(
                    SearchRecord(
                        iid, mode, source, UNCOLORABLE, g.n, g.edges(), list(data["P"]),
                        lists={v: sorted(L) for v, L in sorted(data["lists"].items())},
                    )
                )
        elif exact_avoid(g, data["precoloring"], delta) is None:
            report.found.append(
                SearchRecord(iid, mode, source, UNAVOIDABLE, g.n, g.edges(), precoloring=dict(sorted(data["precoloring"].items())))
            )
    report.seconds = time.perf_counter() - start
    return report

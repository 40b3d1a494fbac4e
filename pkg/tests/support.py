"""Shared helpers for the test-suite: small-graph catalogs and list enumerators."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator

import networkx as nx

from listbrooks.graph import Graph, block_chromatic_number, block_decomposition, build_graph, is_gallai_tree

PALETTE = 5


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes))}
    return build_graph(len(mapping), [(mapping[u], mapping[v]) for u, v in h.edges])


def atlas(max_n: int, connected: bool = True) -> list[Graph]:
    """Every graph on 1..max_n vertices up to isomorphism (max_n <= 7)."""
    out = []
    for h in nx.graph_atlas_g():
        if 0 < h.number_of_nodes() <= max_n and (not connected or nx.is_connected(h)):
            out.append(from_nx(h))
    return out


def _subsets(k: int, size: int) -> list[frozenset[int]]:
    return [frozenset(c) for c in itertools.combinations(range(1, k + 1), size)]


def tight_and_one_slack(g: Graph, k: int = PALETTE) -> Iterator[tuple[dict[int, frozenset[int]], bool]]:
    """Supervalent lists over ``{1..k}`` that are tight everywhere, or tight except one vertex with ``d + 1``.

    Vertex 0's list is fixed to ``{1..|L(0)|}`` (color permutations are symmetries).
    Every other supervalent assignment contains one of these pointwise, so
    colorability of all of them follows by monotonicity. Yields ``(lists, tight)``.
    """
    deg = [g.degree(v) for v in range(g.n)]
    for slack in [None, *range(g.n)]:
        sizes = [deg[v] + (v == slack) for v in range(g.n)]
        if any(s > k or s < 1 for s in sizes):
            continue
        choices = [[frozenset(range(1, sizes[0] + 1))]] + [_subsets(k, sizes[v]) for v in range(1, g.n)]
        for combo in itertools.product(*choices):
            yield dict(enumerate(combo)), slack is None


def random_supervalent(rng: random.Random, g: Graph, k: int = PALETTE) -> dict[int, frozenset[int]]:
    out = {}
    for v in range(g.n):
        d = g.degree(v)
        size = d if rng.random() < 0.7 else rng.randint(d, k)
        out[v] = frozenset(rng.sample(range(1, k + 1), max(size, 1)))
    return out


def certificate_shaped(rng: random.Random, g: Graph, k: int = PALETTE, tries: int = 50) -> dict[int, frozenset[int]] | None:
    """Lists built as disjoint unions of random block sets of size chi(B) - 1 (Gallai trees only)."""
    if not is_gallai_tree(g):
        return None
    dec = block_decomposition(g)
    for _ in range(tries):
        used: dict[int, set[int]] = {v: set() for v in range(g.n)}
        ok = True
        for b in dec.blocks:
            need = block_chromatic_number(g, b) - 1
            free = [c for c in range(1, k + 1) if all(c not in used[v] for v in b)]
            if len(free) < need:
                ok = False
                break
            pick = rng.sample(free, need)
            for v in b:
                used[v].update(pick)
        if ok and all(used[v] for v in range(g.n)):
            return {v: frozenset(used[v]) for v in range(g.n)}
    return None


def perturb(rng: random.Random, lists: dict[int, frozenset[int]], k: int = PALETTE) -> dict[int, frozenset[int]]:
    """Swap one color of one list for a color outside it (keeps sizes)."""
    out = dict(lists)
    v = rng.randrange(len(out))
    outside = [c for c in range(1, k + 1) if c not in out[v]]
    if outside and out[v]:
        drop = rng.choice(sorted(out[v]))
        out[v] = (out[v] - {drop}) | {rng.choice(outside)}
    return out

"""Exact list coloring by backtracking; the ground truth for every other module."""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from listbrooks.coloring import Coloring, palette
from listbrooks.graph import Graph


def exact_list_color(
    g: Graph,
    lists: Mapping[int, Iterable[int]],
    within: Iterable[int] | None = None,
) -> Coloring | None:
    """A proper coloring of ``G[within]`` from ``lists``, or ``None`` if none exists.

    Fail-first backtracking: always branch on the uncolored vertex with the
    fewest remaining colors (ties by id), pruning neighbors' domains forward.
    """
    verts = list(range(g.n)) if within is None else sorted(set(within))
    inside = frozenset(verts)
    domains = {v: set(lists[v]) for v in verts}
    if any(not d for d in domains.values()):
        return None
    nbrs = {v: [w for w in g.adjacency[v] if w in inside] for v in verts}
    coloring: Coloring = {}
    uncolored = set(verts)

    def search() -> bool:
        if not uncolored:
            return True
        v = min(uncolored, key=lambda x: (len(domains[x]), x))
        uncolored.discard(v)
        for c in sorted(domains[v]):
            pruned = []
            dead = False
            for w in nbrs[v]:
                if w in uncolored and c in domains[w]:
                    domains[w].discard(c)
                    pruned.append(w)
                    if not domains[w]:
                        dead = True
                        break
            if not dead:
                coloring[v] = c
                if search():
                    return True
                del coloring[v]
            for w in pruned:
                domains[w].add(c)
        uncolored.add(v)
        return False

    return dict(coloring) if search() else None


def avoidance_lists(g: Graph, phi: Mapping[int, int], k: int) -> dict[int, frozenset[int]]:
    pal = palette(k)
    return {v: pal - {phi[v]} if v in phi else pal for v in range(g.n)}


def exact_avoid(g: Graph, phi: Mapping[int, int], k: int) -> Coloring | None:
    """A proper ``k``-coloring ``f`` with ``f(v) != phi(v)`` on ``dom(phi)``, or ``None``."""
    if k < 1:
        raise ValueError("palette size must be positive")
    return exact_list_color(g, avoidance_lists(g, phi, k))

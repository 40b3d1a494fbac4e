"""List assignments, partial colorings and hypothesis validation.

A list assignment is a ``dict`` from vertex to a ``frozenset`` of positive
integer colors; a partial coloring is a ``dict`` from vertex to color.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from listbrooks.errors import ListError
from listbrooks.graph import Graph, bfs_distances, is_complete, is_connected

Lists = dict[int, frozenset[int]]
Coloring = dict[int, int]

DISTANCE4 = "distance4"
DISTANCE3 = "distance3"
MODES = (DISTANCE4, DISTANCE3)

# mode -> (min list size on P, min pairwise distance within P)
MODE_BOUNDS = {DISTANCE4: (2, 4), DISTANCE3: (3, 3)}


def palette(k: int) -> frozenset[int]:
    return frozenset(range(1, k + 1))


def full_lists(g: Graph, k: int | None = None) -> Lists:
    pal = palette(g.max_degree if k is None else k)
    return {v: pal for v in range(g.n)}


def lists_from_forbidden(g: Graph, forbidden: Mapping[int, Iterable[int]]) -> Lists:
    """``L(v) = {1..Delta} minus forbidden(v)``; unconstrained vertices get the full palette."""
    pal = palette(g.max_degree)
    lists = {v: pal for v in range(g.n)}
    for v, fb in forbidden.items():
        fb = frozenset(fb)
        if not fb <= pal:
            raise ListError(f"vertex {v}: forbidden colors {sorted(fb - pal)} outside 1..{len(pal)}")
        rest = pal - fb
        if not rest:
            raise ListError(f"vertex {v}: every color of the palette is forbidden")
        lists[v] = rest
    return lists


def residual_lists(g: Graph, P: Iterable[int], phi: Mapping[int, int], lists: Mapping[int, frozenset[int]]) -> Lists:
    """Remove from each vertex outside ``P`` the colors of its ``P``-neighbors.

    Empty results are kept; they mark vertices left without a choice.
    """
    pset = frozenset(P)
    out: Lists = {}
    for v in range(g.n):
        if v in pset:
            continue
        used = {phi[u] for u in g.adjacency[v] if u in pset}
        out[v] = lists[v] - used if used else lists[v]
    return out


def is_proper(g: Graph, c: Mapping[int, int]) -> bool:
    return first_conflict(g, c) is None


def first_conflict(g: Graph, c: Mapping[int, int]) -> tuple[int, int] | None:
    for u, cu in c.items():
        for w in g.adjacency[u]:
            if u < w and c.get(w) == cu:
                return (u, w)
    return None


def respects_lists(c: Mapping[int, int], lists: Mapping[int, frozenset[int]]) -> bool:
    return all(col in lists[v] for v, col in c.items())


@dataclass
class HypothesisReport:
    """All violated preconditions of a solver mode; empty means ok."""

    mode: str
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str) -> None:
        self.violations.append((code, message))

    def codes(self) -> list[str]:
        return [c for c, _ in self.violations]

    def __str__(self) -> str:
        if self.ok:
            return f"{self.mode}: ok"
        return "\n".join(f"{self.mode}: {code}: {msg}" for code, msg in self.violations)


def close_pairs(g: Graph, P: Iterable[int], min_dist: int) -> list[tuple[int, int, int]]:
    """Pairs of ``P``-vertices closer than ``min_dist``, with their distance."""
    pset = frozenset(P)
    found = []
    for p in sorted(pset):
        dist = bfs_distances(g, p, limit=min_dist - 1)
        for q, d in dist.items():
            if q in pset and q > p:
                found.append((p, q, d))
    return found


def validate_hypotheses(g: Graph, P: Iterable[int], lists: Mapping[int, frozenset[int]], mode: str) -> HypothesisReport:
    if mode not in MODE_BOUNDS:
        raise ValueError(f"unknown mode {mode!r}")
    min_list, min_dist = MODE_BOUNDS[mode]
    pset = frozenset(P)
    report = HypothesisReport(mode)
    delta = g.max_degree
    if g.n == 0 or not is_connected(g):
        report.add("disconnected", "graph is not connected")
    if delta < 4:
        report.add("max_degree", f"maximum degree {delta} < 4")
    if g.n > 0 and is_complete(g):
        report.add("complete", f"graph is complete (K{g.n})")
    for v in range(g.n):
        if v not in lists:
            report.add("missing_list", f"vertex {v} has no list")
            continue
        if any(c < 1 for c in lists[v]):
            report.add("bad_color", f"vertex {v} lists a color below 1")
        size = len(lists[v])
        if v in pset:
            if size < min_list:
                report.add("short_list_P", f"vertex {v} in P has list size {size} < {min_list}")
        elif size < delta:
            report.add("short_list", f"vertex {v} outside P has list size {size} < {delta}")
    for p, q, d in close_pairs(g, pset, min_dist):
        report.add("distance", f"P-vertices {p} and {q} at distance {d} < {min_dist}")
    return report


def minimal_P(g: Graph, lists: Mapping[int, frozenset[int]]) -> frozenset[int]:
    """Vertices whose list is shorter than the maximum degree."""
    delta = g.max_degree
    return frozenset(v for v in range(g.n) if len(lists[v]) < delta)


def is_independent(g: Graph, S: Iterable[int]) -> bool:
    inside = frozenset(S)
    return not any(w in inside for v in inside for w in g.adjacency[v])

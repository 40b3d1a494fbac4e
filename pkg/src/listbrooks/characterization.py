"""Certificates of non-colorability for supervalent list assignments.

A connected graph ``T`` with lists ``|L(v)| >= d(v)`` fails to be
``L``-colorable exactly when every list is tight, ``T`` is a Gallai tree and
each block ``B`` carries a set ``L_B`` of ``chi(B) - 1`` colors whose union
over the blocks at ``v`` is ``L(v)``.

Tightness forces the sets ``L_B`` at a vertex to be pairwise disjoint, so
they are determined block by block from the leaves of the block-cutpoint
tree: a block with a non-cut vertex ``w`` has ``L_B = L(w)``, and otherwise
``L_B`` is ``L(w)`` minus the sets of the blocks hanging below a cut vertex
``w``. The search therefore never branches.
"""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from listbrooks.errors import GraphError, ListError
from listbrooks.graph import (
    BlockDecomposition,
    Graph,
    block_chromatic_number,
    block_decomposition,
    block_kind,
    is_connected,
    leaf_blocks,
)


@dataclass(frozen=True)
class UncolorabilityCertificate:
    vertices: frozenset[int]
    blocks: tuple[frozenset[int], ...]
    block_lists: tuple[frozenset[int], ...]
    tight_lists: bool = True  # condition (a)
    gallai_tree: bool = True  # condition (b)
    lists_are_unions: bool = True  # condition (c)

    def list_of(self, block: frozenset[int]) -> frozenset[int]:
        return self.block_lists[self.blocks.index(block)]

    def verify(self, g: Graph, lists: Mapping[int, frozenset[int]]) -> list[str]:
        """Recheck every certificate condition from scratch; returns the failures."""
        problems = []
        inside = self.vertices
        for v in inside:
            if len(lists[v]) != g.degree(v, inside):
                problems.append(f"vertex {v}: |L| != degree")
        covered = set()
        for b in self.blocks:
            covered |= b
        if covered != set(inside):
            problems.append("blocks do not cover the component")
        for b, lb in zip(self.blocks, self.block_lists):
            kind = block_kind(g, b)
            if kind == "other":
                problems.append(f"block {sorted(b)} is neither complete nor an odd cycle")
                continue
            if len(lb) != block_chromatic_number(g, b) - 1:
                problems.append(f"block {sorted(b)}: |L_B| = {len(lb)} != chi - 1")
        for v in inside:
            union: set[int] = set()
            for b, lb in zip(self.blocks, self.block_lists):
                if v in b:
                    union |= lb
            if union != set(lists[v]):
                problems.append(f"vertex {v}: L(v) is not the union of its block sets")
        return problems


def _vertices(g: Graph, within: Iterable[int] | None) -> list[int]:
    verts = list(range(g.n)) if within is None else sorted(set(within))
    if not verts or not is_connected(g, verts):
        raise GraphError("certificate search needs a nonempty connected graph")
    return verts


def _check_supervalent(g: Graph, lists: Mapping[int, frozenset[int]], inside: frozenset[int]) -> None:
    for v in inside:
        d = g.degree(v, inside)
        if len(lists[v]) < d:
            raise ListError(f"vertex {v}: list size {len(lists[v])} below degree {d}")


def find_certificate(
    g: Graph,
    lists: Mapping[int, frozenset[int]],
    within: Iterable[int] | None = None,
    dec: BlockDecomposition | None = None,
) -> UncolorabilityCertificate | None:
    """Return a certificate that ``G[within]`` is not list-colorable, or ``None``."""
    verts = _vertices(g, within)
    inside = frozenset(verts)
    _check_supervalent(g, lists, inside)
    if any(len(lists[v]) != g.degree(v, inside) for v in verts):
        return None
    if dec is None:
        dec = block_decomposition(g, verts)
    if any(block_kind(g, b) == "other" for b in dec.blocks):
        return None

    blocks = dec.blocks
    cuts = dec.cut_vertices
    root = min(leaf_blocks(dec))
    parent_cut: dict[int, int | None] = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        bid = queue.popleft()
        for w in sorted(blocks[bid] & cuts):
            if w == parent_cut[bid]:
                continue
            for child in dec.membership[w]:
                if child != bid:
                    parent_cut[child] = w
                    order.append(child)
                    queue.append(child)

    block_lists: dict[int, frozenset[int]] = {}
    for bid in reversed(order):
        b = blocks[bid]
        up = parent_cut[bid]
        candidates = sorted(b - {up})
        free = [w for w in candidates if w not in cuts]
        if free:
            block_lists[bid] = lists[free[0]]
        elif candidates:
            w = candidates[0]
            below: set[int] = set()
            for other in dec.membership[w]:
                if other != bid:
                    below |= block_lists[other]
            block_lists[bid] = lists[w] - below
        else:  # single-vertex block of an isolated vertex
            block_lists[bid] = lists[next(iter(b))]

    for bid, b in enumerate(blocks):
        if len(block_lists[bid]) != block_chromatic_number(g, b) - 1:
            return None
    for v in verts:
        union: set[int] = set()
        for bid in dec.membership[v]:
            union |= block_lists[bid]
        if union != lists[v]:
            return None
    return UncolorabilityCertificate(
        vertices=inside,
        blocks=tuple(blocks),
        block_lists=tuple(block_lists[i] for i in range(len(blocks))),
    )


def is_bad_component(
    g: Graph,
    lists: Mapping[int, frozenset[int]],
    within: Iterable[int] | None = None,
    dec: BlockDecomposition | None = None,
) -> bool:
    """True iff ``G[within]`` has no coloring from its (supervalent) lists."""
    return find_certificate(g, lists, within, dec) is not None


def potentially_bad(g: Graph, lists: Mapping[int, frozenset[int]], component: Iterable[int], dec: BlockDecomposition | None = None) -> bool:
    """Whether a component of ``G - P`` can be bad for *some* coloring of ``P``.

    When every vertex has at most one neighbor in ``P``, a residual list can
    only be tight if ``|L(v)| = d_G(v)``; the component must also be a Gallai tree.
    """
    comp = sorted(set(component))
    if any(len(lists[v]) != g.degree(v) for v in comp):
        return False
    if dec is None:
        dec = block_decomposition(g, comp)
    return all(block_kind(g, b) != "other" for b in dec.blocks)


def leaf_block_with_private_p(
    g: Graph,
    component: Iterable[int],
    P: Iterable[int],
    dec: BlockDecomposition | None = None,
    delta: int | None = None,
) -> tuple[int, int] | None:
    """A leaf block of the component and a ``P``-vertex seeing ``Delta - 1`` of its vertices.

    Leaf blocks are scanned by id and the lowest qualifying ``p`` is returned.
    """
    comp = sorted(set(component))
    pset = frozenset(P)
    if dec is None:
        dec = block_decomposition(g, comp)
    need = (g.max_degree if delta is None else delta) - 1
    for bid in sorted(leaf_blocks(dec)):
        p = ringing_vertex(g, dec.blocks[bid], pset, need)
        if p is not None:
            return bid, p
    return None


def ringing_vertex(g: Graph, block: Iterable[int], P: frozenset[int], need: int) -> int | None:
    """Lowest ``p`` in ``P`` adjacent to at least ``need`` vertices of ``block``."""
    hits: Counter[int] = Counter(p for u in block for p in g.adjacency[u] if p in P)
    private = [p for p, k in hits.items() if k >= need]
    return min(private) if private else None

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listbrooks.characterization import (
    find_certificate,
    is_bad_component,
    leaf_block_with_private_p,
    potentially_bad,
    ringing_vertex,
)
from listbrooks.errors import GraphError, ListError
from listbrooks.graph import block_decomposition, build_graph, is_gallai_tree
from listbrooks.instances import gen_fig2
from listbrooks.oracle import exact_list_color
from support import PALETTE, atlas, certificate_shaped, random_supervalent


def complete(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def same(g, L):
    return {v: frozenset(L) for v in range(g.n)}


# [TRIVIAL] textbook examples

def test_k4_with_three_common_colors_is_bad():
    cert = find_certificate(complete(4), same(complete(4), {1, 2, 3}))
    assert cert is not None
    assert cert.block_lists == (frozenset({1, 2, 3}),)


def test_odd_cycle_with_common_pair_is_bad():
    cert = find_certificate(cycle(5), same(cycle(5), {1, 2}))
    assert cert is not None and len(cert.blocks) == 1


def test_even_cycle_is_never_bad():
    assert find_certificate(cycle(4), same(cycle(4), {1, 2})) is None


def test_odd_cycle_with_one_different_list_is_colorable():
    lists = same(cycle(5), {1, 2})
    lists[4] = frozenset({1, 3})
    assert find_certificate(cycle(5), lists) is None
    assert exact_list_color(cycle(5), lists) is not None


def test_bowtie_with_disjoint_block_lists_is_bad():
    g = build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    lists = {0: {1, 2}, 1: {1, 2}, 2: {1, 2, 3, 4}, 3: {3, 4}, 4: {3, 4}}
    lists = {v: frozenset(L) for v, L in lists.items()}
    cert = find_certificate(g, lists)
    assert cert is not None and cert.verify(g, lists) == []
    assert exact_list_color(g, lists) is None


def test_input_errors():
    with pytest.raises(ListError):
        find_certificate(complete(3), same(complete(3), {1}))
    with pytest.raises(GraphError):
        find_certificate(build_graph(2, []), same(build_graph(2, []), {1}))


def test_within_restricts_to_a_subgraph():
    g = build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    lists = same(g, {1, 2})
    assert is_bad_component(g, lists, within=[0, 1, 2])
    assert not is_bad_component(g, lists, within=[2, 3, 4])


# [DERIVED] soundness and completeness against the exact oracle

def _graphs(max_n):
    return [g for g in atlas(max_n) if g.max_degree <= PALETTE]


def test_every_certificate_verifies_and_matches_the_oracle():
    rng = random.Random(11)
    graphs = _graphs(6)
    gallai = [g for g in graphs if is_gallai_tree(g)]
    found = 0
    for _ in range(3000):
        g = rng.choice(gallai)
        lists = certificate_shaped(rng, g) or random_supervalent(rng, g)
        cert = find_certificate(g, lists)
        assert (cert is not None) == (exact_list_color(g, lists) is None)
        if cert is not None:
            found += 1
            assert cert.verify(g, lists) == []
    assert found > 100


def test_non_cut_vertices_of_a_block_share_their_list():
    rng = random.Random(5)
    for g in [g for g in _graphs(6) if is_gallai_tree(g)]:
        lists = certificate_shaped(rng, g)
        if lists is None:
            continue
        cert = find_certificate(g, lists)
        assert cert is not None
        dec = block_decomposition(g)
        for b in dec.blocks:
            inner = [v for v in b if v not in dec.cut_vertices]
            assert len({lists[v] for v in inner}) <= 1


BY_SIZE = {n: [h for h in _graphs(6) if h.n == n] for n in range(2, 7)}


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_certificate_iff_uncolorable(seed, n):
    rng = random.Random(seed)
    g = rng.choice(BY_SIZE[n])
    lists = random_supervalent(rng, g)
    assert (find_certificate(g, lists) is not None) == (exact_list_color(g, lists) is None)


# leaf blocks and private P-vertices

def test_fig2_copies_are_privately_ringed():
    delta = 4
    b = gen_fig2(delta)
    g = b.graph
    for i in range(3):
        comp = list(range(i * delta, (i + 1) * delta))
        assert potentially_bad(g, b.lists, comp)
        found = leaf_block_with_private_p(g, comp, b.P)
        assert found is not None and found[1] == 3 * delta + i


def test_no_private_p_when_each_ring_is_shared():
    # K4 whose vertices each see a different P-vertex
    g = build_graph(8, [(i, j) for i in range(4) for j in range(i + 1, 4)] + [(i, 4 + i) for i in range(4)])
    assert leaf_block_with_private_p(g, range(4), {4, 5, 6, 7}, delta=4) is None
    assert ringing_vertex(g, range(4), frozenset({4, 5, 6, 7}), 1) == 4

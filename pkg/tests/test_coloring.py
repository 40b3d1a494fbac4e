import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listbrooks.coloring import (
    DISTANCE3,
    DISTANCE4,
    first_conflict,
    is_proper,
    lists_from_forbidden,
    minimal_P,
    palette,
    residual_lists,
    respects_lists,
    validate_hypotheses,
)
from listbrooks.errors import ListError
from listbrooks.graph import build_graph
from listbrooks.instances import gen_join_distance2, gen_two_cliques, random_instance
from support import to_nx

STAR = build_graph(5, [(0, i) for i in range(1, 5)])  # Delta = 4


def test_lists_from_forbidden():
    lists = lists_from_forbidden(STAR, {1: [2, 3]})
    assert lists[1] == {1, 4}
    assert lists[0] == palette(4)


@pytest.mark.parametrize("forbid", [{1: [5]}, {1: [1, 2, 3, 4]}])
def test_lists_from_forbidden_rejects(forbid):
    with pytest.raises(ListError):
        lists_from_forbidden(STAR, forbid)


def test_residual_lists_example():
    lists = {v: palette(4) for v in range(5)}
    res = residual_lists(STAR, {0}, {0: 3}, lists)
    assert 0 not in res
    assert all(res[v] == {1, 2, 4} for v in range(1, 5))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000))
def test_residual_lists_only_shrink(seed):
    rng = random.Random(seed)
    g = STAR
    P = {v for v in range(g.n) if rng.random() < 0.4}
    lists = {v: frozenset(rng.sample(range(1, 7), rng.randint(1, 6))) for v in range(g.n)}
    phi = {p: rng.choice(sorted(lists[p])) for p in P}
    res = residual_lists(g, P, phi, lists)
    for v, L in res.items():
        assert L <= lists[v]
        assert lists[v] - L == {phi[p] for p in g.adjacency[v] if p in P} & lists[v]


def test_properness_and_lists():
    tri = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert is_proper(tri, {0: 1, 1: 2, 2: 3})
    assert first_conflict(tri, {0: 1, 1: 1}) == (0, 1)
    assert is_proper(tri, {0: 1})  # partial colorings are fine
    assert respects_lists({0: 1}, {0: frozenset({1})})
    assert not respects_lists({0: 2}, {0: frozenset({1})})


def test_validation_reports_every_violation():
    g = build_graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])  # K5
    lists = {v: palette(4) for v in range(5)}
    lists[0] = frozenset({1})
    report = validate_hypotheses(g, {0}, lists, DISTANCE4)
    assert {"complete", "short_list_P"} <= set(report.codes())
    small = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    report = validate_hypotheses(small, set(), {v: palette(2) for v in range(4)}, DISTANCE4)
    assert "max_degree" in report.codes()


def test_gadgets_violate_hypotheses():
    b = gen_two_cliques(4)
    assert "short_list_P" in validate_hypotheses(b.graph, b.P, b.lists, DISTANCE4).codes()
    b = gen_join_distance2(5)
    assert "distance" in validate_hypotheses(b.graph, b.P, b.lists, DISTANCE3).codes()


def test_validate_unknown_mode():
    with pytest.raises(ValueError):
        validate_hypotheses(STAR, set(), {}, "distance7")


@pytest.mark.parametrize("mode,bound", [(DISTANCE4, 4), (DISTANCE3, 3)])
def test_random_instances_validate(mode, bound):
    """[DERIVED] distances rechecked with networkx shortest paths."""
    for seed in range(20):
        b = random_instance(5, 30, mode, seed)
        assert validate_hypotheses(b.graph, b.P, b.lists, mode).ok
        h = to_nx(b.graph)
        for p in b.P:
            dist = nx.single_source_shortest_path_length(h, p)
            assert all(dist[q] >= bound for q in b.P if q != p)
        assert minimal_P(b.graph, b.lists) <= b.P

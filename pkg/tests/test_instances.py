import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listbrooks.coloring import DISTANCE3, DISTANCE4, is_proper, validate_hypotheses
from listbrooks.graph import is_connected
from listbrooks.instances import (
    COLORABLE,
    UNAVOIDABLE,
    UNCOLORABLE,
    gen_fig2,
    gen_fig3,
    gen_join_distance2,
    gen_two_cliques,
    random_instance,
)
from listbrooks.search import PROBLEM1, PROBLEM2, has_big_clique, search_counterexample


@pytest.mark.parametrize("delta", [4, 5])
def test_two_cliques(delta):
    b = gen_two_cliques(delta)
    g = b.graph
    assert g.n == 2 * delta + 2 and g.max_degree == delta
    assert all(len(b.lists[p]) == 1 for p in b.P)
    assert b.oracle_verdict() == UNCOLORABLE == b.verdict


@pytest.mark.parametrize("delta", [4, 5])
def test_fig2(delta):
    b = gen_fig2(delta)
    g = b.graph
    assert g.n == 3 * delta + 3 and all(g.degree(v) == delta for v in range(g.n))
    assert all(b.lists[p] == {1, 2} for p in b.P)
    assert b.oracle_verdict() == UNCOLORABLE


def test_join_distance2_verdict_comes_from_the_oracle():
    assert gen_join_distance2(4).verdict == COLORABLE
    assert gen_join_distance2(6).verdict == UNCOLORABLE


def test_fig3_structure():
    b = gen_fig3()
    g = b.graph
    assert (g.n, g.num_edges) == (33, 66)
    assert is_connected(g) and not has_big_clique(g)
    assert len(b.precoloring) == 12 and is_proper(g, b.precoloring)
    assert b.verdict == UNAVOIDABLE


def test_gadgets_reject_small_delta():
    for gen in (gen_two_cliques, gen_fig2, gen_join_distance2):
        with pytest.raises(ValueError):
            gen(3)


@settings(max_examples=80, deadline=None)
@given(st.integers(4, 6), st.integers(0, 60), st.sampled_from([DISTANCE3, DISTANCE4]), st.integers(0, 10**6))
def test_random_instance_is_valid(delta, extra, mode, seed):
    n = delta + 2 + extra
    b = random_instance(delta, n, mode, seed)
    assert b.graph.n == n and b.graph.max_degree == delta
    assert validate_hypotheses(b.graph, b.P, b.lists, mode).ok


def test_random_instance_is_deterministic():
    a = random_instance(5, 40, DISTANCE3, 9)
    b = random_instance(5, 40, DISTANCE3, 9)
    assert a.graph.edges() == b.graph.edges() and a.lists == b.lists and a.P == b.P


def test_random_instance_errors():
    with pytest.raises(ValueError):
        random_instance(3, 20, DISTANCE4, 0)
    with pytest.raises(ValueError):
        random_instance(5, 6, DISTANCE4, 0)
    with pytest.raises(ValueError):
        random_instance(5, 30, "distance9", 0)


@pytest.mark.slow
def test_search_rediscovers_the_unavoidable_precoloring():
    report = search_counterexample(4, 33, 2, PROBLEM2, budget=3, seed=1)
    assert [r.source for r in report.found] == ["catalog:fig3"]
    lines = report.jsonl().splitlines()
    assert json.loads(lines[-1])["summary"] is True
    assert json.loads(lines[0])["verdict"] == UNAVOIDABLE


def test_search_problem1_finds_the_two_list_gadget():
    report = search_counterexample(4, 15, 2, PROBLEM1, budget=5, seed=2)
    assert [r.source for r in report.found] == ["catalog:fig2"]


def test_search_finds_nothing_with_full_lists():
    report = search_counterexample(4, 10, 4, PROBLEM1, budget=20, seed=3)
    assert report.found == [] and report.sampled == 20


def test_search_rejects_unknown_problem():
    with pytest.raises(ValueError):
        search_counterexample(4, 10, 2, "problem3", 1)

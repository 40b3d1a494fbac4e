import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listbrooks import avoidance as av
from listbrooks.coloring import is_proper
from listbrooks.errors import GraphError, HypothesisViolation
from listbrooks.graph import build_graph
from listbrooks.instances import (
    random_conflict_instance,
    random_kplus1_instance,
    random_small_classes_instance,
    random_sparse_instance,
)
from listbrooks.oracle import exact_avoid

# K_{3,4}: P = {3,4,5,6}, each outside vertex sees all four
K34 = build_graph(7, [(a, b) for a in range(3) for b in range(3, 7)])
CIRCULANT = build_graph(9, [(i, (i + s) % 9) for i in range(9) for s in (1, 2)])


def avoids(g, f, phi, k=None):
    return (
        len(f) == g.n
        and is_proper(g, f)
        and all(f[v] != c for v, c in phi.items())
        and max(f.values()) <= (k if k is not None else g.max_degree)
    )


def test_independent_dense_example():
    phi = {3: 1, 4: 2, 5: 1, 6: 3}
    f = av.avoid_independent_dense(K34, {3, 4, 5, 6}, phi)
    assert avoids(K34, f, phi)


def test_sparse_threshold_violation():
    g = build_graph(8, K34.edges() + [(7, 3)])  # vertex 7 sees exactly one P-vertex
    with pytest.raises(HypothesisViolation) as info:
        av.avoid_sparse_precolored_subgraph(g, {3, 4, 5, 6}, {3: 1}, 3)
    assert "threshold" in info.value.report.codes()


def test_conflict_graph_parameter_violation():
    with pytest.raises(HypothesisViolation) as info:
        av.avoid_conflict_graph(K34, {3, 4, 5, 6}, {3: 1}, av.AvoidanceParams(d0=4, d1=1))
    assert "d0d1" in info.value.report.codes()


def test_small_classes_examples():
    f = av.avoid_small_color_classes(CIRCULANT, {0: 1}, 1)
    assert avoids(CIRCULANT, f, {0: 1})
    # K3 joined to u and v: Delta = 4; u and the clique all colored 1
    g = build_graph(5, [(0, 1), (0, 2), (1, 2)] + [(3, x) for x in range(3)] + [(4, x) for x in range(3)])
    phi = {0: 1, 1: 1, 2: 1, 3: 1}
    with pytest.raises(HypothesisViolation) as info:
        av.avoid_small_color_classes(g, phi, 1)
    assert "class_size" in info.value.report.codes()
    assert av.SMALL_CLASSES in av.ORACLE_BACKED


def test_kplus1_examples():
    c6 = build_graph(6, [(i, (i + 1) % 6) for i in range(6)])
    base = {v: 1 + v % 2 for v in range(6)}
    phi = {0: 1, 2: 1, 4: 2}
    f = av.avoid_kplus1(c6, phi, 2, base)
    assert f == {0: 3, 1: 2, 2: 3, 3: 2, 4: 1, 5: 2}
    assert avoids(c6, f, phi, k=3)
    with pytest.raises(GraphError):
        av.avoid_kplus1(c6, {0: 1, 1: 2}, 2, base)  # phi on adjacent vertices
    with pytest.raises(GraphError):
        av.avoid_kplus1(c6, phi, 2, {v: 1 for v in range(6)})


def test_params_reject_negatives():
    with pytest.raises(ValueError):
        av.AvoidanceParams(d0=-1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_generated_instances_are_avoided(seed):
    a = random_conflict_instance(seed)
    f = av.avoid_conflict_graph(a.graph, a.P, a.phi, av.AvoidanceParams(d0=a.d0, d1=a.d1))
    assert avoids(a.graph, f, a.phi)
    D = av.conflict_graph(a.graph, a.P, a.d0)
    assert max((len(nb) for nb in D.values()), default=0) <= a.d0 * a.d1
    a = random_sparse_instance(seed)
    assert avoids(a.graph, av.avoid_sparse_precolored_subgraph(a.graph, a.P, a.phi, a.d), a.phi)
    a = random_sparse_instance(seed, d=3)
    assert avoids(a.graph, av.avoid_independent_dense(a.graph, a.P, a.phi), a.phi)
    a = random_kplus1_instance(seed)
    assert avoids(a.graph, av.avoid_kplus1(a.graph, a.phi, a.k, a.base), a.phi, k=a.k + 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_small_classes_agrees_with_oracle(seed):
    """[DERIVED] the hypotheses imply avoidability; the oracle confirms it independently."""
    a = random_small_classes_instance(seed)
    assert exact_avoid(a.graph, a.phi, a.graph.max_degree) is not None
    assert avoids(a.graph, av.avoid_small_color_classes(a.graph, a.phi, a.k), a.phi)

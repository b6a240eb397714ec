import numpy as np
import pytest
from pytest import raises

from oim_lab.graph import GraphFamilyParams, generate
from oim_lab.graph.exceptions import UnsupportedFamilySize
from oim_lab.graph.generators import FAMILIES, NORMALIZATION_EPSILON, normalize_weights


def test_star():
    graph, w = generate(GraphFamilyParams("star", n=4, weight=0.2))
    assert graph.edges == ((0, 1), (0, 2), (0, 3))
    assert w.values.tolist() == [0.2, 0.2, 0.2]


def test_chain():
    graph, _ = generate(GraphFamilyParams("chain", n=4))
    assert graph.edges == ((0, 1), (1, 2), (2, 3))


def test_bar():
    graph, _ = generate(GraphFamilyParams("bar", pairs=3))
    assert graph.n == 6
    assert graph.edges == ((0, 1), (2, 3), (4, 5))


def test_ray():
    graph, _ = generate(GraphFamilyParams("ray", rays=2, length=2))
    assert graph.n == 5
    assert set(graph.edges) == {(0, 1), (1, 2), (0, 3), (3, 4)}


def test_tree():
    graph, _ = generate(GraphFamilyParams("tree", n=5))
    assert set(graph.edges) == {(0, 1), (0, 2), (1, 3), (1, 4)}
    assert graph.max_in_degree == 1


def test_grid_and_complete_are_symmetric():
    graph, w = generate(GraphFamilyParams("grid", rows=2, cols=2, weight=0.6))
    assert graph.m == 8
    assert all(graph.has_edge(v, u) for u, v in graph.edges)
    # two in-edges of 0.6 get normalized
    assert np.all(w.node_sums() < 1.0)

    graph, _ = generate(GraphFamilyParams("complete", n=3))
    assert graph.m == 6


def test_bipartite_max_indegree():
    graph, _ = generate(GraphFamilyParams("bipartite", left=4, right=3, max_indegree=2, seed=5))
    assert graph.n == 7
    assert all(u < 4 <= v for u, v in graph.edges)
    assert all(graph.in_degree(v) == 2 for v in range(4, 7))


def test_dag_and_erdos_renyi():
    graph, _ = generate(GraphFamilyParams("dag", n=6, p=0.7, seed=1))
    assert graph.is_dag()
    assert all(u < v for u, v in graph.edges)

    graph, _ = generate(GraphFamilyParams("erdos_renyi", n=6, p=1.0))
    assert graph.m == 30


def test_random_weights_are_deterministic_and_valid():
    params = GraphFamilyParams("complete", n=4, weights="random", seed=3)
    g1, w1 = generate(params)
    g2, w2 = generate(params)
    assert g1 == g2
    assert w1 == w2
    assert w1.is_valid()
    assert not np.array_equal(w1.values, generate(GraphFamilyParams("complete", n=4, weights="random", seed=4))[1].values)


def test_normalize_weights():
    graph, _ = generate(GraphFamilyParams("bipartite", left=2, right=1, max_indegree=2))
    res = normalize_weights(graph, np.array([0.8, 0.6]))
    assert res.sum() == pytest.approx(1.4 / (1.4 + NORMALIZATION_EPSILON))
    assert res.sum() < 1.0
    assert normalize_weights(graph, np.array([0.3, 0.6])).tolist() == [0.3, 0.6]


@pytest.mark.parametrize(
    "params",
    [
        GraphFamilyParams("chain", n=1),
        GraphFamilyParams("bar"),
        GraphFamilyParams("ray", rays=2),
        GraphFamilyParams("grid", rows=1, cols=1),
        GraphFamilyParams("erdos_renyi", n=3),
        GraphFamilyParams("hypercube", n=3),
        GraphFamilyParams("star", n=3, weight=1.5),
    ],
)
def test_unsupported(params: GraphFamilyParams):
    with raises(UnsupportedFamilySize):
        generate(params)


def test_families_listed():
    assert set(FAMILIES) == {"bar", "chain", "star", "ray", "tree", "grid", "complete", "bipartite", "dag", "erdos_renyi"}

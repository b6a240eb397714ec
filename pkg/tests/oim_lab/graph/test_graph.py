import json
from pathlib import Path

import numpy as np
import pytest
from pytest import raises

from oim_lab.graph import Graph, WeightVector, build_graph, dump_graph, load_graph, load_weights
from oim_lab.graph.exceptions import (
    DuplicateEdge,
    GraphError,
    InvalidNode,
    SelfLoop,
    WeightOutOfRange,
    WeightSumExceedsOne,
)


def test_edges_are_grouped_by_target():
    graph = Graph(4, [(2, 3), (0, 1), (1, 3), (0, 3)])

    assert graph.edges == ((0, 1), (0, 3), (1, 3), (2, 3))
    assert graph.in_neighbors(3) == (0, 1, 2)
    assert graph.in_edge_ids(3) == range(1, 4)
    assert graph.in_edge_ids(0) == range(0, 0)
    assert graph.out_neighbors(0) == (1, 3)
    assert graph.max_in_degree == 3
    assert graph.edge_id(1, 3) == 2
    assert graph.has_edge(0, 1)
    assert not graph.has_edge(1, 0)
    assert graph.m == 4


def test_graph_rejects_invalid_input():
    with raises(SelfLoop):
        Graph(2, [(1, 1)])
    with raises(DuplicateEdge):
        Graph(2, [(0, 1), (0, 1)])
    with raises(InvalidNode):
        Graph(2, [(0, 2)])
    with raises(GraphError):
        Graph(-1, [])
    with raises(GraphError):
        Graph(2, [(0, 1)]).edge_id(1, 0)
    with raises(InvalidNode):
        Graph(2, []).check_nodes([5])


def test_empty_graph():
    graph = Graph(3, [])
    assert graph.max_in_degree == 0
    assert graph.is_dag()
    assert WeightVector(graph, []).node_sums().tolist() == [0.0, 0.0, 0.0]


def test_is_dag():
    assert Graph(3, [(0, 1), (1, 2)]).is_dag()
    assert not Graph(2, [(0, 1), (1, 0)]).is_dag()


def test_build_graph_infers_size(two_parents):
    graph, w = two_parents
    assert graph.n == 3
    assert w.node(2).tolist() == [0.3, 0.5]
    assert w.of(1, 2) == 0.5
    assert w.node(0).size == 0

    graph, _ = build_graph([(0, 1, 0.1)], n=5)
    assert graph.n == 5


@pytest.mark.parametrize("weight", [-0.1, 1.5, float("nan")])
def test_weight_out_of_range(weight: float):
    with raises(WeightOutOfRange):
        build_graph([(0, 1, weight)])


def test_weight_sum_exceeds_one():
    with raises(WeightSumExceedsOne) as exc:
        build_graph([(0, 2, 0.6), (1, 2, 0.5)])
    assert exc.value.node == 2

    graph, w = build_graph([(0, 2, 0.6), (1, 2, 0.5)], strict=False)
    assert not w.is_valid()
    assert w.node_sums()[2] == pytest.approx(1.1)


def test_weight_vector_helpers(two_parents):
    graph, w = two_parents

    assert w.replace(1, 0.7).node(2).tolist() == [0.3, 0.7]
    with raises(WeightSumExceedsOne):
        w.replace(1, 0.8)
    assert w.to_edge_list() == [(0, 2, 0.3), (1, 2, 0.5)]
    assert WeightVector.constant(graph, 0.25).values.tolist() == [0.25, 0.25]
    with raises(GraphError):
        WeightVector(graph, [0.1])
    with raises(ValueError):
        w.values[0] = 0.0


def test_from_node_vectors(two_parents):
    graph, _ = two_parents

    w = WeightVector.from_node_vectors(graph, {2: [0.2, 0.1]})
    assert w.values.tolist() == [0.2, 0.1]

    w = WeightVector.from_node_vectors(graph, {}, fill=0.4)
    assert w.values.tolist() == [0.4, 0.4]

    with raises(GraphError):
        WeightVector.from_node_vectors(graph, {2: [0.2]})

    loose = WeightVector.from_node_vectors(graph, {2: np.array([1.2, -0.3])}, strict=False)
    assert not loose.is_valid()


def test_dump_and_load(tmp_path: Path, two_parents):
    graph, w = two_parents
    path = tmp_path / "g.json"
    dump_graph(graph, w, path)

    data = json.loads(path.read_text())
    assert data["n"] == 3
    assert data["edges"] == [[0, 2, 0.3], [1, 2, 0.5]]

    assert load_graph(path) == (graph, w)
    assert load_weights(path, graph) == w

    other, w_other = build_graph([(0, 1, 0.1)])
    dump_graph(other, w_other, tmp_path / "other.json")
    with raises(GraphError):
        load_weights(tmp_path / "other.json", graph)


def test_load_rejects_invalid_file(tmp_path: Path):
    from oim_lab.utils.modeling.exceptions import DataValidationError

    path = tmp_path / "bad.json"
    path.write_text('{"n": 2, "edges": [[0, 1, "x"]]}')
    with raises(DataValidationError):
        load_graph(path)

    path.write_text('{"n": 2, "edges": [[0, 1, 0.5], [1, 1, 0.1]]}')
    with raises(SelfLoop):
        load_graph(path)

import numpy as np
import pytest
from pytest import raises

from oim_lab.diffusion import diffuse_ic, diffuse_lt, first_step_activations, sample_thresholds, trace_to_dict
from oim_lab.graph import build_graph
from oim_lab.graph.exceptions import InvalidNode
from oim_lab.utils.rng import make_rng


def test_lt_stops_at_fixpoint(chain3):
    graph, w = chain3
    trace = diffuse_lt(graph, w, {0}, np.array([0.9, 0.3, 0.5]))

    assert trace.sets == (frozenset({0}), frozenset({0, 1}))
    assert trace.steps == 1
    assert trace.horizon == 2
    assert trace.seeds == {0}
    assert trace.final == {0, 1}
    assert trace.activation_times(3).tolist() == [0, 1, -1]
    assert first_step_activations(trace) == {1}


def test_lt_weak_inequality(two_parents):
    graph, w = two_parents

    trace = diffuse_lt(graph, w, {0, 1}, np.array([0.5, 0.5, 0.8]))
    assert trace.final == {0, 1, 2}

    trace = diffuse_lt(graph, w, {0, 1}, np.array([0.5, 0.5, 0.81]))
    assert trace.final == {0, 1}
    assert first_step_activations(trace) == frozenset()


def test_lt_zero_threshold_activates_without_pressure():
    graph, w = build_graph([(0, 1, 0.0), (1, 2, 0.5)], n=4)
    # a zero threshold is met by zero pressure, so isolated node 3 activates too
    trace = diffuse_lt(graph, w, {0}, np.zeros(4))
    assert trace.final == {0, 1, 2, 3}


def test_lt_horizon(chain3):
    graph, w = chain3
    thresholds = np.array([0.1, 0.1, 0.1])

    assert diffuse_lt(graph, w, {0}, thresholds).final == {0, 1, 2}
    trace = diffuse_lt(graph, w, {0}, thresholds, horizon=1)
    assert trace.final == {0, 1}
    assert trace.horizon == 1
    assert diffuse_lt(graph, w, {0}, thresholds, horizon=0).sets == (frozenset({0}),)


def test_lt_sets_are_nested():
    graph, w = build_graph([(0, 1, 0.4), (1, 2, 0.4), (0, 2, 0.3), (2, 3, 0.9), (3, 1, 0.5)])
    rng = make_rng(11)
    for _ in range(20):
        trace = diffuse_lt(graph, w, {0}, sample_thresholds(graph, rng))
        for a, b in zip(trace.sets, trace.sets[1:]):
            assert a < b
        assert trace.steps <= graph.n - 1


def test_seed_validation(chain3):
    graph, w = chain3
    with raises(ValueError):
        diffuse_lt(graph, w, set(), np.zeros(3))
    with raises(InvalidNode):
        diffuse_lt(graph, w, {7}, np.zeros(3))


def test_ic_extremes():
    graph, w = build_graph([(0, 1, 1.0), (1, 2, 1.0)])
    trace = diffuse_ic(graph, w, {0}, make_rng(0))
    assert trace.sets == (frozenset({0}), frozenset({0, 1}), frozenset({0, 1, 2}))
    assert trace.model == "IC"

    graph, w = build_graph([(0, 1, 0.0), (1, 2, 0.0)])
    assert diffuse_ic(graph, w, {0}, make_rng(0)).final == {0}


def test_ic_activation_frequency():
    graph, w = build_graph([(0, 1, 0.3)])
    rng = make_rng(2)
    hits = sum(1 in diffuse_ic(graph, w, {0}, rng).final for _ in range(4000))
    assert hits / 4000 == pytest.approx(0.3, abs=0.03)


def test_trace_to_dict(chain3):
    graph, w = chain3
    trace = diffuse_lt(graph, w, {0}, np.array([0.9, 0.3, 0.5]))
    assert trace_to_dict(trace) == {"model": "LT", "horizon": 2, "sets": [[0], [0, 1]]}

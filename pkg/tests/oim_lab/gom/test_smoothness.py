import numpy as np
import pytest
from pytest import approx, raises

from oim_lab.gom import gom_rhs_exact, verify_gom, verify_update_bound
from oim_lab.graph import Graph, WeightVector, build_graph
from oim_lab.graph.generators import random_weights


def test_single_edge(single_edge):
    graph, w = single_edge
    w_prime = WeightVector(graph, [0.5])

    report = verify_gom(graph, w, w_prime, {0})

    # reached at step 1 with 0.2, otherwise observed at steps 0 and 1
    assert report.lhs == approx(0.3)
    assert report.rhs == approx(0.2 * 0.3 + 0.8 * 0.6)
    assert report.node_terms == {1: approx(0.54)}
    assert report.diameter == 1
    assert report.realizations == 2
    assert report.holds
    assert not report.relaxed


def test_equal_weights_give_zero(chain3):
    graph, w = chain3
    report = verify_gom(graph, w, w, {0})
    assert report.lhs == approx(0.0)
    assert report.rhs == approx(0.0)
    assert report.holds


def test_seed_terms_are_skipped(chain3):
    graph, w = chain3
    w_prime = WeightVector(graph, [0.1, 0.9])
    # node 1 is a seed, only node 2 contributes
    report = verify_gom(graph, w, w_prime, {1})
    assert set(report.node_terms) == {2}
    assert report.lhs == approx(0.5)
    assert gom_rhs_exact(graph, w, w_prime, {1}) == approx(report.rhs)


def test_update_bound_single_edge(single_edge):
    graph, w = single_edge
    w_prime = WeightVector(graph, [0.5])

    report = verify_update_bound(graph, w, w_prime, {0})

    assert report.checked == 2
    assert report.holds
    # the unreached node is observed for D + 1 steps
    assert report.violations_d == 1
    assert not report.holds_d
    assert report.worst_slack_d == approx(-0.3)
    assert report.worst == (1, 1)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_holds_on_random_dag(seed: int):
    graph = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    rng = np.random.default_rng(seed)
    w = random_weights(graph, rng)
    w_prime = random_weights(graph, rng)

    report = verify_gom(graph, w, w_prime, {0})

    assert report.holds
    assert report.rhs >= report.lhs
    assert not report.relaxed
    assert verify_update_bound(graph, w, w_prime, {0}).holds


@pytest.mark.parametrize("seeds", [{0}, {1, 2}])
def test_holds_on_complete_graph(seeds):
    graph = Graph(3, [(u, v) for u in range(3) for v in range(3) if u != v])
    rng = np.random.default_rng(7)
    w = random_weights(graph, rng)
    w_prime = random_weights(graph, rng)

    report = verify_gom(graph, w, w_prime, seeds)

    assert report.holds
    assert report.relaxed
    assert report.diameter == 2


def test_cycle_relaxation():
    # 0 -> 1 <-> 2, node 2 reaches 1 only through a path visiting 1
    graph, w = build_graph([(0, 1, 0.3), (2, 1, 0.4), (1, 2, 0.5)])
    w_prime = WeightVector(graph, [0.6, 0.2, 0.5])

    report = verify_gom(graph, w, w_prime, {0})

    assert report.relaxed
    assert report.superset_differs
    assert report.realizations == 6
    assert report.holds


def test_foreign_weights(single_edge):
    graph, w = single_edge
    _, w_other = build_graph([(1, 0, 0.2)])
    with raises(ValueError):
        verify_gom(graph, w, w_other, {0})


def test_report_dict(single_edge):
    graph, w = single_edge
    data = verify_gom(graph, w, WeightVector(graph, [0.5]), {0}).to_dict()
    assert set(data) == {
        "lhs",
        "rhs",
        "slack",
        "holds",
        "diameter",
        "realizations",
        "relaxed",
        "superset_differs",
        "node_terms",
    }
    assert data["node_terms"] == {"1": approx(0.54)}
    assert data["slack"] == approx(0.24)

    bound = verify_update_bound(graph, w, WeightVector(graph, [0.5]), {0}).to_dict()
    assert bound["holds"] is True
    assert bound["holds_d"] is False


def _random_instance(rng: np.random.Generator):
    n = int(rng.integers(2, 6))
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.5]
    graph = Graph(n, edges)
    seeds = {int(s) for s in np.flatnonzero(rng.random(n) < 0.4)} or {int(rng.integers(n))}
    return graph, random_weights(graph, rng), random_weights(graph, rng), seeds


@pytest.mark.slow
def test_gom_campaign():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        graph, w, w_prime, seeds = _random_instance(rng)
        report = verify_gom(graph, w, w_prime, seeds)
        assert report.holds, (graph, seeds, report.to_dict())
        assert verify_update_bound(graph, w, w_prime, seeds).holds


@pytest.mark.slow
def test_gom_holds_both_ways_and_along_the_segment():
    rng = np.random.default_rng(99)
    for _ in range(30):
        graph, w, w_prime, seeds = _random_instance(rng)
        assert verify_gom(graph, w_prime, w, seeds).holds

        slacks = []
        for lam in np.linspace(0.0, 1.0, 5):
            between = WeightVector(graph, (1.0 - lam) * w.values + lam * w_prime.values)
            report = verify_gom(graph, w, between, seeds)
            assert report.holds, (graph, seeds, lam, report.to_dict())
            slacks.append(report.slack)
        # w against itself
        assert slacks[0] == approx(0.0, abs=1e-9)

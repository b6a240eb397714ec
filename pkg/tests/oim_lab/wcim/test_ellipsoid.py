import math

import numpy as np
import pytest
from pytest import raises

from oim_lab.graph import Graph, build_graph
from oim_lab.utils.modeling import parse_json
from oim_lab.utils.modeling.exceptions import DataValidationError
from oim_lab.wcim import ConfidenceSet, InvalidCoefficients, NodeEllipsoid, SingularGramian, max_linear_over_ellipsoid
from oim_lab.wcim import spd_inverse

GRAM = [[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]]


def test_spd_inverse():
    inv = spd_inverse(0, np.array(GRAM))
    assert inv == pytest.approx(np.array([[5, -2, 1], [-2, 4, -2], [1, -2, 5]]) / 8.0)


@pytest.mark.parametrize(
    "gram",
    [
        [[1.0, 2.0], [0.0, 1.0]],
        [[1.0, 2.0], [2.0, 1.0]],
        [[1e-12, 0.0], [0.0, 1.0]],
    ],
)
def test_spd_inverse_rejects(gram):
    with raises(SingularGramian):
        spd_inverse(3, np.array(gram))


@pytest.mark.parametrize(
    "c,expected",
    [
        ([0.0, 1.0, 0.0], math.sqrt(0.5)),
        ([1.0, 1.0, 0.0], math.sqrt(5 / 8)),
        ([0.0, 1.0, 1.0], math.sqrt(5 / 8)),
        ([1.0, 1.0, 1.0], 1.0),
        ([0.0, 0.0, 0.0], 0.0),
    ],
)
def test_max_linear_over_ellipsoid(c, expected):
    ell = NodeEllipsoid(3, GRAM, [0.0, 0.0, 0.0], 1.0)
    value, argmax = max_linear_over_ellipsoid(c, ell)
    assert value == pytest.approx(expected)
    assert float(np.dot(c, argmax)) == pytest.approx(expected)
    assert ell.contains(argmax)


def test_max_linear_with_estimate():
    ell = NodeEllipsoid.from_estimate(1, [[4.0]], [0.3], 0.4)
    assert ell.estimate == pytest.approx(np.array([0.3]))
    value, argmax = max_linear_over_ellipsoid([1.0], ell)
    assert value == pytest.approx(0.5)
    assert argmax == pytest.approx(np.array([0.5]))


def test_box_clipped_mode():
    ell = NodeEllipsoid.from_estimate(1, [[1.0]], [0.9], 0.5)
    value, argmax = max_linear_over_ellipsoid([1.0], ell, mode="box_clipped")
    assert value == pytest.approx(1.4)
    assert argmax.tolist() == [1.0]

    value, argmax = max_linear_over_ellipsoid([1.0], ell)
    assert argmax == pytest.approx(np.array([1.4]))


@pytest.mark.parametrize("c", [[-1.0, 0.0, 0.0], [1.0, 0.0], [math.nan, 0.0, 0.0]])
def test_max_linear_rejects_coefficients(c):
    ell = NodeEllipsoid(3, GRAM, [0.0, 0.0, 0.0], 1.0)
    with raises(InvalidCoefficients):
        max_linear_over_ellipsoid(c, ell)


def test_membership_and_bounding_box():
    ell = NodeEllipsoid.from_estimate(0, [[100.0]], [0.5], 1.0)
    assert ell.half_widths() == pytest.approx(np.array([0.1]))
    assert ell.contains([0.6])
    assert ell.contains([0.45])
    assert not ell.contains([0.65])
    assert ell.distance([0.7]) == pytest.approx(2.0)

    wide = NodeEllipsoid.from_estimate(0, [[1.0]], [0.5], 1.0)
    assert wide.contains([1.2])
    assert not wide.contains([1.2], box=True)


def test_ellipsoid_validation():
    with raises(SingularGramian):
        NodeEllipsoid(0, [[1.0, 0.0]], [0.0, 0.0], 1.0)
    with raises(InvalidCoefficients):
        NodeEllipsoid(0, [[1.0]], [0.0], -0.1)


def test_confidence_set_shape(two_parents):
    graph, w = two_parents
    prior = ConfidenceSet.prior(graph, 2.0)

    assert list(prior) == [2]
    assert len(prior) == 1
    assert prior[2].dim == 2
    assert prior.estimate().values.tolist() == [0.0, 0.0]
    assert prior.contains(w)
    assert not ConfidenceSet.prior(graph, 0.1).contains(w)

    with raises(InvalidCoefficients):
        ConfidenceSet(graph, {})
    with raises(InvalidCoefficients):
        ConfidenceSet(graph, {2: NodeEllipsoid(2, [[1.0]], [0.0], 1.0)})
    with raises(InvalidCoefficients):
        ConfidenceSet(graph, {2: prior[2], 0: NodeEllipsoid(0, [[1.0]], [0.0], 1.0)})


def test_confidence_set_from_dict(two_parents):
    graph, _ = two_parents
    data = parse_json('{"format_version": 1, "2": {"M": [[2.0, 0.0], [0.0, 2.0]], "b": [0.4, 0.2], "rho": 0.5}}')
    confidence = ConfidenceSet.from_dict(graph, data)

    assert confidence[2].estimate == pytest.approx(np.array([0.2, 0.1]))
    assert confidence.to_dict() == {"2": {"M": [[2.0, 0.0], [0.0, 2.0]], "b": [0.4, 0.2], "rho": 0.5}}

    with raises(DataValidationError):
        ConfidenceSet.from_dict(graph, {"two": {"M": [[1.0]], "b": [0.0], "rho": 0.5}})
    with raises(DataValidationError):
        ConfidenceSet.from_dict(graph, {"2": {"M": [[1.0]], "b": [0.0, 0.0], "rho": 0.5}})


def test_graph_without_edges():
    confidence = ConfidenceSet.prior(Graph(2, []), 1.0)
    assert len(confidence) == 0
    assert confidence.estimate().values.size == 0


def test_estimate_may_leave_feasible_region():
    graph, _ = build_graph([(0, 1, 0.5)])
    confidence = ConfidenceSet(graph, {1: NodeEllipsoid.from_estimate(1, [[1.0]], [1.3], 0.1)})
    est = confidence.estimate()
    assert not est.strict
    assert not est.is_valid()


@pytest.mark.parametrize("seed", range(5))
def test_closed_form_matches_boundary_search(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(2, 2))
    gram = a @ a.T + np.eye(2)
    ell = NodeEllipsoid.from_estimate(0, gram, rng.random(2) * 0.5, 0.1 + rng.random())
    c = rng.random(2)

    # boundary points est + rho * L^-T u for M = L L^T
    chol = np.linalg.cholesky(gram)
    angles = np.linspace(0.0, 2 * math.pi, 20001)
    circle = np.stack([np.cos(angles), np.sin(angles)])
    boundary = ell.estimate[:, None] + ell.rho * np.linalg.solve(chol.T, circle)

    value, argmax = max_linear_over_ellipsoid(c, ell)
    assert value == pytest.approx(float((c @ boundary).max()), abs=1e-5)
    assert ell.contains(argmax)


def test_closed_form_is_optimistic():
    rng = np.random.default_rng(21)
    ell = NodeEllipsoid(3, GRAM, [0.2, 0.1, 0.3], 0.7)
    chol = np.linalg.cholesky(np.array(GRAM))
    for _ in range(500):
        u = rng.normal(size=3)
        u *= rng.random() ** (1 / 3) / np.linalg.norm(u)
        member = ell.estimate + ell.rho * np.linalg.solve(chol.T, u)
        assert ell.contains(member)

        c = rng.random(3)
        value, _ = max_linear_over_ellipsoid(c, ell)
        assert float(c @ member) <= value + 1e-12

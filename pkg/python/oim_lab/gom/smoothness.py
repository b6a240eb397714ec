"""
Exact verification of the bounded smoothness of the LT spread under node-level feedback,

    |r(S, w') - r(S, w)| <= E[ sum_{v not in S} sum_{u in V_{S,v}} sum_{tau1(u) <= tau < tau2(u)} |sum_{E_tau(u)} (w' - w)| ],

with the expectation over thresholds under w, computed by enumerating live-edge realizations.
A realization fixes the activation times, the node at live-edge distance t is active from step t.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Collection, Dict, Iterator, Optional, Tuple

import numpy as np

from oim_lab.constants import GOM_TOLERANCE, LIVE_EDGE_CAP, LONGEST_PATH_NODES_CAP
from oim_lab.graph import (
    Graph,
    WeightVector,
    propagation_diameter,
    relevance_counts,
    relevance_set,
    simple_path_relevance_set,
)
from oim_lab.graph.graph import FloatArray, IntArray
from oim_lab.spread import LiveEdgeTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _NodeTerms:
    """Per-realization observation terms of one node u, for every step tau in 0..D."""

    node: int
    terms: FloatArray
    tau1: IntArray
    tau2: IntArray

    @property
    def in_range(self) -> np.ndarray:
        steps = np.arange(self.terms.shape[1])
        return (steps >= self.tau1[:, None]) & (steps < self.tau2[:, None])

    @property
    def totals(self) -> FloatArray:
        return (self.terms * self.in_range).sum(axis=1)

    @property
    def lengths(self) -> IntArray:
        return np.maximum(self.tau2 - self.tau1, 0)


def _node_terms(
    graph: Graph, diff: FloatArray, depths: IntArray, seeds: Collection[int], diameter: int
) -> Iterator[_NodeTerms]:
    n = graph.n
    for u in range(n):
        parents = list(graph.in_neighbors(u))
        if u in seeds or not parents:
            continue
        d_parents = depths[:, parents]
        active_by = np.stack([d_parents <= tau for tau in range(diameter + 1)], axis=1)
        ids = graph.in_edge_ids(u)
        terms = np.abs(active_by.astype(np.float64) @ diff[ids.start : ids.stop])
        tau1 = np.minimum(d_parents.min(axis=1), diameter + 1)
        tau2 = np.where(depths[:, u] <= n - 1, depths[:, u], diameter + 1)
        yield _NodeTerms(u, terms, tau1, tau2)


@dataclass
class GomReport:
    lhs: float
    rhs: float
    diameter: int
    realizations: int
    # V_{S,v} by reachability on cyclic graphs, a superset of the nodes on paths
    relaxed: bool = False
    superset_differs: bool = False
    node_terms: Dict[int, float] = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= -GOM_TOLERANCE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "diameter": self.diameter,
            "realizations": self.realizations,
            "relaxed": self.relaxed,
            "superset_differs": self.superset_differs,
            "node_terms": {str(u): t for u, t in sorted(self.node_terms.items())},
        }


def _superset_differs(graph: Graph, seeds: Collection[int]) -> bool:
    return any(
        relevance_set(graph, seeds, v) != simple_path_relevance_set(graph, seeds, v)
        for v in range(graph.n)
        if v not in seeds
    )


def _rhs(
    graph: Graph, w: WeightVector, w_prime: WeightVector, seeds: Collection[int], cap: int, path_cap: int
) -> GomReport:
    if w.graph != graph or w_prime.graph != graph:
        raise ValueError("both weight vectors have to be defined on the graph")
    seeds = graph.check_nodes(seeds)
    diameter = propagation_diameter(graph, path_cap)
    counts = relevance_counts(graph, seeds)
    diff = w_prime.values - w.values
    table = LiveEdgeTable(graph, w, cap)

    per_node: Dict[int, float] = {}
    for probs, parents in table.chunks():
        depths = table.depths(parents, seeds)
        for nt in _node_terms(graph, diff, depths, seeds, diameter):
            per_node[nt.node] = per_node.get(nt.node, 0.0) + float(probs @ nt.totals)

    rhs = float(sum(counts[u] * t for u, t in per_node.items()))
    relaxed = not graph.is_dag()
    report = GomReport(0.0, rhs, diameter, table.size, relaxed, relaxed and _superset_differs(graph, seeds), per_node)
    if report.superset_differs:
        logger.info("Reachability relaxation of V_{S,v} differs from the simple path sets for seeds %s", sorted(seeds))
    return report


def gom_rhs_exact(
    graph: Graph,
    w: WeightVector,
    w_prime: WeightVector,
    seeds: Collection[int],
    cap: int = LIVE_EDGE_CAP,
    path_cap: int = LONGEST_PATH_NODES_CAP,
) -> float:
    return _rhs(graph, w, w_prime, seeds, cap, path_cap).rhs


def verify_gom(
    graph: Graph,
    w: WeightVector,
    w_prime: WeightVector,
    seeds: Collection[int],
    cap: int = LIVE_EDGE_CAP,
    path_cap: int = LONGEST_PATH_NODES_CAP,
) -> GomReport:
    report = _rhs(graph, w, w_prime, seeds, cap, path_cap)
    spread = LiveEdgeTable(graph, w, cap).spread(seeds)
    spread_prime = LiveEdgeTable(graph, w_prime, cap).spread(seeds)
    report.lhs = abs(spread_prime - spread)
    if not report.holds:
        logger.error("Bounded smoothness violated for seeds %s: slack %g", sorted(seeds), report.slack)
    return report


@dataclass
class UpdateBoundReport:
    """
    Per realization and node, sum over the tau range of |A_tau^T (w' - w)| against the multiplier
    times its average over the range. The range has D + 1 steps when tau1 = 0 and the node never
    activates, so the bound is checked with both D and D + 1.
    """

    diameter: int
    checked: int = 0
    worst_slack: float = 0.0
    worst_slack_d: float = 0.0
    violations_d: int = 0
    # (realization, node) of the largest violation of the D multiplier
    worst: Optional[Tuple[int, int]] = None

    @property
    def holds(self) -> bool:
        return self.worst_slack >= -GOM_TOLERANCE

    @property
    def holds_d(self) -> bool:
        return self.violations_d == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "diameter": self.diameter,
            "checked": self.checked,
            "worst_slack": self.worst_slack,
            "worst_slack_d": self.worst_slack_d,
            "violations_d": self.violations_d,
            "holds": self.holds,
            "holds_d": self.holds_d,
        }


def verify_update_bound(
    graph: Graph,
    w: WeightVector,
    w_prime: WeightVector,
    seeds: Collection[int],
    cap: int = LIVE_EDGE_CAP,
    path_cap: int = LONGEST_PATH_NODES_CAP,
) -> UpdateBoundReport:
    """
    The expectation over the uniformly drawn step is the exact average over the tau range.
    """

    seeds = graph.check_nodes(seeds)
    diameter = propagation_diameter(graph, path_cap)
    diff = w_prime.values - w.values
    table = LiveEdgeTable(graph, w, cap)
    report = UpdateBoundReport(diameter)
    worst: Tuple[float, int, int] = (0.0, -1, -1)

    start = 0
    for _, parents in table.chunks():
        depths = table.depths(parents, seeds)
        for nt in _node_terms(graph, diff, depths, seeds, diameter):
            lhs = nt.totals
            lengths = nt.lengths
            mean = np.divide(lhs, lengths, out=np.zeros_like(lhs), where=lengths > 0)
            slack = (diameter + 1) * mean - lhs
            slack_d = diameter * mean - lhs
            report.checked += len(lhs)
            report.violations_d += int(np.sum(slack_d < -GOM_TOLERANCE))
            report.worst_slack = min(report.worst_slack, float(slack.min(initial=0.0)))
            i = int(np.argmin(slack_d)) if len(slack_d) else 0
            if len(slack_d) and slack_d[i] < worst[0]:
                worst = (float(slack_d[i]), start + i, nt.node)
        start += parents.shape[0]

    report.worst_slack_d = worst[0]
    if worst[1] >= 0:
        report.worst = (worst[1], worst[2])
    if not report.holds:
        logger.error("Update bound violated for seeds %s: slack %g", sorted(seeds), report.worst_slack)
    return report


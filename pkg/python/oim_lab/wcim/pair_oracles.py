"""
Solvers of the weight-constrained influence maximization problem: jointly pick a seed set S
and weights w' from a confidence set C maximizing the spread r(S, w').
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Collection, Dict, FrozenSet, Iterable, List, Literal, Optional, Tuple

import networkx as nx
import numpy as np

from oim_lab.constants import EPSILON_NET_CAP, SEED_SET_CAP
from oim_lab.exceptions import EnumerationTooLarge, NetTooLarge
from oim_lab.graph import Graph, WeightVector
from oim_lab.graph.exceptions import IndegreeTooLarge, NotADag, NotBipartite
from oim_lab.graph.graph import FloatArray
from oim_lab.spread import ImOracle, OracleSpec
from oim_lab.utils.functional import argmax_lowest

from .ellipsoid import ConfidenceSet, ModeEnum, NodeEllipsoid, max_linear_over_ellipsoid

logger = logging.getLogger(__name__)

ConventionEnum = Literal["edge_sum", "full"]

SUM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PairResult:
    seeds: Tuple[int, ...]
    weights: WeightVector
    value: float
    spec: OracleSpec


@dataclass(frozen=True)
class WcimValue:
    """
    r(S) = max over C of the spread, with per-node values r_S^v and the maximizing weights.
    """

    value: float
    node_values: FloatArray
    weights: WeightVector


ValueFn = Callable[[FrozenSet[int]], WcimValue]
PairOracle = Callable[[Graph, ConfidenceSet, int], PairResult]


def edge_ucb_weights(graph: Graph, confidence: ConfidenceSet) -> WeightVector:
    """
    Upper confidence bound of every edge, min(1, w_hat + rho / sqrt(M)), on graphs with in-degree at most 1.
    """

    ucb: Dict[int, FloatArray] = {}
    for v, ell in confidence.items():
        if ell.dim > 1:
            raise IndegreeTooLarge(v, ell.dim, 1)
        ucb[v] = np.clip(ell.estimate + ell.half_widths(), 0.0, 1.0)
    return WeightVector.from_node_vectors(graph, ucb)


def pair_oracle_edge_ucb(graph: Graph, confidence: ConfidenceSet, k: int, im_oracle: ImOracle) -> PairResult:
    ucb = edge_ucb_weights(graph, confidence)
    res = im_oracle(graph, ucb, k)
    return PairResult(res.seeds, ucb, res.value, res.spec)


def _check_seeds(graph: Graph, seeds: Iterable[int]) -> FrozenSet[int]:
    return graph.check_nodes(seeds)


def wcim_value_dag(
    graph: Graph, confidence: ConfidenceSet, seeds: Collection[int], mode: ModeEnum = "ellipsoid_only"
) -> WcimValue:
    """
    Layered computation of r(S) on DAGs. In-edges of the seeds are deleted, seeds get r = 1,
    sources of the remaining graph r = 0 and every other node the maximum of
    sum_u r_u w'(e_{u,v}) over its ellipsoid, layer by layer.
    """

    if not graph.is_dag():
        raise NotADag(f"{graph!r} contains a cycle")
    seeds = _check_seeds(graph, seeds)

    reduced = nx.DiGraph(graph.to_networkx())
    reduced.remove_edges_from([(u, s) for s in seeds for u in graph.in_neighbors(s)])

    r = np.zeros(graph.n)
    vectors: Dict[int, FloatArray] = {}
    for layer in nx.topological_generations(reduced):
        for v in sorted(layer):
            if v in seeds:
                r[v] = 1.0
                if v in confidence:
                    vectors[v] = confidence[v].estimate
                continue
            if reduced.in_degree(v) == 0:
                continue
            value, argmax = max_linear_over_ellipsoid(r[list(graph.in_neighbors(v))], confidence[v], mode)
            r[v] = value
            vectors[v] = argmax

    weights = WeightVector.from_node_vectors(graph, vectors, strict=False)
    return WcimValue(float(r.sum()), r, weights)


def bipartite_partition(graph: Graph) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """
    Split into sources (no in-edges) and targets; every edge has to go from a source to a target.
    """

    left = frozenset(v for v in range(graph.n) if graph.in_degree(v) == 0)
    for s, t in graph.edges:
        if s not in left:
            raise NotBipartite(f"edge {s} -> {t} does not leave the source partition")
    return left, frozenset(range(graph.n)) - left


def bipartite_value_fn(
    graph: Graph,
    confidence: ConfidenceSet,
    convention: ConventionEnum = "edge_sum",
    mode: ModeEnum = "ellipsoid_only",
) -> ValueFn:
    """
    r(S) for S within the sources, decomposed over targets. The edge-sum convention leaves out
    the |S| activated seeds, the full convention counts them.
    """

    left, right = bipartite_partition(graph)

    def value(seeds: FrozenSet[int]) -> WcimValue:
        if not seeds <= left:
            raise NotBipartite(f"seeds {sorted(seeds - left)} are not in the source partition")
        r = np.zeros(graph.n)
        if convention == "full":
            r[list(seeds)] = 1.0
        vectors: Dict[int, FloatArray] = {}
        for v in sorted(right):
            c = np.array([1.0 if u in seeds else 0.0 for u in graph.in_neighbors(v)])
            r[v], vectors[v] = max_linear_over_ellipsoid(c, confidence[v], mode)
        return WcimValue(float(r.sum()), r, WeightVector.from_node_vectors(graph, vectors, strict=False))

    return value


def bipartite_value(
    graph: Graph,
    confidence: ConfidenceSet,
    seeds: Collection[int],
    convention: ConventionEnum = "edge_sum",
    mode: ModeEnum = "ellipsoid_only",
) -> float:
    return bipartite_value_fn(graph, confidence, convention, mode)(_check_seeds(graph, seeds)).value


def dag_value_fn(graph: Graph, confidence: ConfidenceSet, mode: ModeEnum = "ellipsoid_only") -> ValueFn:
    if not graph.is_dag():
        raise NotADag(f"{graph!r} contains a cycle")
    return lambda seeds: wcim_value_dag(graph, confidence, seeds, mode)


def greedy_pair_oracle(
    graph: Graph,
    confidence: ConfidenceSet,
    k: int,
    value_fn: ValueFn,
    candidates: Optional[Collection[int]] = None,
    spec: Optional[OracleSpec] = None,
) -> PairResult:
    """
    K greedy additions by the largest gain of r(S), ties broken by the lowest id. The weights
    come from the final evaluation; C is a product set, so per-node maximizers form one vector.
    """

    if k < 1:
        raise ValueError(f"seed set size must be positive, got {k}")
    pool = sorted(range(graph.n) if candidates is None else set(candidates))
    chosen: FrozenSet[int] = frozenset()
    current = value_fn(chosen).value
    for _ in range(min(k, len(pool))):
        rest = [u for u in pool if u not in chosen]
        values = [value_fn(chosen | {u}).value for u in rest]
        best = argmax_lowest([v - current for v in values])
        chosen = chosen | {rest[best]}
        current = values[best]

    final = value_fn(chosen)
    spec = spec or OracleSpec("greedy-pair", 1.0 / k)
    return PairResult(tuple(sorted(chosen)), final.weights, final.value, spec)


def exhaustive_pair_oracle(
    graph: Graph,
    confidence: ConfidenceSet,
    k: int,
    value_fn: ValueFn,
    candidates: Optional[Collection[int]] = None,
    cap: int = SEED_SET_CAP,
) -> PairResult:
    """
    Exact maximizer of r(S) over all non-empty seed sets with at most K nodes.
    """

    if k < 1:
        raise ValueError(f"seed set size must be positive, got {k}")
    pool = sorted(range(graph.n) if candidates is None else set(candidates))
    sizes = range(1, min(k, len(pool)) + 1)
    count = sum(math.comb(len(pool), s) for s in sizes)
    if count > cap:
        raise EnumerationTooLarge("seed sets", count, cap)

    best: Optional[Tuple[Tuple[int, ...], WcimValue]] = None
    for size in sizes:
        for seeds in combinations(pool, size):
            res = value_fn(frozenset(seeds))
            if best is None or res.value > best[1].value:
                best = (seeds, res)
    if best is None:
        empty = value_fn(frozenset())
        return PairResult((), empty.weights, empty.value, OracleSpec("exhaustive-pair", 1.0))
    return PairResult(best[0], best[1].weights, best[1].value, OracleSpec("exhaustive-pair", 1.0))


def _axis(lo: float, hi: float, pitch: float) -> FloatArray:
    if lo > hi:
        return np.empty(0)
    points = np.arange(lo, hi, pitch) if pitch > 0 else np.empty(0)
    if points.size == 0 or points[-1] < hi - 1e-12:
        points = np.append(points, hi)
    return points


def _feasible_center(ell: NodeEllipsoid) -> FloatArray:
    center = np.clip(ell.estimate, 0.0, 1.0)
    total = float(center.sum())
    return center / total if total > 1.0 else center


def node_net(ell: NodeEllipsoid, eps: float, cap: int = EPSILON_NET_CAP) -> FloatArray:
    """
    Grid of pitch eps/sqrt(dim) over the bounding box of the ellipsoid clipped to [0, 1],
    filtered to members with in-weights summing to at most 1. The estimate, made feasible,
    is the first point when it is a member. It is the only point when no grid point is.
    """

    if eps <= 0:
        raise ValueError(f"net pitch must be positive, got {eps}")
    pitch = eps / math.sqrt(ell.dim)
    half = ell.half_widths()
    lo = np.maximum(ell.estimate - half, 0.0)
    hi = np.minimum(ell.estimate + half, 1.0)
    axes = [_axis(float(a), float(b), pitch) for a, b in zip(lo, hi)]
    size = math.prod(len(a) for a in axes)
    if size > cap:
        raise NetTooLarge(f"net points of node {ell.node}", size, cap)

    center = _feasible_center(ell)
    points: List[FloatArray] = [center] if ell.contains(center) else []
    if size:
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, ell.dim)
        for p in grid:
            if p.sum() <= 1.0 + SUM_TOLERANCE and ell.contains(p) and not np.allclose(p, center):
                points.append(p)
    if not points:
        logger.warning("No feasible net point in the ellipsoid of node %d, using the feasible estimate", ell.node)
        points.append(center)
    return np.array(points)


def epsilon_net_pair_oracle(
    graph: Graph,
    confidence: ConfidenceSet,
    k: int,
    eps: float,
    im_oracle: ImOracle,
    cap: int = EPSILON_NET_CAP,
) -> PairResult:
    """
    Runs the influence maximization oracle on every point of a product net of C and returns the best pair.
    """

    nodes = list(confidence)
    nets = [node_net(confidence[v], eps, cap) for v in nodes]
    size = math.prod(len(net) for net in nets)
    if size > cap:
        raise NetTooLarge("epsilon-net points", size, cap)
    logger.debug("Searching an epsilon-net of %d points", size)

    best: Optional[Tuple[PairResult, OracleSpec]] = None
    for picks in product(*(range(len(net)) for net in nets)):
        w = WeightVector.from_node_vectors(graph, {v: nets[i][j] for i, (v, j) in enumerate(zip(nodes, picks))})
        res = im_oracle(graph, w, k)
        if best is None or res.value > best[0].value:
            best = (PairResult(res.seeds, w, res.value, res.spec), res.spec)

    assert best is not None
    inner = best[1]
    alpha = inner.alpha * max(0.0, 1.0 - graph.m * graph.n * eps / k)
    return PairResult(best[0].seeds, best[0].weights, best[0].value, OracleSpec("epsilon-net", alpha, inner.beta))

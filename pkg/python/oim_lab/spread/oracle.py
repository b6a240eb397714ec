"""
Offline influence maximization oracles and injectable spread evaluators.
"""

import heapq
import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, FrozenSet, List, Literal, Optional, Tuple

import numpy as np

from oim_lab.constants import LIVE_EDGE_CAP, SEED_SET_CAP
from oim_lab.exceptions import EnumerationTooLarge
from oim_lab.graph import Graph, WeightVector
from oim_lab.utils.functional import argmax_lowest

from .live_edge import LiveEdgeTable, live_edge_count
from .monte_carlo import mc_spread

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleSpec:
    """
    Declared (alpha, beta) approximation of an oracle; regret is scaled by eta = alpha * beta.
    """

    name: str
    alpha: float
    beta: float = 1.0

    @property
    def eta(self) -> float:
        return self.alpha * self.beta


EXACT_ORACLE = OracleSpec("exact", 1.0)
GREEDY_ORACLE = OracleSpec("greedy", 1.0 - 1.0 / math.e)
# beta of the Monte-Carlo greedy is not characterized, success rates are reported instead
GREEDY_MC_ORACLE = OracleSpec("greedy-mc", 1.0 - 1.0 / math.e)


@dataclass(frozen=True)
class OracleResult:
    seeds: Tuple[int, ...]
    value: float
    spec: OracleSpec


class ExactEvaluator:
    """
    Exact spread; the live-edge table of the last weight vector is kept for reuse.
    """

    exact = True

    def __init__(self, cap: int = LIVE_EDGE_CAP) -> None:
        self.cap = cap
        self._table: Optional[LiveEdgeTable] = None

    def table(self, graph: Graph, w: WeightVector) -> LiveEdgeTable:
        if self._table is None or self._table.graph is not graph or self._table.w is not w:
            self._table = LiveEdgeTable(graph, w, self.cap)
        return self._table

    def __call__(self, graph: Graph, w: WeightVector, seeds: FrozenSet[int]) -> float:
        return self.table(graph, w).spread(seeds)


class MonteCarloEvaluator:
    exact = False

    def __init__(self, sims: int, rng: np.random.Generator) -> None:
        self.sims = sims
        self.rng = rng

    def __call__(self, graph: Graph, w: WeightVector, seeds: FrozenSet[int]) -> float:
        if not seeds:
            return 0.0
        return mc_spread(graph, w, seeds, self.sims, self.rng).mean


SpreadEvaluator = Callable[[Graph, WeightVector, FrozenSet[int]], float]
ImOracle = Callable[[Graph, WeightVector, int], OracleResult]


def exact_evaluator(cap: int = LIVE_EDGE_CAP) -> ExactEvaluator:
    return ExactEvaluator(cap)


def mc_evaluator(sims: int, rng: np.random.Generator) -> MonteCarloEvaluator:
    return MonteCarloEvaluator(sims, rng)


def _greedy_spec(value: SpreadEvaluator) -> OracleSpec:
    return GREEDY_ORACLE if getattr(value, "exact", False) else GREEDY_MC_ORACLE


def greedy_im(graph: Graph, w: WeightVector, k: int, value: SpreadEvaluator) -> OracleResult:
    """
    Greedy seed selection with lazy marginal gains; ties are broken by the lowest node id,
    which makes it pick the same seeds as the plain greedy for submodular values.
    """

    if k < 1:
        raise ValueError(f"seed set size must be positive, got {k}")

    chosen: FrozenSet[int] = frozenset()
    current = value(graph, w, chosen)
    # (-gain, node, round of the evaluation, value with the node)
    heap: List[Tuple[float, int, int, float]] = []
    for u in range(graph.n):
        val = value(graph, w, frozenset({u}))
        heap.append((-(val - current), u, 0, val))
    heapq.heapify(heap)

    for rnd in range(min(k, graph.n)):
        while True:
            _, u, stamp, val = heapq.heappop(heap)
            if stamp == rnd:
                chosen = chosen | {u}
                current = val
                break
            val = value(graph, w, chosen | {u})
            heapq.heappush(heap, (-(val - current), u, rnd, val))

    return OracleResult(tuple(sorted(chosen)), current, _greedy_spec(value))


def naive_greedy_im(graph: Graph, w: WeightVector, k: int, value: SpreadEvaluator) -> OracleResult:
    if k < 1:
        raise ValueError(f"seed set size must be positive, got {k}")

    chosen: FrozenSet[int] = frozenset()
    current = value(graph, w, chosen)
    for _ in range(min(k, graph.n)):
        candidates = [u for u in range(graph.n) if u not in chosen]
        values = [value(graph, w, chosen | {u}) for u in candidates]
        best = argmax_lowest([v - current for v in values])
        chosen = chosen | {candidates[best]}
        current = values[best]
    return OracleResult(tuple(sorted(chosen)), current, _greedy_spec(value))


def seed_set_count(n: int, k: int) -> int:
    return math.comb(n, min(k, n))


def exact_opt(
    graph: Graph, w: WeightVector, k: int, cap: int = LIVE_EDGE_CAP, seed_cap: int = SEED_SET_CAP
) -> OracleResult:
    """
    Exhaustive search of the best seed set. Spread is monotone, so only sets with
    min(K, n) nodes are compared; the lexicographically first maximizer wins.
    """

    if k < 1:
        raise ValueError(f"seed set size must be positive, got {k}")
    count = seed_set_count(graph.n, k)
    if count > seed_cap:
        raise EnumerationTooLarge("seed sets", count, seed_cap)

    table = LiveEdgeTable(graph, w, cap)
    best: Tuple[int, ...] = ()
    best_value = -math.inf
    for seeds in combinations(range(graph.n), min(k, graph.n)):
        val = table.spread(seeds)
        if val > best_value:
            best, best_value = seeds, val
    return OracleResult(best, best_value, EXACT_ORACLE)


def is_enumerable(graph: Graph, k: int, cap: int = LIVE_EDGE_CAP, seed_cap: int = SEED_SET_CAP) -> bool:
    return seed_set_count(graph.n, k) <= seed_cap and live_edge_count(graph) <= cap


def make_im_oracle(
    name: Literal["auto", "exact", "greedy"],
    graph: Graph,
    k: int,
    evaluator: SpreadEvaluator,
    cap: int = LIVE_EDGE_CAP,
    seed_cap: int = SEED_SET_CAP,
) -> Tuple[ImOracle, OracleSpec]:
    """
    Influence maximization oracle by name; 'auto' is exhaustive search when the graph is enumerable.
    """

    if name == "auto":
        name = "exact" if is_enumerable(graph, k, cap, seed_cap) else "greedy"
        logger.info("Using the '%s' influence maximization oracle", name)

    if name == "exact":
        return (lambda g, w, kk: exact_opt(g, w, kk, cap, seed_cap)), EXACT_ORACLE
    return (lambda g, w, kk: greedy_im(g, w, kk, evaluator)), _greedy_spec(evaluator)

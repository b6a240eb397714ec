"""
Exact LT spread through the live-edge formulation: every node independently keeps one
in-edge e_{u,v} with probability w(e_{u,v}), or none with probability 1 - sum. The nodes
activated by step t are exactly the nodes within live-edge distance t from the seeds.

Realizations are enumerated with mixed-radix counters over the per-node choices, choices
of probability zero are pruned. Probabilities are accumulated in log space.
"""

import logging
from typing import Collection, Iterator, Optional, Tuple

import numpy as np

from oim_lab.constants import LIVE_EDGE_CAP
from oim_lab.exceptions import EnumerationTooLarge
from oim_lab.graph import Graph, WeightVector
from oim_lab.graph.graph import FloatArray, IntArray

logger = logging.getLogger(__name__)

# realizations processed at once
CHUNK_SIZE = 1 << 14

NO_PARENT = -1


def _choices(graph: Graph, w: WeightVector, v: int) -> Tuple[IntArray, FloatArray]:
    parents = list(graph.in_neighbors(v))
    probs = list(w.node(v))
    rest = 1.0 - float(np.sum(probs))
    pairs = [(u, p) for u, p in zip(parents, probs) if p > 0.0]
    if rest > 0.0:
        pairs.append((NO_PARENT, rest))
    if not pairs:
        pairs.append((NO_PARENT, 1.0))
    return np.array([u for u, _ in pairs], dtype=np.int64), np.array([p for _, p in pairs], dtype=np.float64)


def live_edge_count(graph: Graph, w: Optional[WeightVector] = None) -> int:
    """
    Number of realizations to enumerate, the product of (in-degree + 1), or of the
    number of non-zero choices when weights are given.
    """

    count = 1
    for v in range(graph.n):
        count *= len(_choices(graph, w, v)[0]) if w is not None else graph.in_degree(v) + 1
    return count


class LiveEdgeTable:
    """
    All live-edge realizations of a weighted graph with their probabilities. Only the per-node
    choices are stored, realizations are decoded from their counter one chunk at a time.
    """

    def __init__(
        self, graph: Graph, w: WeightVector, cap: int = LIVE_EDGE_CAP, chunk_size: int = CHUNK_SIZE
    ) -> None:
        if chunk_size < 1:
            raise ValueError(f"chunk size must be positive, got {chunk_size}")
        self.graph = graph
        self.w = w
        self.chunk_size = chunk_size
        self._choices = [_choices(graph, w, v) for v in range(graph.n)]
        self._log_probs = [np.log(probs) for _, probs in self._choices]
        count = 1
        for parents, _ in self._choices:
            count *= len(parents)
        if count > cap:
            raise EnumerationTooLarge("live-edge realizations", count, cap)
        self.size = count
        logger.debug("Enumerating %d live-edge realizations of %r", count, graph)

    def decode(self, start: int, stop: int) -> Tuple[FloatArray, IntArray]:
        """Probabilities and parent tables of realizations start..stop-1, node 0 is the lowest digit."""

        idx = np.arange(start, stop, dtype=np.int64)
        parents: IntArray = np.empty((idx.shape[0], self.graph.n), dtype=np.int64)
        logp = np.zeros(idx.shape[0])
        for v, ((choice, _), logs) in enumerate(zip(self._choices, self._log_probs)):
            digit = idx % len(choice)
            idx //= len(choice)
            parents[:, v] = choice[digit]
            logp += logs[digit]
        return np.exp(logp), parents

    def chunks(self) -> Iterator[Tuple[FloatArray, IntArray]]:
        for start in range(0, self.size, self.chunk_size):
            yield self.decode(start, min(start + self.chunk_size, self.size))

    def depths(self, parents: IntArray, seeds: Collection[int]) -> IntArray:
        """
        Live-edge distance from the seeds for every realization of the chunk, `unreached` marks
        nodes the seeds do not reach. A node reached at distance t is active by step t.
        """

        n = self.graph.n
        unreached = n + 1
        rows = parents.shape[0]
        seed_mask = np.zeros(n, dtype=bool)
        seed_mask[list(seeds)] = True

        d = np.where(seed_mask, 0, unreached) * np.ones((rows, 1), dtype=np.int64)
        has_parent = parents >= 0
        safe = np.where(has_parent, parents, 0)
        for _ in range(max(n - 1, 0)):
            via = np.take_along_axis(d, safe, axis=1) + 1
            nd = np.where(has_parent & ~seed_mask, np.minimum(d, via), d)
            nd = np.minimum(nd, unreached)
            if np.array_equal(nd, d):
                break
            d = nd
        return d

    def activation_probabilities(self, seeds: Collection[int]) -> FloatArray:
        seeds = self.graph.check_nodes(seeds)
        total = np.zeros(self.graph.n)
        for probs, parents in self.chunks():
            reached = self.depths(parents, seeds) <= self.graph.n - 1
            total += probs @ reached
        return np.minimum(total, 1.0)

    def spread(self, seeds: Collection[int]) -> float:
        seeds = self.graph.check_nodes(seeds)
        total = 0.0
        for probs, parents in self.chunks():
            reached = self.depths(parents, seeds) <= self.graph.n - 1
            total += float(probs @ reached.sum(axis=1))
        return total


def exact_spread_lt(graph: Graph, w: WeightVector, seeds: Collection[int], cap: int = LIVE_EDGE_CAP) -> float:
    return LiveEdgeTable(graph, w, cap).spread(seeds)


def exact_activation_probabilities(
    graph: Graph, w: WeightVector, seeds: Collection[int], cap: int = LIVE_EDGE_CAP
) -> FloatArray:
    return LiveEdgeTable(graph, w, cap).activation_probabilities(seeds)


import math
from dataclasses import dataclass
from typing import Collection, Iterator

import numpy as np

from oim_lab.graph import Graph, WeightVector
from oim_lab.graph.graph import FloatArray

# cascades simulated at once
BATCH_SIZE = 4096


@dataclass(frozen=True)
class SpreadEstimate:
    mean: float
    stderr: float
    sims: int


def _lt_batches(
    graph: Graph, w: WeightVector, seeds: Collection[int], sims: int, rng: np.random.Generator
) -> Iterator[np.ndarray]:
    """
    Final active sets of `sims` independent LT cascades, in batches of boolean rows.
    Every cascade draws its n thresholds in node order.
    """

    if sims < 1:
        raise ValueError(f"number of simulations must be positive, got {sims}")
    seeds = graph.check_nodes(seeds)
    weights = np.zeros((graph.n, graph.n))
    weights[graph.sources, graph.targets] = w.values

    done = 0
    while done < sims:
        batch = min(BATCH_SIZE, sims - done)
        thresholds = rng.random((batch, graph.n))
        active = np.zeros((batch, graph.n), dtype=bool)
        active[:, list(seeds)] = True
        for _ in range(max(graph.n - 1, 0)):
            new = ~active & (active.astype(np.float64) @ weights >= thresholds)
            if not new.any():
                break
            active |= new
        yield active
        done += batch


def mc_spread(
    graph: Graph, w: WeightVector, seeds: Collection[int], sims: int, rng: np.random.Generator
) -> SpreadEstimate:
    sizes = np.concatenate([a.sum(axis=1) for a in _lt_batches(graph, w, seeds, sims, rng)]).astype(np.float64)
    stderr = float(sizes.std(ddof=1) / math.sqrt(sims)) if sims > 1 else 0.0
    return SpreadEstimate(float(sizes.mean()), stderr, sims)


def mc_activation_frequencies(
    graph: Graph, w: WeightVector, seeds: Collection[int], sims: int, rng: np.random.Generator
) -> FloatArray:
    counts = np.zeros(graph.n)
    for active in _lt_batches(graph, w, seeds, sims, rng):
        counts += active.sum(axis=0)
    return counts / sims

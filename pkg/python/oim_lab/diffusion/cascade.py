"""
Discrete-time cascades. Under LT, an inactive node v activates at step t+1 when
the weights of its active in-neighbors reach its threshold (weak inequality).
Under IC, every edge gets one chance to fire when its source first activates.
"""

from dataclasses import dataclass
from typing import Any, Collection, Dict, FrozenSet, Literal, Optional, Tuple

import numpy as np

from oim_lab.graph import Graph, WeightVector
from oim_lab.graph.graph import FloatArray, IntArray

ModelEnum = Literal["LT", "IC"]

ThresholdVector = FloatArray


def sample_thresholds(graph: Graph, rng: np.random.Generator) -> ThresholdVector:
    return rng.random(graph.n)


@dataclass(frozen=True)
class DiffusionTrace:
    """
    Activated sets S_0 ⊆ S_1 ⊆ ... of one cascade, ending at the first fixpoint or after `horizon` steps.
    """

    sets: Tuple[FrozenSet[int], ...]
    model: ModelEnum
    horizon: int

    @property
    def seeds(self) -> FrozenSet[int]:
        return self.sets[0]

    @property
    def final(self) -> FrozenSet[int]:
        return self.sets[-1]

    @property
    def steps(self) -> int:
        return len(self.sets) - 1

    def activation_times(self, n: int) -> IntArray:
        """Step at which each node activated, -1 for nodes which never did."""
        times = np.full(n, -1, dtype=np.int64)
        prev: FrozenSet[int] = frozenset()
        for tau, s in enumerate(self.sets):
            for v in s - prev:
                times[v] = tau
            prev = s
        return times


def _start(graph: Graph, seeds: Collection[int]) -> np.ndarray:
    seeds = graph.check_nodes(seeds)
    if not seeds:
        raise ValueError("seed set must not be empty")
    active = np.zeros(graph.n, dtype=bool)
    active[list(seeds)] = True
    return active


def _as_set(active: np.ndarray) -> FrozenSet[int]:
    return frozenset(np.flatnonzero(active).tolist())


def diffuse_lt(
    graph: Graph,
    w: WeightVector,
    seeds: Collection[int],
    thresholds: ThresholdVector,
    horizon: Optional[int] = None,
) -> DiffusionTrace:
    """
    Deterministic LT cascade for fixed thresholds. `horizon` defaults to n - 1 steps,
    which is never reached before the fixpoint.
    """

    active = _start(graph, seeds)
    horizon = max(graph.n - 1, 0) if horizon is None else horizon
    sets = [_as_set(active)]
    for _ in range(horizon):
        pressure = np.bincount(graph.targets, weights=w.values * active[graph.sources], minlength=graph.n)
        new = ~active & (pressure >= thresholds)
        if not new.any():
            break
        active |= new
        sets.append(_as_set(active))
    return DiffusionTrace(tuple(sets), "LT", horizon)


def diffuse_ic(
    graph: Graph,
    w: WeightVector,
    seeds: Collection[int],
    rng: np.random.Generator,
    horizon: Optional[int] = None,
) -> DiffusionTrace:
    active = _start(graph, seeds)
    frontier = active.copy()
    horizon = max(graph.n - 1, 0) if horizon is None else horizon
    sets = [_as_set(active)]
    for _ in range(horizon):
        tried = np.flatnonzero(frontier[graph.sources] & ~active[graph.targets])
        live = tried[rng.random(tried.size) < w.values[tried]]
        new = np.zeros(graph.n, dtype=bool)
        new[graph.targets[live]] = True
        new &= ~active
        if not new.any():
            break
        active |= new
        frontier = new
        sets.append(_as_set(active))
    return DiffusionTrace(tuple(sets), "IC", horizon)


def first_step_activations(trace: DiffusionTrace) -> FrozenSet[int]:
    """Nodes activated in the first step, S_1 minus S_0."""
    if trace.steps == 0:
        return frozenset()
    return trace.sets[1] - trace.sets[0]


def trace_to_dict(trace: DiffusionTrace) -> Dict[str, Any]:
    return {
        "model": trace.model,
        "horizon": trace.horizon,
        "sets": [sorted(s) for s in trace.sets],
    }

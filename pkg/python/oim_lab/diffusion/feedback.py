"""
Node-level feedback of a cascade, distilled into per-node observations.

For a non-seed node v, tau1 is the first step with an active in-neighbor and tau2 the step
at which v activates; both are horizon + 1 when the event never happens. E_tau(v) are the
in-edges of v from nodes active by step tau, stored as positions in `graph.in_neighbors(v)`.
Seeds carry no feedback.
"""

from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from oim_lab.graph import Graph
from oim_lab.graph.graph import FloatArray

from .cascade import DiffusionTrace


@dataclass(frozen=True)
class NodeFeedback:
    node: int
    degree: int
    tau1: int
    tau2: int
    activated: bool
    # E_tau for tau1 <= tau <= tau2 - 1
    edge_sets: Tuple[Tuple[int, ...], ...]

    @property
    def observed(self) -> bool:
        return bool(self.edge_sets)

    def edges_at(self, tau: int) -> Tuple[int, ...]:
        if not self.tau1 <= tau < self.tau2:
            raise ValueError(f"step {tau} is outside of the observed range [{self.tau1}, {self.tau2 - 1}]")
        return self.edge_sets[tau - self.tau1]

    def indicator(self, tau: int) -> FloatArray:
        chi = np.zeros(self.degree)
        chi[list(self.edges_at(tau))] = 1.0
        return chi


FeedbackMap = Dict[int, NodeFeedback]


@dataclass(frozen=True)
class ObservationPair:
    """
    One distilled observation (A_v, y_v) with E[y_v] = A_v^T w_v.
    """

    node: int
    tau: int
    indicator: FloatArray
    label: int


def extract_feedback(trace: DiffusionTrace, graph: Graph) -> FeedbackMap:
    horizon = trace.horizon
    times = trace.activation_times(graph.n)
    # never-activated nodes count as active after the horizon
    reached = np.where(times >= 0, times, horizon + 1)

    res: FeedbackMap = {}
    for v in range(graph.n):
        if v in trace.seeds:
            continue
        parents = graph.in_neighbors(v)
        parent_times = [int(reached[u]) for u in parents]
        tau1 = min((t for t in parent_times if t <= horizon), default=horizon + 1)
        activated = bool(times[v] >= 0)
        tau2 = int(times[v]) if activated else horizon + 1
        edge_sets = tuple(
            tuple(i for i, t in enumerate(parent_times) if t <= tau) for tau in range(tau1, tau2)
        )
        res[v] = NodeFeedback(v, len(parents), tau1, tau2, activated, edge_sets)
    return res


def observation_for(feedback: NodeFeedback, tau: int) -> ObservationPair:
    """
    Observation for a chosen step; the label is positive only at the activation step tau2 - 1.
    """

    label = int(feedback.activated and tau == feedback.tau2 - 1)
    return ObservationPair(feedback.node, tau, feedback.indicator(tau), label)


def distill_update(
    feedback: Mapping[int, NodeFeedback],
    rng: np.random.Generator,
    activated: Optional[Mapping[int, bool]] = None,
) -> Dict[int, ObservationPair]:
    """
    One observation per node with an active in-neighbor, at a step drawn uniformly from [tau1, tau2 - 1].
    Activation flags default to the ones recorded in the feedback.
    """

    res: Dict[int, ObservationPair] = {}
    for v in sorted(feedback):
        fb = feedback[v]
        if not fb.observed:
            continue
        if activated is not None and bool(activated[v]) != fb.activated:
            raise ValueError(f"activation flag of node {v} is inconsistent with its feedback")
        tau = int(rng.integers(fb.tau1, fb.tau2))
        res[v] = observation_for(fb, tau)
    return res

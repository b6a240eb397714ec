"""
LT-LinUCB: optimistic seed selection over confidence ellipsoids of the in-weights of every node,
learned from node-level feedback through rank-1 least squares updates.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Mapping, Optional, Tuple

import numpy as np

from oim_lab.constants import EPSILON_NET_CAP, LIVE_EDGE_CAP, SEED_SET_CAP
from oim_lab.diffusion import DiffusionTrace, ObservationPair, diffuse_lt, distill_update, extract_feedback
from oim_lab.diffusion.cascade import sample_thresholds
from oim_lab.graph import Graph, WeightVector
from oim_lab.graph.exceptions import NotADag
from oim_lab.graph.graph import FloatArray
from oim_lab.spread import OracleSpec, SpreadEvaluator, make_im_oracle
from oim_lab.spread.oracle import GREEDY_ORACLE
from oim_lab.utils.rng import Purpose, ReplicationStreams
from oim_lab.wcim import (
    ConfidenceSet,
    NodeEllipsoid,
    PairOracle,
    PairResult,
    bipartite_partition,
    bipartite_value_fn,
    dag_value_fn,
    epsilon_net_pair_oracle,
    exhaustive_pair_oracle,
    greedy_pair_oracle,
    pair_oracle_edge_ucb,
)
from oim_lab.wcim.ellipsoid import ModeEnum

from .exceptions import InvalidDelta
from .regret import RegretRecord, RegretTracker, SpreadBook

logger = logging.getLogger(__name__)

RadiusModeEnum = Literal["per_node", "theorem"]
PairOracleName = Literal["auto", "edge_ucb", "dag_greedy", "epsilon_net", "exact", "greedy"]


def confidence_radius(dim: int, t: int, delta: float) -> float:
    """
    sqrt(N log(1 + tN) + 2 log(1/delta)) + sqrt(N)
    """

    if not 0.0 < delta <= 1.0:
        raise InvalidDelta(delta)
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    if t < 0:
        raise ValueError(f"round must be non-negative, got {t}")
    return math.sqrt(dim * math.log(1.0 + t * dim) + 2.0 * math.log(1.0 / delta)) + math.sqrt(dim)


def theorem_delta(n: int, horizon: int) -> float:
    """delta = 1 / (n sqrt(T))"""
    if n < 1 or horizon < 1:
        raise ValueError(f"need at least one node and one round, got n={n}, T={horizon}")
    return min(1.0, 1.0 / (n * math.sqrt(horizon)))


class LinUcbState:
    """
    Per-node Gramian M_v = I + sum A A^T, moment b_v = sum y A and the inverse of M_v,
    kept up to date with Sherman-Morrison updates.
    """

    def __init__(self, graph: Graph, delta: float, radius_mode: RadiusModeEnum = "per_node") -> None:
        if not 0.0 < delta <= 1.0:
            raise InvalidDelta(delta)
        self.graph = graph
        self.delta = delta
        self.radius_mode = radius_mode
        self.t = 0
        self.gram: Dict[int, FloatArray] = {}
        self.gram_inv: Dict[int, FloatArray] = {}
        self.moment: Dict[int, FloatArray] = {}
        for v in range(graph.n):
            d = graph.in_degree(v)
            if d:
                self.gram[v] = np.eye(d)
                self.gram_inv[v] = np.eye(d)
                self.moment[v] = np.zeros(d)
        self._fixed_radius: Optional[float] = None

    def radius(self, v: int, round_no: int) -> float:
        if self._fixed_radius is not None:
            return self._fixed_radius
        dim = self.graph.n if self.radius_mode == "theorem" else self.graph.in_degree(v)
        return confidence_radius(dim, round_no, self.delta)

    def fix_radius(self, rho: float) -> None:
        """Use one radius for every node and round instead of the confidence radius."""
        if rho < 0:
            raise ValueError(f"radius must be non-negative, got {rho}")
        self._fixed_radius = rho

    def inject(self, w: WeightVector) -> None:
        """Set the moments so that the estimates equal `w` under the current Gramians."""
        for v in self.gram:
            self.moment[v] = self.gram[v] @ w.node(v)

    def estimate(self, v: int) -> FloatArray:
        return self.gram_inv[v] @ self.moment[v]

    def ellipsoid(self, v: int, round_no: Optional[int] = None) -> NodeEllipsoid:
        """Confidence ellipsoid of node v for the given round, the next one by default."""
        round_no = self.t + 1 if round_no is None else round_no
        return NodeEllipsoid(
            v, self.gram[v], self.moment[v], self.radius(v, round_no), inverse=self.gram_inv[v]
        )

    def confidence_set(self) -> ConfidenceSet:
        return ConfidenceSet.from_state(self.graph, self)

    def update(self, obs: ObservationPair) -> None:
        a = obs.indicator
        inv = self.gram_inv[obs.node]
        ia = inv @ a
        self.gram[obs.node] = self.gram[obs.node] + np.outer(a, a)
        self.gram_inv[obs.node] = inv - np.outer(ia, ia) / (1.0 + float(a @ ia))
        self.moment[obs.node] = self.moment[obs.node] + obs.label * a


@dataclass(frozen=True)
class CoverageRecord:
    round: int
    checked: int
    # nodes whose true in-weights lie outside of their ellipsoid
    outside: Tuple[int, ...]

    @property
    def covered(self) -> bool:
        return not self.outside


@dataclass(frozen=True)
class StepResult:
    pair: PairResult
    trace: DiffusionTrace
    observations: Mapping[int, ObservationPair]
    coverage: CoverageRecord


def resolve_pair_oracle(graph: Graph) -> PairOracleName:
    if graph.max_in_degree <= 1:
        return "edge_ucb"
    if graph.is_dag():
        return "dag_greedy"
    return "epsilon_net"


def select_pair_oracle(
    name: PairOracleName,
    graph: Graph,
    k: int,
    evaluator: SpreadEvaluator,
    epsilon: float = 0.05,
    mode: ModeEnum = "ellipsoid_only",
    live_edge_cap: int = LIVE_EDGE_CAP,
    seed_cap: int = SEED_SET_CAP,
    net_cap: int = EPSILON_NET_CAP,
) -> Tuple[PairOracle, OracleSpec]:
    """
    Pair oracle by name. 'auto' takes the edge UCB when no node has more than one in-edge,
    the layered greedy on DAGs and the epsilon-net otherwise.
    """

    if name == "auto":
        name = resolve_pair_oracle(graph)
        logger.info("Using the '%s' pair oracle", name)

    if name in ("edge_ucb", "epsilon_net"):
        im_oracle, im_spec = make_im_oracle("auto", graph, k, evaluator, live_edge_cap, seed_cap)
        if name == "edge_ucb":
            return (lambda g, c, kk: pair_oracle_edge_ucb(g, c, kk, im_oracle)), im_spec
        alpha = im_spec.alpha * max(0.0, 1.0 - graph.m * graph.n * epsilon / k)
        spec = OracleSpec("epsilon-net", alpha, im_spec.beta)
        return (lambda g, c, kk: epsilon_net_pair_oracle(g, c, kk, epsilon, im_oracle, net_cap)), spec

    if name == "greedy":
        left, _ = bipartite_partition(graph)
        alpha = GREEDY_ORACLE.alpha if graph.max_in_degree <= 2 else 1.0 / k
        spec = OracleSpec("bipartite-greedy", alpha)
        return (
            lambda g, c, kk: greedy_pair_oracle(g, c, kk, bipartite_value_fn(g, c, "full", mode), left, spec)
        ), spec

    if not graph.is_dag():
        raise NotADag(f"the '{name}' pair oracle needs an acyclic graph")
    if name == "exact":
        return (
            lambda g, c, kk: exhaustive_pair_oracle(g, c, kk, dag_value_fn(g, c, mode), cap=seed_cap)
        ), OracleSpec("exhaustive-pair", 1.0)
    spec = OracleSpec("dag-greedy", 1.0 / k)
    return (lambda g, c, kk: greedy_pair_oracle(g, c, kk, dag_value_fn(g, c, mode), spec=spec)), spec


def check_coverage(confidence: ConfidenceSet, w_true: WeightVector, round_no: int) -> CoverageRecord:
    outside = tuple(v for v in confidence if not confidence[v].contains(w_true.node(v)))
    return CoverageRecord(round_no, len(confidence), outside)


def step(
    state: LinUcbState,
    graph: Graph,
    w_true: WeightVector,
    k: int,
    pair_oracle: PairOracle,
    streams: ReplicationStreams,
) -> StepResult:
    """
    One round: optimistic pair from the confidence set, an LT cascade under the true weights
    with fresh thresholds and one distilled observation per node with an active in-neighbor.
    """

    round_no = state.t + 1
    confidence = state.confidence_set()
    coverage = check_coverage(confidence, w_true, round_no)
    pair = pair_oracle(graph, confidence, k)

    thresholds = sample_thresholds(graph, streams.round(Purpose.THRESHOLDS, round_no))
    trace = diffuse_lt(graph, w_true, pair.seeds, thresholds)
    observations = distill_update(extract_feedback(trace, graph), streams.round(Purpose.TAU, round_no))
    for obs in observations.values():
        state.update(obs)
    state.t = round_no
    return StepResult(pair, trace, observations, coverage)


@dataclass
class LinUcbRun:
    records: List[RegretRecord] = field(default_factory=list)
    coverage: List[CoverageRecord] = field(default_factory=list)

    @property
    def coverage_violation_rate(self) -> float:
        """Fraction of (round, node) pairs with the true weights outside of the ellipsoid."""
        checked = sum(c.checked for c in self.coverage)
        if not checked:
            return 0.0
        return sum(len(c.outside) for c in self.coverage) / checked

    @property
    def any_violation_rate(self) -> float:
        """Fraction of rounds with at least one node outside of its ellipsoid."""
        if not self.coverage:
            return 0.0
        return sum(not c.covered for c in self.coverage) / len(self.coverage)


def run(
    graph: Graph,
    w_true: WeightVector,
    k: int,
    horizon: int,
    pair_oracle: PairOracle,
    streams: ReplicationStreams,
    eta_opt: float,
    spread_of: SpreadBook,
    delta: Optional[float] = None,
    radius_mode: RadiusModeEnum = "per_node",
    state: Optional[LinUcbState] = None,
    timing: bool = False,
) -> LinUcbRun:
    """
    `horizon` rounds of LT-LinUCB with regret against `eta_opt`, the scaled optimal spread.
    A prepared state may be passed in, otherwise the learner starts from the identity prior.
    """

    if state is None:
        state = LinUcbState(graph, theorem_delta(graph.n, max(horizon, 1)) if delta is None else delta, radius_mode)
    tracker = RegretTracker(eta_opt, timing)
    res = LinUcbRun()
    progress = max(horizon // 10, 1)
    for t in range(1, horizon + 1):
        tracker.start_round()
        out = step(state, graph, w_true, k, pair_oracle, streams)
        res.coverage.append(out.coverage)
        rec = tracker.record(out.pair.seeds, spread_of(out.pair.seeds))
        res.records.append(rec)
        if t % progress == 0:
            logger.debug("Replication %d, round %d/%d, regret %.4f", streams.replication, t, horizon, rec.cum_regret)
    return res

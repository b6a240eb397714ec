"""
OIM-ETC: explore with every node as a singleton seed, estimate edge weights from first-step
activations, then commit to one oracle seed set.
"""

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, List, Literal, Optional

import numpy as np

from oim_lab.constants import LIVE_EDGE_CAP, SEED_SET_CAP
from oim_lab.diffusion import diffuse_ic, diffuse_lt, first_step_activations, sample_thresholds
from oim_lab.exceptions import EnumerationTooLarge
from oim_lab.graph import Graph, WeightVector
from oim_lab.graph.graph import IntArray
from oim_lab.spread import ImOracle, LiveEdgeTable, OracleResult
from oim_lab.utils.rng import Purpose, ReplicationStreams

from .exceptions import MissingGap
from .regret import RegretRecord, RegretTracker, SpreadBook

logger = logging.getLogger(__name__)

BudgetModeEnum = Literal["dependent", "independent", "manual"]
GAP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class EtcConfig:
    """
    k exploration rounds per node, K seeds and T rounds. The model only drives the exploration
    feedback, regret is always measured by the LT spread.
    """

    k: int
    seeds_count: int
    horizon: int
    model: Literal["LT", "IC"] = "LT"
    budget_mode: BudgetModeEnum = "manual"
    delta_min: Optional[float] = None
    delta_max: Optional[float] = None

    def validate(self, n: int) -> None:
        if self.k < 1:
            raise ValueError(f"exploration budget must be positive, got {self.k}")
        if n * self.k > self.horizon:
            raise ValueError(f"{n} nodes explored {self.k} times do not fit into {self.horizon} rounds")


class EdgeEstimates:
    def __init__(self, graph: Graph) -> None:
        self.graph = graph
        self.successes: IntArray = np.zeros(graph.m, dtype=np.int64)
        self.trials: IntArray = np.zeros(graph.m, dtype=np.int64)

    def record(self, u: int, activated: FrozenSet[int]) -> None:
        """One sample of every out-edge of u, successful when its target activated in the first step."""
        for v in self.graph.out_neighbors(u):
            e = self.graph.edge_id(u, v)
            self.trials[e] += 1
            self.successes[e] += int(v in activated)

    def means(self) -> WeightVector:
        mean = np.divide(
            self.successes, self.trials, out=np.zeros(self.graph.m), where=self.trials > 0
        ).astype(np.float64)
        return WeightVector(self.graph, mean, strict=False)

    def feasible_means(self) -> WeightVector:
        """Means scaled down per node where the in-weights sum above 1."""
        w = self.means()
        sums = w.node_sums()
        scale = np.where(sums > 1.0, 1.0 / np.maximum(sums, 1.0), 1.0)
        return WeightVector(self.graph, w.values * scale[self.graph.targets])


def exploration_budget(
    m: int, n: int, horizon: int, mode: Literal["dependent", "independent"], delta_min: Optional[float] = None
) -> int:
    """
    Rounds per node. The dependent rule is (2 m^2 n^2 / gap^2) ln(T gap^2 / (m n^3)), the independent
    one 3.9 (m^2 T / n)^(2/3); both are rounded up and clamped to [1, T / n].
    """

    if n < 1 or horizon < 1:
        raise ValueError(f"need at least one node and one round, got n={n}, T={horizon}")
    if mode == "dependent":
        if delta_min is None or delta_min <= 0:
            raise MissingGap("dependent exploration budget needs a positive smallest gap")
        arg = horizon * delta_min**2 / (m * n**3) if m else 0.0
        k = 1 if arg <= 1.0 else math.ceil(2.0 * m**2 * n**2 / delta_min**2 * math.log(arg))
    else:
        k = math.ceil(3.9 * (m**2 * horizon / n) ** (2.0 / 3.0))
    return max(1, min(k, horizon // n))


@dataclass(frozen=True)
class GapReport:
    opt: float
    delta_min: Optional[float]
    delta_max: Optional[float]


def seed_set_gaps(
    graph: Graph,
    w: WeightVector,
    k: int,
    alpha: float = 1.0,
    cap: int = LIVE_EDGE_CAP,
    seed_cap: int = SEED_SET_CAP,
) -> GapReport:
    """
    Smallest and largest gap alpha * Opt - r(S) over the bad seed sets, the ones below alpha * Opt.
    Both are None when no seed set is bad.
    """

    size = min(k, graph.n)
    count = math.comb(graph.n, size)
    if count > seed_cap:
        raise EnumerationTooLarge("seed sets", count, seed_cap)
    table = LiveEdgeTable(graph, w, cap)
    values = [table.spread(s) for s in combinations(range(graph.n), size)]
    opt = max(values)
    gaps = [alpha * opt - r for r in values if r < alpha * opt - GAP_TOLERANCE]
    if not gaps:
        return GapReport(opt, None, None)
    return GapReport(opt, min(gaps), max(gaps))


def etc_regret_bound(
    mode: Literal["dependent", "independent"],
    m: int,
    n: int,
    horizon: int,
    delta_min: Optional[float] = None,
    delta_max: Optional[float] = None,
) -> float:
    if mode == "independent":
        return 3.9 * (m * n) ** (4.0 / 3.0) * horizon ** (2.0 / 3.0) + 1.0
    if delta_min is None or delta_max is None or delta_min <= 0:
        raise MissingGap("the gap-dependent regret bound needs both gaps")
    log_term = max(0.0, math.log(horizon * delta_min**2 / (m * n**3))) if m else 0.0
    return min(
        horizon * delta_max,
        n * delta_max + 2.0 * m**2 * n**3 * delta_max / delta_min**2 * (1.0 + log_term),
    )


@dataclass
class EtcRun:
    records: List[RegretRecord] = field(default_factory=list)
    estimates: Optional[EdgeEstimates] = None
    committed: Optional[OracleResult] = None
    exploration_rounds: int = 0


def _explore(
    graph: Graph, w_true: WeightVector, u: int, model: str, streams: ReplicationStreams, t: int
) -> FrozenSet[int]:
    if model == "IC":
        trace = diffuse_ic(graph, w_true, {u}, streams.round(Purpose.IC_EDGES, t), horizon=1)
    else:
        thresholds = sample_thresholds(graph, streams.round(Purpose.THRESHOLDS, t))
        trace = diffuse_lt(graph, w_true, {u}, thresholds, horizon=1)
    return first_step_activations(trace)


def run_etc(
    graph: Graph,
    w_true: WeightVector,
    config: EtcConfig,
    im_oracle: ImOracle,
    streams: ReplicationStreams,
    eta_opt: float,
    spread_of: SpreadBook,
    timing: bool = False,
) -> EtcRun:
    """
    n * k exploration rounds, node u = (t - 1) mod n seeded alone in round t, then one oracle call
    on the estimated weights and T - n * k rounds with the committed seed set.
    """

    config.validate(graph.n)
    tracker = RegretTracker(eta_opt, timing)
    estimates = EdgeEstimates(graph)
    res = EtcRun(estimates=estimates, exploration_rounds=graph.n * config.k)

    explore = res.exploration_rounds
    for t in range(1, explore + 1):
        tracker.start_round()
        u = (t - 1) % graph.n
        estimates.record(u, _explore(graph, w_true, u, config.model, streams, t))
        res.records.append(tracker.record((u,), spread_of((u,))))

    committed = im_oracle(graph, estimates.feasible_means(), config.seeds_count)
    res.committed = committed
    logger.debug("Replication %d committed to seeds %s", streams.replication, list(committed.seeds))
    for _ in range(explore + 1, config.horizon + 1):
        tracker.start_round()
        res.records.append(tracker.record(committed.seeds, spread_of(committed.seeds)))
    return res

"""
Scaled regret accounting, R(t) = R(t - 1) + eta * Opt - r(S_t, w).
"""

import time
from dataclasses import dataclass
from typing import Collection, Dict, FrozenSet, List, Tuple

from oim_lab.graph import Graph, WeightVector
from oim_lab.spread import SpreadEvaluator


@dataclass(frozen=True)
class RegretRecord:
    round: int
    seeds: Tuple[int, ...]
    spread: float
    eta_opt: float
    cum_regret: float
    ms_elapsed: float = 0.0


class SpreadBook:
    """
    Spreads of seed sets under the true weights, evaluated once per seed set.
    """

    def __init__(self, graph: Graph, w_true: WeightVector, evaluator: SpreadEvaluator) -> None:
        self.graph = graph
        self.w_true = w_true
        self.evaluator = evaluator
        self._memo: Dict[FrozenSet[int], float] = {}

    def __call__(self, seeds: Collection[int]) -> float:
        key = frozenset(seeds)
        if key not in self._memo:
            self._memo[key] = self.evaluator(self.graph, self.w_true, key)
        return self._memo[key]

    def __len__(self) -> int:
        return len(self._memo)


class RegretTracker:
    def __init__(self, eta_opt: float, timing: bool = False) -> None:
        self.eta_opt = eta_opt
        self.timing = timing
        self.records: List[RegretRecord] = []
        self._cum = 0.0
        self._mark = time.perf_counter()

    def start_round(self) -> None:
        self._mark = time.perf_counter()

    def record(self, seeds: Collection[int], spread: float) -> RegretRecord:
        self._cum += self.eta_opt - spread
        elapsed = (time.perf_counter() - self._mark) * 1000.0 if self.timing else 0.0
        rec = RegretRecord(len(self.records) + 1, tuple(sorted(seeds)), spread, self.eta_opt, self._cum, elapsed)
        self.records.append(rec)
        return rec

    @property
    def cum_regret(self) -> float:
        return self._cum

"""
Probes of diminishing returns for set functions such as r(S) = max over C of the spread.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Collection, Dict, FrozenSet, Iterator, List, Optional, Tuple, Union

import numpy as np

from .pair_oracles import WcimValue

logger = logging.getLogger(__name__)

SetFunction = Callable[[FrozenSet[int]], Union[float, WcimValue]]


@dataclass(frozen=True)
class SubmodularityViolation:
    """
    r(S + u) - r(S) < r(S' + u) - r(S') although S is a subset of S'.
    """

    subset: Tuple[int, ...]
    superset: Tuple[int, ...]
    node: int
    subset_gain: float
    superset_gain: float


@dataclass
class SubmodularityReport:
    checked: int = 0
    violations: List[SubmodularityViolation] = field(default_factory=list)
    # (S, u) with r(S + u) < r(S)
    monotonicity_violations: List[Tuple[Tuple[int, ...], int]] = field(default_factory=list)

    @property
    def submodular(self) -> bool:
        return not self.violations

    @property
    def monotone(self) -> bool:
        return not self.monotonicity_violations


def _subsets(nodes: Tuple[int, ...]) -> Iterator[FrozenSet[int]]:
    for size in range(len(nodes) + 1):
        for subset in combinations(nodes, size):
            yield frozenset(subset)


def _enumerated_triples(nodes: Tuple[int, ...]) -> Iterator[Tuple[FrozenSet[int], FrozenSet[int], int]]:
    for superset in _subsets(nodes):
        rest = [u for u in nodes if u not in superset]
        if not rest:
            continue
        for subset in _subsets(tuple(sorted(superset))):
            for u in rest:
                yield subset, superset, u


def _sampled_triples(
    nodes: Tuple[int, ...], samples: int, rng: np.random.Generator
) -> Iterator[Tuple[FrozenSet[int], FrozenSet[int], int]]:
    for _ in range(samples):
        u = int(rng.choice(nodes))
        others = [v for v in nodes if v != u]
        superset = frozenset(v for v in others if rng.random() < 0.5)
        subset = frozenset(v for v in superset if rng.random() < 0.5)
        yield subset, superset, u


def submodularity_probe(
    value_fn: SetFunction,
    nodes: Collection[int],
    samples: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
    tol: float = 1e-9,
) -> SubmodularityReport:
    """
    Compares marginal gains over triples (S, S', u) with S inside S' and u outside S'.
    All triples are enumerated unless a sample count is given, then they are drawn with `rng`.
    """

    ground = tuple(sorted(set(nodes)))
    cache: Dict[FrozenSet[int], float] = {}

    def value(s: FrozenSet[int]) -> float:
        if s not in cache:
            res = value_fn(s)
            cache[s] = float(res.value if isinstance(res, WcimValue) else res)
        return cache[s]

    if samples is None:
        triples = _enumerated_triples(ground)
    else:
        if rng is None:
            raise ValueError("sampling the triples needs a random generator")
        triples = _sampled_triples(ground, samples, rng)

    report = SubmodularityReport()
    for subset, superset, u in triples:
        report.checked += 1
        small = value(subset | {u}) - value(subset)
        large = value(superset | {u}) - value(superset)
        if small < large - tol:
            report.violations.append(
                SubmodularityViolation(tuple(sorted(subset)), tuple(sorted(superset)), u, small, large)
            )
        if large < -tol:
            report.monotonicity_violations.append((tuple(sorted(superset)), u))

    logger.debug("Checked %d triples, found %d violations", report.checked, len(report.violations))
    return report

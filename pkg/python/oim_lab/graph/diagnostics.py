"""
Graph-dependent quantities of the regret analysis: relevance sets V_{S,v}, the counts
N_{S,u} and gamma(G), and the propagation diameter D.
"""

import logging
import math
from itertools import combinations
from typing import Collection, FrozenSet, List, Literal, Set

import networkx as nx
import numpy as np
import numpy.typing as npt

from oim_lab.constants import LONGEST_PATH_NODES_CAP, SEED_SET_CAP
from oim_lab.exceptions import EnumerationTooLarge

from .graph import Graph, IntArray

logger = logging.getLogger(__name__)

BoolArray = npt.NDArray[np.bool_]


def reachability_matrix(graph: Graph) -> BoolArray:
    """R[u, v] is True when v is reachable from u, including u == v."""
    reach = np.eye(graph.n, dtype=bool)
    g = graph.to_networkx()
    for u in range(graph.n):
        for v in nx.descendants(g, u):
            reach[u, v] = True
    return reach


def relevance_set(graph: Graph, seeds: Collection[int], v: int) -> FrozenSet[int]:
    """
    Nodes reachable from the seeds which reach v. On DAGs these are exactly the nodes
    on some path from the seeds to v, on cyclic graphs it is a superset of them.
    """

    g = graph.to_networkx()
    from_seeds: Set[int] = set(seeds)
    for s in seeds:
        from_seeds |= nx.descendants(g, s)
    if v not in from_seeds:
        return frozenset()
    return frozenset(from_seeds & (nx.ancestors(g, v) | {v}))


def simple_path_relevance_set(graph: Graph, seeds: Collection[int], v: int) -> FrozenSet[int]:
    """
    Nodes lying on a simple path from some seed to v, found by path enumeration.
    Exponential, meant for the few-node instances of the verifiers.
    """

    g = graph.to_networkx()
    res: Set[int] = set()
    for s in seeds:
        if s == v:
            res.add(v)
            continue
        for path in nx.all_simple_paths(g, s, v):
            res.update(path)
    return frozenset(res)


def relevance_counts(graph: Graph, seeds: Collection[int], reach: "BoolArray | None" = None) -> IntArray:
    """
    N_{S,u} for every node u, the number of non-seed nodes v with u in V_{S,v}.
    """

    if reach is None:
        reach = reachability_matrix(graph)
    seed_idx = np.fromiter(seeds, dtype=np.int64)
    reached = reach[seed_idx].any(axis=0) if seed_idx.size else np.zeros(graph.n, dtype=bool)
    non_seed = np.ones(graph.n, dtype=bool)
    non_seed[seed_idx] = False
    # u in V_{S,v} iff u is reached and u reaches v; such v is reached as well
    return np.where(reached, reach[:, non_seed].sum(axis=1), 0).astype(np.int64)


def gamma_of_seed_set(graph: Graph, seeds: Collection[int], reach: "BoolArray | None" = None) -> float:
    counts = relevance_counts(graph, seeds, reach)
    return float(math.sqrt(float(np.sum(counts.astype(np.float64) ** 2))))


def gamma_diagnostic(
    graph: Graph, k: int, mode: Literal["exact", "bound"] = "exact", cap: int = SEED_SET_CAP
) -> float:
    """
    gamma(G), the maximal L2 norm of the relevance counts over feasible seed sets.

    The exact mode enumerates all seed sets with min(K, n) nodes, the bound mode
    returns (n - K) * sqrt(n).
    """

    if k < 1:
        raise ValueError(f"seed set size must be positive, got {k}")
    n = graph.n
    if mode == "bound":
        return float(max(n - k, 0) * math.sqrt(n))

    size = min(k, n)
    count = math.comb(n, size)
    if count > cap:
        raise EnumerationTooLarge("seed sets for gamma(G)", count, cap)

    reach = reachability_matrix(graph)
    best = 0.0
    for seeds in combinations(range(n), size):
        best = max(best, gamma_of_seed_set(graph, seeds, reach))
    return best


def _longest_simple_path_from(adj: List[List[int]], start: int, n: int) -> int:
    best = 0
    visited = [False] * n
    visited[start] = True
    stack = [(start, 0, iter(adj[start]))]
    while stack:
        node, depth, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            visited[node] = False
            stack.pop()
            continue
        if visited[nxt]:
            continue
        visited[nxt] = True
        best = max(best, depth + 1)
        if best == n - 1:
            return best
        stack.append((nxt, depth + 1, iter(adj[nxt])))
    return best


def propagation_diameter(graph: Graph, cap: int = LONGEST_PATH_NODES_CAP) -> int:
    """
    D, the number of edges of the longest simple path. Exhaustive search on cyclic graphs.
    """

    if graph.m == 0:
        return 0
    if graph.is_dag():
        return int(nx.dag_longest_path_length(graph.to_networkx()))
    if graph.n > cap:
        raise EnumerationTooLarge("nodes for the longest simple path search", graph.n, cap)

    adj = [list(graph.out_neighbors(u)) for u in range(graph.n)]
    best = 0
    for u in range(graph.n):
        best = max(best, _longest_simple_path_from(adj, u, graph.n))
        if best == graph.n - 1:
            break
    logger.debug("Longest simple path of %r has %d edges", graph, best)
    return best

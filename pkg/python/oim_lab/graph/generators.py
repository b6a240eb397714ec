import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, Literal, Optional, Tuple

import networkx as nx
import numpy as np

from oim_lab.datamodel.experiment_schema import GeneratorSchema
from oim_lab.utils.rng import make_rng

from .exceptions import UnsupportedFamilySize
from .graph import FloatArray, Graph, WeightVector

logger = logging.getLogger(__name__)

# keeps normalized in-weight sums strictly below 1
NORMALIZATION_EPSILON = 1e-6

Edges = List[Tuple[int, int]]


@dataclass(frozen=True)
class GraphFamilyParams:
    """
    Parameters of one of the generated graph families.

    Undirected families (grid, complete) are encoded as pairs of opposite edges.
    """

    family: str
    n: Optional[int] = None
    pairs: Optional[int] = None
    rays: Optional[int] = None
    length: Optional[int] = None
    rows: Optional[int] = None
    cols: Optional[int] = None
    left: Optional[int] = None
    right: Optional[int] = None
    p: Optional[float] = None
    max_indegree: Optional[int] = None
    weights: Literal["constant", "random"] = "constant"
    weight: float = 0.1
    seed: int = 0

    @classmethod
    def from_schema(cls, schema: GeneratorSchema) -> "GraphFamilyParams":
        def opt_int(x: object) -> Optional[int]:
            return None if x is None else int(x)  # type: ignore[call-overload]

        return cls(
            family=schema.family,
            n=opt_int(schema.n),
            pairs=opt_int(schema.pairs),
            rays=opt_int(schema.rays),
            length=opt_int(schema.length),
            rows=opt_int(schema.rows),
            cols=opt_int(schema.cols),
            left=opt_int(schema.left),
            right=opt_int(schema.right),
            p=None if schema.p is None else float(schema.p),
            max_indegree=opt_int(schema.max_indegree),
            weights=schema.weights,
            weight=float(schema.weight),
            seed=int(schema.seed),
        )


def _require(params: GraphFamilyParams, name: str, minimum: int = 1) -> int:
    value = getattr(params, name)
    if value is None or value < minimum:
        raise UnsupportedFamilySize(f"family '{params.family}' requires '{name}' >= {minimum}, got {value}")
    return int(value)


def _probability(params: GraphFamilyParams, default: Optional[float] = None) -> float:
    p = params.p if params.p is not None else default
    if p is None:
        raise UnsupportedFamilySize(f"family '{params.family}' requires the edge probability 'p'")
    return float(p)


def _bar(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    pairs = _require(params, "pairs")
    return 2 * pairs, [(2 * i, 2 * i + 1) for i in range(pairs)]


def _chain(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    n = _require(params, "n", 2)
    return n, [(i, i + 1) for i in range(n - 1)]


def _star(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    n = _require(params, "n", 2)
    return n, [(0, i) for i in range(1, n)]


def _ray(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    rays = _require(params, "rays")
    length = _require(params, "length")
    edges: Edges = []
    for r in range(rays):
        prev = 0
        for j in range(length):
            node = 1 + r * length + j
            edges.append((prev, node))
            prev = node
    return 1 + rays * length, edges


def _tree(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    n = _require(params, "n", 2)
    return n, [((i - 1) // 2, i) for i in range(1, n)]


def _grid(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    rows = _require(params, "rows")
    cols = _require(params, "cols")
    if rows * cols < 2:
        raise UnsupportedFamilySize("family 'grid' requires at least 2 cells")
    edges: Edges = []
    for r, c in product(range(rows), range(cols)):
        node = r * cols + c
        if c + 1 < cols:
            edges += [(node, node + 1), (node + 1, node)]
        if r + 1 < rows:
            edges += [(node, node + cols), (node + cols, node)]
    return rows * cols, edges


def _complete(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    n = _require(params, "n", 2)
    return n, [(u, v) for u in range(n) for v in range(n) if u != v]


def _bipartite(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    left = _require(params, "left")
    right = _require(params, "right")
    edges: Edges = []
    if params.max_indegree is not None:
        k = min(_require(params, "max_indegree"), left)
        for j in range(right):
            for u in sorted(rng.choice(left, size=k, replace=False).tolist()):
                edges.append((u, left + j))
    else:
        mask = rng.random((left, right)) < _probability(params, 0.5)
        edges = [(int(u), left + int(j)) for u, j in zip(*np.nonzero(mask))]
    return left + right, edges


def _dag(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    n = _require(params, "n", 2)
    p = _probability(params, 0.5)
    return n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


def _erdos_renyi(params: GraphFamilyParams, rng: np.random.Generator) -> Tuple[int, Edges]:
    n = _require(params, "n")
    g = nx.gnp_random_graph(n, _probability(params), seed=params.seed, directed=True)
    return n, [(int(u), int(v)) for u, v in g.edges()]


_FAMILIES: Dict[str, Callable[[GraphFamilyParams, np.random.Generator], Tuple[int, Edges]]] = {
    "bar": _bar,
    "chain": _chain,
    "star": _star,
    "ray": _ray,
    "tree": _tree,
    "grid": _grid,
    "complete": _complete,
    "bipartite": _bipartite,
    "dag": _dag,
    "erdos_renyi": _erdos_renyi,
}

FAMILIES = tuple(_FAMILIES)


def normalize_weights(graph: Graph, values: FloatArray) -> FloatArray:
    """
    Scale the in-weights of every node whose sum exceeds 1 by 1/(sum + eps).
    """

    values = np.array(values, dtype=np.float64)
    sums = np.bincount(graph.targets, weights=values, minlength=graph.n)
    scale = np.where(sums > 1.0, 1.0 / (sums + NORMALIZATION_EPSILON), 1.0)
    return values * scale[graph.targets]


def random_weights(graph: Graph, rng: np.random.Generator) -> WeightVector:
    return WeightVector(graph, normalize_weights(graph, rng.random(graph.m)))


def generate(params: GraphFamilyParams) -> Tuple[Graph, WeightVector]:
    """
    Generate a member of the family. The result is deterministic for a fixed seed.
    """

    if params.family not in _FAMILIES:
        raise UnsupportedFamilySize(f"unknown graph family '{params.family}'")
    if not 0.0 <= params.weight <= 1.0:
        raise UnsupportedFamilySize(f"constant weight {params.weight} is not in [0, 1]")

    rng = make_rng(params.seed)
    n, edges = _FAMILIES[params.family](params, rng)
    graph = Graph(n, edges)

    if params.weights == "random":
        raw = rng.random(graph.m)
    else:
        raw = np.full(graph.m, params.weight)
    w = WeightVector(graph, normalize_weights(graph, raw))

    logger.debug("Generated %s %r with seed %d", params.family, graph, params.seed)
    return graph, w

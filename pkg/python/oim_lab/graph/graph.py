"""
Directed graphs with per-edge weights grouped by target node.

Edge ids follow the (target, source) order, so the in-edges of a node form a contiguous
block of ids and `w_v` is a slice of the global weight vector ordered by source id.
This fixes the coordinate system of every per-node vector in the package.
"""

import logging
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import numpy.typing as npt

from oim_lab.constants import FORMAT_VERSION
from oim_lab.datamodel.graph_file_schema import GraphFileSchema
from oim_lab.utils.modeling.parsing import dump_file, parse_file

from .exceptions import (
    DuplicateEdge,
    GraphError,
    InvalidNode,
    SelfLoop,
    WeightOutOfRange,
    WeightSumExceedsOne,
)

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]

# slack for sums produced by normalization
WEIGHT_SUM_TOLERANCE = 1e-12


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class Graph:
    """
    Immutable directed graph on dense node ids 0..n-1 without self-loops and duplicate edges.
    """

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]]) -> None:
        if n < 0:
            raise GraphError(f"number of nodes must be non-negative, got {n}")

        seen = set()
        for s, t in edges:
            for node in (s, t):
                if not 0 <= node < n:
                    raise InvalidNode(f"node id {node} is out of range 0..{n - 1}")
            if s == t:
                raise SelfLoop(s)
            if (s, t) in seen:
                raise DuplicateEdge(s, t)
            seen.add((s, t))

        self.n = n
        self._edges: Tuple[Tuple[int, int], ...] = tuple(sorted(seen, key=lambda e: (e[1], e[0])))
        self.sources: IntArray = _readonly(np.array([s for s, _ in self._edges], dtype=np.int64))
        self.targets: IntArray = _readonly(np.array([t for _, t in self._edges], dtype=np.int64))

        in_ptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(in_ptr, self.targets + 1, 1)
        self.in_ptr: IntArray = _readonly(np.cumsum(in_ptr))

        ins: List[List[int]] = [[] for _ in range(n)]
        outs: List[List[int]] = [[] for _ in range(n)]
        for s, t in self._edges:
            ins[t].append(s)
            outs[s].append(t)
        self._in = tuple(tuple(x) for x in ins)
        self._out = tuple(tuple(sorted(x)) for x in outs)
        self._edge_index: Dict[Tuple[int, int], int] = {e: i for i, e in enumerate(self._edges)}
        self._nx: Optional[nx.DiGraph] = None

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return self._edges

    @property
    def nodes(self) -> range:
        return range(self.n)

    def in_neighbors(self, v: int) -> Tuple[int, ...]:
        return self._in[v]

    def out_neighbors(self, v: int) -> Tuple[int, ...]:
        return self._out[v]

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    @property
    def max_in_degree(self) -> int:
        return max((len(x) for x in self._in), default=0)

    def in_edge_ids(self, v: int) -> range:
        return range(int(self.in_ptr[v]), int(self.in_ptr[v + 1]))

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._edge_index[(u, v)]
        except KeyError as e:
            raise GraphError(f"there is no edge {u} -> {v}") from e

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_index

    def check_nodes(self, nodes: Iterable[int]) -> FrozenSet[int]:
        res = frozenset(int(x) for x in nodes)
        for node in res:
            if not 0 <= node < self.n:
                raise InvalidNode(f"node id {node} is out of range 0..{self.n - 1}")
        return res

    def to_networkx(self) -> nx.DiGraph:
        """Frozen networkx view of the graph, built lazily."""
        if self._nx is None:
            g = nx.DiGraph()
            g.add_nodes_from(range(self.n))
            g.add_edges_from(self._edges)
            self._nx = nx.freeze(g)
        return self._nx

    def is_dag(self) -> bool:
        return nx.is_directed_acyclic_graph(self.to_networkx())

    def __eq__(self, o: object) -> bool:
        return isinstance(o, Graph) and o.n == self.n and o._edges == self._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class WeightVector:
    """
    Per-edge weights of a graph, addressable globally by edge id and per target node.

    Strict vectors are valid LT weights: every weight in [0, 1] and in-edge weights of
    every node summing to at most 1. Non-strict vectors carry representative weights
    of confidence sets, which may leave that region.
    """

    def __init__(self, graph: Graph, values: Union[Sequence[float], FloatArray], strict: bool = True) -> None:
        arr = np.array(values, dtype=np.float64)
        if arr.shape != (graph.m,):
            raise GraphError(f"expected {graph.m} weights, got an array of shape {arr.shape}")
        self.graph = graph
        self.values: FloatArray = _readonly(arr)
        self.strict = strict
        if strict:
            self.validate()

    def validate(self) -> None:
        bad = np.flatnonzero((self.values < 0.0) | (self.values > 1.0) | ~np.isfinite(self.values))
        if bad.size:
            e = int(bad[0])
            s, t = self.graph.edges[e]
            raise WeightOutOfRange(s, t, float(self.values[e]))
        sums = self.node_sums()
        over = np.flatnonzero(sums > 1.0 + WEIGHT_SUM_TOLERANCE)
        if over.size:
            v = int(over[0])
            raise WeightSumExceedsOne(v, float(sums[v]))

    def is_valid(self) -> bool:
        try:
            self.validate()
        except GraphError:
            return False
        return True

    def node_sums(self) -> FloatArray:
        return np.bincount(self.graph.targets, weights=self.values, minlength=self.graph.n)

    def node(self, v: int) -> FloatArray:
        """w_v, ordered like `graph.in_neighbors(v)`."""
        return self.values[self.graph.in_ptr[v] : self.graph.in_ptr[v + 1]]

    def of(self, u: int, v: int) -> float:
        return float(self.values[self.graph.edge_id(u, v)])

    def __getitem__(self, edge_id: int) -> float:
        return float(self.values[edge_id])

    def __len__(self) -> int:
        return len(self.values)

    def replace(self, edge_id: int, value: float) -> "WeightVector":
        arr = self.values.copy()
        arr[edge_id] = value
        return WeightVector(self.graph, arr, strict=self.strict)

    def to_edge_list(self) -> List[Tuple[int, int, float]]:
        return [(s, t, float(w)) for (s, t), w in zip(self.graph.edges, self.values)]

    def __eq__(self, o: object) -> bool:
        return isinstance(o, WeightVector) and o.graph == self.graph and np.array_equal(o.values, self.values)

    def __hash__(self) -> int:
        return hash((self.graph, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"WeightVector({self.values.tolist()})"

    @classmethod
    def constant(cls, graph: Graph, value: float) -> "WeightVector":
        return cls(graph, np.full(graph.m, value))

    @classmethod
    def from_node_vectors(
        cls,
        graph: Graph,
        vectors: Mapping[int, Union[Sequence[float], FloatArray]],
        strict: bool = True,
        fill: float = 0.0,
    ) -> "WeightVector":
        """
        Assemble a global vector from per-node vectors. Nodes missing from `vectors` get `fill`.
        """

        arr = np.full(graph.m, fill, dtype=np.float64)
        for v, vec in vectors.items():
            ids = graph.in_edge_ids(v)
            vec = np.asarray(vec, dtype=np.float64)
            if vec.shape != (len(ids),):
                raise GraphError(f"node {v} has {len(ids)} in-edges, got a vector of shape {vec.shape}")
            arr[ids.start : ids.stop] = vec
        return cls(graph, arr, strict=strict)


def build_graph(
    edge_list: Iterable[Tuple[int, int, float]], n: Optional[int] = None, strict: bool = True
) -> Tuple[Graph, WeightVector]:
    """
    Build a graph and its weights from (source, target, weight) triples.
    Without `n`, the graph has max(id) + 1 nodes.
    """

    triples = [(int(s), int(t), float(w)) for s, t, w in edge_list]
    if n is None:
        n = max((max(s, t) for s, t, _ in triples), default=-1) + 1

    graph = Graph(n, [(s, t) for s, t, _ in triples])
    values = np.zeros(graph.m)
    for s, t, w in triples:
        values[graph.edge_id(s, t)] = w
    return graph, WeightVector(graph, values, strict=strict)


def graph_to_dict(graph: Graph, w: WeightVector) -> Dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "n": graph.n,
        "edges": [list(e) for e in w.to_edge_list()],
    }


def dump_graph(graph: Graph, w: WeightVector, path: Path) -> None:
    dump_file(path, graph_to_dict(graph, w))


def graph_from_dict(data: Any, object_path: str = "") -> Tuple[Graph, WeightVector]:
    schema = GraphFileSchema(data, object_path=object_path)
    return build_graph(schema.edges, n=int(schema.n))


def load_graph(path: Path) -> Tuple[Graph, WeightVector]:
    graph, w = graph_from_dict(parse_file(path))
    logger.debug("Loaded %r from '%s'", graph, path)
    return graph, w


def load_weights(path: Path, graph: Graph) -> WeightVector:
    """
    Load weights of `graph` from a file in the graph file format. The edge sets have to match.
    """

    other, w = load_graph(path)
    if other != graph:
        raise GraphError(f"weights in '{path}' are defined on a different graph than expected")
    return w

"""
Per-node confidence ellipsoids C_v = {w' : ||w' - w_hat||_M <= rho} and the closed-form
maximization of non-negative linear functions over them.
"""

from typing import Any, Dict, Iterator, Literal, Mapping, Optional, Protocol, Tuple, Union

import numpy as np

from oim_lab.constants import PIVOT_TOLERANCE
from oim_lab.datamodel.graph_file_schema import ConfidenceSetData, NodeEllipsoidSchema
from oim_lab.graph import Graph, WeightVector
from oim_lab.graph.graph import FloatArray
from oim_lab.utils.modeling.base_schema import map_object
from oim_lab.utils.modeling.exceptions import DataValidationError

from .exceptions import InvalidCoefficients, SingularGramian

ModeEnum = Literal["ellipsoid_only", "box_clipped"]

MEMBERSHIP_TOLERANCE = 1e-12


def spd_inverse(node: int, gram: FloatArray) -> FloatArray:
    """
    Inverse through the Cholesky factor; pivots below the tolerance are rejected.
    """

    if not np.allclose(gram, gram.T, rtol=0.0, atol=1e-9 * max(1.0, float(np.abs(gram).max(initial=0.0)))):
        raise SingularGramian(node, "the matrix is not symmetric")
    try:
        factor = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as e:
        raise SingularGramian(node, str(e)) from e
    pivots = np.diag(factor) ** 2
    if pivots.size and pivots.min() < PIVOT_TOLERANCE:
        raise SingularGramian(node, f"pivot {pivots.min():g} is below {PIVOT_TOLERANCE:g}")
    factor_inv = np.linalg.solve(factor, np.eye(gram.shape[0]))
    return factor_inv.T @ factor_inv


class NodeEllipsoid:
    def __init__(
        self,
        node: int,
        gram: Union[FloatArray, Any],
        moment: Union[FloatArray, Any],
        rho: float,
        inverse: Optional[FloatArray] = None,
    ) -> None:
        self.node = node
        self.gram = np.array(gram, dtype=np.float64, ndmin=2)
        self.moment = np.array(moment, dtype=np.float64, ndmin=1)
        dim = self.moment.shape[0]
        if self.gram.shape != (dim, dim):
            raise SingularGramian(node, f"expected a {dim}x{dim} matrix, got shape {self.gram.shape}")
        if rho < 0:
            raise InvalidCoefficients(f"radius of node {node} must be non-negative, got {rho}")
        self.rho = float(rho)
        self._inverse = inverse if inverse is not None else spd_inverse(node, self.gram)
        self.estimate: FloatArray = self._inverse @ self.moment

    @classmethod
    def from_estimate(cls, node: int, gram: Any, estimate: Any, rho: float) -> "NodeEllipsoid":
        gram = np.array(gram, dtype=np.float64, ndmin=2)
        return cls(node, gram, gram @ np.array(estimate, dtype=np.float64, ndmin=1), rho)

    @property
    def dim(self) -> int:
        return self.moment.shape[0]

    @property
    def inverse(self) -> FloatArray:
        return self._inverse

    def distance(self, w: Any) -> float:
        """||w - w_hat||_M"""
        diff = np.asarray(w, dtype=np.float64) - self.estimate
        return float(np.sqrt(max(float(diff @ self.gram @ diff), 0.0)))

    def contains(self, w: Any, box: bool = False) -> bool:
        w = np.asarray(w, dtype=np.float64)
        inside = self.distance(w) <= self.rho * (1.0 + MEMBERSHIP_TOLERANCE) + MEMBERSHIP_TOLERANCE
        if box:
            inside = inside and bool(np.all((w >= 0.0) & (w <= 1.0)))
        return inside

    def half_widths(self) -> FloatArray:
        """Half-widths of the axis-aligned bounding box around the estimate."""
        return self.rho * np.sqrt(np.diag(self._inverse))

    def to_dict(self) -> Dict[str, Any]:
        return {"M": self.gram.tolist(), "b": self.moment.tolist(), "rho": self.rho}

    def __repr__(self) -> str:
        return f"NodeEllipsoid(node={self.node}, dim={self.dim}, rho={self.rho})"


def max_linear_over_ellipsoid(
    c: Any, ell: NodeEllipsoid, mode: ModeEnum = "ellipsoid_only"
) -> Tuple[float, FloatArray]:
    """
    max c^T w' over the ellipsoid, c^T w_hat + rho * ||c||_{M^-1}, with its maximizer.

    The box-clipped mode reports the maximizer clamped to [0, 1] and keeps the unclamped
    value, an optimistic bound of the box-constrained optimum.
    """

    c = np.asarray(c, dtype=np.float64)
    if c.shape != (ell.dim,):
        raise InvalidCoefficients(f"expected {ell.dim} coefficients for node {ell.node}, got shape {c.shape}")
    if not np.all(np.isfinite(c)) or np.any(c < 0):
        raise InvalidCoefficients(f"coefficients must be finite and non-negative, got {c.tolist()}")

    scaled = ell.inverse @ c
    norm_sq = float(c @ scaled)
    if norm_sq <= 0.0:
        return float(c @ ell.estimate), ell.estimate.copy()

    norm = float(np.sqrt(norm_sq))
    value = float(c @ ell.estimate) + ell.rho * norm
    argmax = ell.estimate + ell.rho * scaled / norm
    if mode == "box_clipped":
        argmax = np.clip(argmax, 0.0, 1.0)
    return value, argmax


class EllipsoidSource(Protocol):
    def ellipsoid(self, v: int) -> NodeEllipsoid: ...


class ConfidenceSet(Mapping[int, NodeEllipsoid]):
    """
    Product of per-node ellipsoids, one for every node with an in-edge.
    """

    def __init__(self, graph: Graph, ellipsoids: Mapping[int, NodeEllipsoid]) -> None:
        self.graph = graph
        self._ellipsoids: Dict[int, NodeEllipsoid] = {}
        for v in range(graph.n):
            degree = graph.in_degree(v)
            if degree == 0:
                continue
            if v not in ellipsoids:
                raise InvalidCoefficients(f"missing ellipsoid of node {v}")
            ell = ellipsoids[v]
            if ell.dim != degree:
                raise InvalidCoefficients(f"ellipsoid of node {v} has dimension {ell.dim}, in-degree is {degree}")
            self._ellipsoids[v] = ell
        extra = set(ellipsoids) - set(self._ellipsoids)
        if extra:
            raise InvalidCoefficients(f"ellipsoids given for nodes without in-edges: {sorted(extra)}")

    def __getitem__(self, v: int) -> NodeEllipsoid:
        return self._ellipsoids[v]

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._ellipsoids))

    def __len__(self) -> int:
        return len(self._ellipsoids)

    def estimate(self) -> WeightVector:
        return WeightVector.from_node_vectors(
            self.graph, {v: e.estimate for v, e in self._ellipsoids.items()}, strict=False
        )

    def contains(self, w: WeightVector, box: bool = False) -> bool:
        return all(e.contains(w.node(v), box) for v, e in self._ellipsoids.items())

    def to_dict(self) -> Dict[str, Any]:
        return {str(v): e.to_dict() for v, e in sorted(self._ellipsoids.items())}

    @classmethod
    def from_state(cls, graph: Graph, state: EllipsoidSource) -> "ConfidenceSet":
        return cls(graph, {v: state.ellipsoid(v) for v in range(graph.n) if graph.in_degree(v) > 0})

    @classmethod
    def prior(cls, graph: Graph, rho: float) -> "ConfidenceSet":
        """Identity Gramians and zero estimates."""
        return cls(
            graph,
            {
                v: NodeEllipsoid(v, np.eye(graph.in_degree(v)), np.zeros(graph.in_degree(v)), rho)
                for v in range(graph.n)
                if graph.in_degree(v) > 0
            },
        )

    @classmethod
    def from_dict(cls, graph: Graph, data: Any) -> "ConfidenceSet":
        """
        Parse {node: {"M": [[...]], "b": [...], "rho": r}}, an optional top-level 'format_version' is ignored.
        """

        if hasattr(data, "original"):
            data = data.original()
        data = {k: v for k, v in data.items() if k != "format_version"}
        parsed: ConfidenceSetData = map_object(ConfidenceSetData, data)
        ellipsoids: Dict[int, NodeEllipsoid] = {}
        for key, entry in parsed.items():
            try:
                v = int(key)
            except ValueError as e:
                raise DataValidationError(f"node id expected, got '{key}'", f"/{key}") from e
            ellipsoids[v] = NodeEllipsoid(v, entry.M, entry.b, float(entry.rho))
        return cls(graph, ellipsoids)

from typing import Dict, List, Tuple

from oim_lab.constants import FORMAT_VERSION
from oim_lab.datamodel.types import FloatNonNegative, IntNonNegative
from oim_lab.utils.modeling import BaseSchema


class GraphFileSchema(BaseSchema):
    """
    Directed weighted graph. Weight files share this format.

    ---
    format_version: Version of the file format.
    n: Number of nodes, ids are 0..n-1.
    edges: List of [source, target, weight] triples.
    """

    format_version: int = FORMAT_VERSION
    n: IntNonNegative
    edges: List[Tuple[int, int, float]]

    def _validate(self) -> None:
        if self.format_version != FORMAT_VERSION:
            raise ValueError(f"unsupported format version {self.format_version}, expected {FORMAT_VERSION}")


class NodeEllipsoidSchema(BaseSchema):
    """
    Confidence ellipsoid of one node.

    ---
    M: Gramian, a symmetric positive-definite matrix over the in-edges of the node.
    b: Moment vector.
    rho: Radius.
    """

    M: List[List[float]]
    b: List[float]
    rho: FloatNonNegative

    def _validate(self) -> None:
        dim = len(self.b)
        if len(self.M) != dim or any(len(row) != dim for row in self.M):
            raise ValueError(f"Gramian has to be a {dim}x{dim} matrix to match the moment vector")


ConfidenceSetData = Dict[str, NodeEllipsoidSchema]

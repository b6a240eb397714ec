from oim_lab.exceptions import OimValidationError


class GraphError(OimValidationError):
    """
    Base class of invalid graphs and weight vectors.
    """


class InvalidNode(GraphError):
    pass


class DuplicateEdge(GraphError):
    def __init__(self, source: int, target: int) -> None:
        super().__init__(f"duplicate edge {source} -> {target}")
        self.source = source
        self.target = target


class SelfLoop(GraphError):
    def __init__(self, node: int) -> None:
        super().__init__(f"self-loop on node {node}")
        self.node = node


class WeightOutOfRange(GraphError):
    def __init__(self, source: int, target: int, weight: float) -> None:
        super().__init__(f"weight {weight} of edge {source} -> {target} is not in [0, 1]")
        self.source = source
        self.target = target
        self.weight = weight


class WeightSumExceedsOne(GraphError):
    def __init__(self, node: int, total: float) -> None:
        super().__init__(f"in-edge weights of node {node} sum to {total} > 1")
        self.node = node
        self.total = total


class UnsupportedFamilySize(GraphError):
    pass


class NotADag(GraphError):
    pass


class NotBipartite(GraphError):
    pass


class IndegreeTooLarge(GraphError):
    def __init__(self, node: int, degree: int, limit: int) -> None:
        super().__init__(f"node {node} has in-degree {degree}, at most {limit} is supported")
        self.node = node
        self.degree = degree
        self.limit = limit

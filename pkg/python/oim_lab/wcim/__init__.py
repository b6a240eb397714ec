from .ellipsoid import ConfidenceSet, NodeEllipsoid, max_linear_over_ellipsoid, spd_inverse
from .exceptions import InvalidCoefficients, SingularGramian
from .pair_oracles import (
    PairOracle,
    PairResult,
    ValueFn,
    WcimValue,
    bipartite_partition,
    bipartite_value,
    bipartite_value_fn,
    dag_value_fn,
    edge_ucb_weights,
    epsilon_net_pair_oracle,
    exhaustive_pair_oracle,
    greedy_pair_oracle,
    node_net,
    pair_oracle_edge_ucb,
    wcim_value_dag,
)
from .submodularity import SubmodularityReport, SubmodularityViolation, submodularity_probe

__all__ = [
    "ConfidenceSet",
    "InvalidCoefficients",
    "NodeEllipsoid",
    "PairOracle",
    "PairResult",
    "SingularGramian",
    "SubmodularityReport",
    "SubmodularityViolation",
    "ValueFn",
    "WcimValue",
    "bipartite_partition",
    "bipartite_value",
    "bipartite_value_fn",
    "dag_value_fn",
    "edge_ucb_weights",
    "epsilon_net_pair_oracle",
    "exhaustive_pair_oracle",
    "greedy_pair_oracle",
    "max_linear_over_ellipsoid",
    "node_net",
    "pair_oracle_edge_ucb",
    "spd_inverse",
    "submodularity_probe",
    "wcim_value_dag",
]

from .live_edge import LiveEdgeTable, exact_activation_probabilities, exact_spread_lt, live_edge_count
from .monte_carlo import SpreadEstimate, mc_activation_frequencies, mc_spread
from .oracle import (
    EXACT_ORACLE,
    GREEDY_MC_ORACLE,
    GREEDY_ORACLE,
    ImOracle,
    OracleResult,
    OracleSpec,
    SpreadEvaluator,
    exact_evaluator,
    exact_opt,
    greedy_im,
    is_enumerable,
    make_im_oracle,
    mc_evaluator,
    naive_greedy_im,
)

__all__ = [
    "EXACT_ORACLE",
    "GREEDY_MC_ORACLE",
    "GREEDY_ORACLE",
    "ImOracle",
    "LiveEdgeTable",
    "OracleResult",
    "OracleSpec",
    "SpreadEstimate",
    "SpreadEvaluator",
    "exact_activation_probabilities",
    "exact_evaluator",
    "exact_opt",
    "exact_spread_lt",
    "greedy_im",
    "is_enumerable",
    "live_edge_count",
    "make_im_oracle",
    "mc_activation_frequencies",
    "mc_evaluator",
    "mc_spread",
    "naive_greedy_im",
]

from .etc import (
    EdgeEstimates,
    EtcConfig,
    EtcRun,
    GapReport,
    etc_regret_bound,
    exploration_budget,
    run_etc,
    seed_set_gaps,
)
from .exceptions import InvalidDelta, MissingGap
from .ltlinucb import (
    CoverageRecord,
    LinUcbRun,
    LinUcbState,
    StepResult,
    confidence_radius,
    resolve_pair_oracle,
    run,
    select_pair_oracle,
    step,
    theorem_delta,
)
from .regret import RegretRecord, RegretTracker, SpreadBook

__all__ = [
    "CoverageRecord",
    "EdgeEstimates",
    "EtcConfig",
    "EtcRun",
    "GapReport",
    "InvalidDelta",
    "LinUcbRun",
    "LinUcbState",
    "MissingGap",
    "RegretRecord",
    "RegretTracker",
    "SpreadBook",
    "StepResult",
    "confidence_radius",
    "etc_regret_bound",
    "exploration_budget",
    "resolve_pair_oracle",
    "run",
    "run_etc",
    "seed_set_gaps",
    "select_pair_oracle",
    "step",
    "theorem_delta",
]

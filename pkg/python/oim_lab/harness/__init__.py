from .experiment import (
    CSV_COLUMNS,
    ExperimentPlan,
    ReplicationResult,
    build_instance,
    load_experiment,
    plan_experiment,
    records_frame,
    run_experiment,
    run_replication,
    run_replications,
    summarize,
)
from .logging import configure_logging, logger_startup

__all__ = [
    "CSV_COLUMNS",
    "ExperimentPlan",
    "ReplicationResult",
    "build_instance",
    "configure_logging",
    "load_experiment",
    "logger_startup",
    "plan_experiment",
    "records_frame",
    "run_experiment",
    "run_replication",
    "run_replications",
    "summarize",
]

from typing import Any, Dict

from .experiment_schema import ExperimentSchema
from .graph_file_schema import GraphFileSchema, NodeEllipsoidSchema
from .logging_schema import LoggingSchema


def experiment_json_schema() -> Dict[str, Any]:
    return ExperimentSchema.json_schema(
        schema_id="https://oim-lab.invalid/experiment.schema.json",
        title="oim-lab experiment configuration",
    )


__all__ = [
    "ExperimentSchema",
    "GraphFileSchema",
    "LoggingSchema",
    "NodeEllipsoidSchema",
    "experiment_json_schema",
]

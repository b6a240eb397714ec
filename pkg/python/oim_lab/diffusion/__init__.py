from .cascade import (
    DiffusionTrace,
    ThresholdVector,
    diffuse_ic,
    diffuse_lt,
    first_step_activations,
    sample_thresholds,
    trace_to_dict,
)
from .feedback import NodeFeedback, ObservationPair, distill_update, extract_feedback, observation_for

__all__ = [
    "DiffusionTrace",
    "NodeFeedback",
    "ObservationPair",
    "ThresholdVector",
    "diffuse_ic",
    "diffuse_lt",
    "distill_update",
    "extract_feedback",
    "first_step_activations",
    "observation_for",
    "sample_thresholds",
    "trace_to_dict",
]

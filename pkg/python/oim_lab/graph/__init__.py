from .diagnostics import (
    gamma_diagnostic,
    propagation_diameter,
    relevance_counts,
    relevance_set,
    simple_path_relevance_set,
)
from .generators import GraphFamilyParams, generate, random_weights
from .graph import Graph, WeightVector, build_graph, dump_graph, load_graph, load_weights

__all__ = [
    "Graph",
    "GraphFamilyParams",
    "WeightVector",
    "build_graph",
    "dump_graph",
    "gamma_diagnostic",
    "generate",
    "load_graph",
    "load_weights",
    "propagation_diameter",
    "random_weights",
    "relevance_counts",
    "relevance_set",
    "simple_path_relevance_set",
]

import logging
import os
from typing import Any, Literal, Optional, Union

from oim_lab.constants import (
    EPSILON_NET_CAP,
    FORMAT_VERSION,
    LIVE_EDGE_CAP,
    LONGEST_PATH_NODES_CAP,
    MC_SIMULATIONS,
    SEED_SET_CAP,
)
from oim_lab.datamodel.logging_schema import LoggingSchema
from oim_lab.datamodel.types import FilePath, FloatPositive, FloatUnit, IntNonNegative, IntPositive, Probability
from oim_lab.utils.modeling import ConfigSchema

logger = logging.getLogger(__name__)

GraphFamilyEnum = Literal[
    "bar", "chain", "star", "ray", "tree", "grid", "complete", "bipartite", "dag", "erdos_renyi"
]
AlgorithmEnum = Literal["lt_linucb", "oim_etc"]
PairOracleEnum = Literal["auto", "edge_ucb", "dag_greedy", "epsilon_net", "exact", "greedy"]


def _cpu_count() -> int:
    cpus = os.cpu_count()
    if cpus is None:
        logger.warning("The number of usable CPUs could not be determined using 'os.cpu_count()', using one worker.")
        return 1
    return cpus


class GeneratorSchema(ConfigSchema):
    """
    Parameters of a generated graph family. Which size parameters are required depends on the family.

    ---
    family: Graph family.
    n: Number of nodes (chain, star, tree, complete, dag, erdos_renyi).
    pairs: Number of disjoint edges (bar).
    rays: Number of rays leaving the center (ray).
    length: Length of every ray (ray).
    rows: Number of grid rows (grid).
    cols: Number of grid columns (grid).
    left: Size of the source partition (bipartite).
    right: Size of the target partition (bipartite).
    p: Edge probability (bipartite, dag, erdos_renyi).
    max_indegree: Number of random sources picked for every target, an alternative to 'p' (bipartite).
    weights: Weight assignment rule, a constant or uniform random numbers, normalized per node when needed.
    weight: The constant weight.
    seed: Seed of the generator.
    """

    family: GraphFamilyEnum
    n: Optional[IntPositive] = None
    pairs: Optional[IntPositive] = None
    rays: Optional[IntPositive] = None
    length: Optional[IntPositive] = None
    rows: Optional[IntPositive] = None
    cols: Optional[IntPositive] = None
    left: Optional[IntPositive] = None
    right: Optional[IntPositive] = None
    p: Optional[FloatUnit] = None
    max_indegree: Optional[IntPositive] = None
    weights: Literal["constant", "random"] = "constant"
    weight: FloatUnit = FloatUnit(0.1)
    seed: IntNonNegative = IntNonNegative(0)

    def _validate(self) -> None:
        if self.p is not None and self.max_indegree is not None:
            raise ValueError("'p' and 'max-indegree' are mutually exclusive")


class GraphSchema(ConfigSchema):
    """
    Source of the graph, a file or a generator.

    ---
    file: Graph file in JSON format.
    generator: Generated graph family.
    """

    file: Optional[FilePath] = None
    generator: Optional[GeneratorSchema] = None

    def _validate(self) -> None:
        if (self.file is None) == (self.generator is None):
            raise ValueError("exactly one of 'file' and 'generator' has to be configured")


class BudgetSchema(ConfigSchema):
    """
    Exploration budget of OIM-ETC, rounds per node.

    ---
    mode: 'dependent' uses the smallest gap of bad seed sets, 'independent' only the horizon, 'manual' takes 'k'.
    k: Exploration rounds per node (manual mode).
    delta_min: Smallest gap for the dependent mode. Computed by enumeration when not set.
    """

    mode: Literal["dependent", "independent", "manual"] = "independent"
    k: Optional[IntPositive] = None
    delta_min: Optional[FloatPositive] = None

    def _validate(self) -> None:
        if self.mode == "manual" and self.k is None:
            raise ValueError("manual budget mode requires 'k'")
        if self.mode != "manual" and self.k is not None:
            raise ValueError(f"'k' cannot be set in '{self.mode}' budget mode")
        if self.mode != "dependent" and self.delta_min is not None:
            raise ValueError("'delta-min' is used only in 'dependent' budget mode")


class EvaluationSchema(ConfigSchema):
    """
    Evaluation of the per-round spread and of the baseline.

    ---
    mode: 'exact' enumerates live-edge graphs, 'mc' simulates, 'auto' picks exact when it fits the caps.
    sims: Number of Monte-Carlo simulations per evaluation.
    """

    mode: Literal["auto", "exact", "mc"] = "auto"
    sims: IntPositive = IntPositive(MC_SIMULATIONS)


class CapsSchema(ConfigSchema):
    """
    Limits of the brute-force computations.

    ---
    live_edge: Maximal number of live-edge realizations to enumerate.
    seed_sets: Maximal number of seed sets to enumerate.
    epsilon_net: Maximal number of points of an epsilon-net.
    longest_path_nodes: Maximal number of nodes for the exhaustive longest simple path search.
    """

    live_edge: IntPositive = IntPositive(LIVE_EDGE_CAP)
    seed_sets: IntPositive = IntPositive(SEED_SET_CAP)
    epsilon_net: IntPositive = IntPositive(EPSILON_NET_CAP)
    longest_path_nodes: IntPositive = IntPositive(LONGEST_PATH_NODES_CAP)


class OutputSchema(ConfigSchema):
    """
    Output files.

    ---
    csv: CSV file with one row per replication and round.
    summary: JSON summary, defaults to the CSV path with the '.json' suffix.
    timing: Record wall-clock time per round. Disabled runs are byte-identical on rerun.
    """

    csv: FilePath
    summary: Optional[FilePath] = None
    timing: bool = False


class ExperimentSchema(ConfigSchema):
    class Raw(ConfigSchema):
        """
        Online influence maximization experiment.

        ---
        format_version: Version of the configuration format.
        graph: Source of the graph.
        algorithm: Online algorithm.
        oracle: Offline oracle. 'auto' picks by the graph class.
        seeds_count: Seed set size K.
        horizon: Number of rounds T.
        delta: Failure probability of the confidence ellipsoids, 'auto' is 1/(n*sqrt(T)).
        radius_mode: 'per_node' radii use the in-degree of the node, 'theorem' uses n for all nodes.
        epsilon: Pitch of the epsilon-net oracle.
        budget: Exploration budget of OIM-ETC.
        model: Diffusion model of OIM-ETC exploration.
        replications: Number of independent replications.
        master_seed: Seed all random streams are derived from.
        evaluation: Evaluation of spreads.
        caps: Limits of the brute-force computations.
        workers: Number of worker processes for replications. If set to 'auto', it is equal to the number of CPUs.
        output: Output files.
        logging: Logging configuration.
        """

        format_version: int = FORMAT_VERSION
        graph: GraphSchema
        algorithm: AlgorithmEnum
        oracle: PairOracleEnum = "auto"
        seeds_count: IntPositive = IntPositive(1)
        horizon: IntPositive
        delta: Union[Literal["auto"], Probability] = "auto"
        radius_mode: Literal["per_node", "theorem"] = "per_node"
        epsilon: Probability = Probability(0.05)
        budget: BudgetSchema = BudgetSchema()
        model: Literal["LT", "IC"] = "LT"
        replications: IntPositive = IntPositive(1)
        master_seed: IntNonNegative = IntNonNegative(0)
        evaluation: EvaluationSchema = EvaluationSchema()
        caps: CapsSchema = CapsSchema()
        workers: Union[Literal["auto"], IntPositive] = IntPositive(1)
        output: OutputSchema
        logging: LoggingSchema = LoggingSchema()

    _LAYER = Raw

    format_version: int
    graph: GraphSchema
    algorithm: AlgorithmEnum
    oracle: PairOracleEnum
    seeds_count: IntPositive
    horizon: IntPositive
    delta: Union[Literal["auto"], Probability]
    radius_mode: Literal["per_node", "theorem"]
    epsilon: Probability
    budget: BudgetSchema
    model: Literal["LT", "IC"]
    replications: IntPositive
    master_seed: IntNonNegative
    evaluation: EvaluationSchema
    caps: CapsSchema
    workers: IntPositive
    output: OutputSchema
    logging: LoggingSchema

    def _workers(self, obj: Raw) -> Any:
        if obj.workers == "auto":
            return IntPositive(_cpu_count())
        return obj.workers

    def _validate(self) -> None:
        if self.format_version != FORMAT_VERSION:
            raise ValueError(f"unsupported format version {self.format_version}, expected {FORMAT_VERSION}")
        if self.algorithm == "oim_etc" and self.oracle not in ("auto", "exact", "greedy"):
            raise ValueError(f"OIM-ETC calls a plain influence maximization oracle, '{self.oracle}' is a pair oracle")
        if self.algorithm == "lt_linucb" and self.model != "LT":
            raise ValueError("LT-LinUCB runs only under the LT model")

"""
Experiment runner: builds the instance, computes the baseline once, runs the replications and
writes one CSV row per replication and round plus a JSON summary.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
import pandas as pd

from oim_lab.bandit import (
    EtcConfig,
    LinUcbState,
    RegretRecord,
    SpreadBook,
    etc_regret_bound,
    exploration_budget,
    resolve_pair_oracle,
    run,
    run_etc,
    seed_set_gaps,
    select_pair_oracle,
    theorem_delta,
)
from oim_lab.constants import FORMAT_VERSION
from oim_lab.datamodel import ExperimentSchema
from oim_lab.datamodel.globals import validation_context
from oim_lab.graph import Graph, GraphFamilyParams, WeightVector, generate, load_graph
from oim_lab.spread import (
    OracleResult,
    OracleSpec,
    SpreadEvaluator,
    exact_evaluator,
    exact_opt,
    greedy_im,
    is_enumerable,
    live_edge_count,
    make_im_oracle,
    mc_evaluator,
)
from oim_lab.utils.modeling.parsing import dump_file, parse_file
from oim_lab.utils.rng import Purpose, StreamFactory

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["replication", "round", "seed_set", "spread", "eta_opt", "cum_regret", "ms_elapsed"]


def load_experiment(path: Path, strict: bool = True) -> ExperimentSchema:
    """
    Parse and validate an experiment configuration in YAML or JSON. Relative paths inside
    resolve against the directory of the file.
    """

    data = parse_file(path)
    with validation_context(Path(path).absolute().parent, strict):
        return ExperimentSchema(data)


def build_instance(config: ExperimentSchema) -> Tuple[Graph, WeightVector]:
    if config.graph.file is not None:
        return load_graph(config.graph.file.to_path())
    assert config.graph.generator is not None
    return generate(GraphFamilyParams.from_schema(config.graph.generator))


@dataclass(frozen=True)
class ExperimentPlan:
    """
    Everything a replication needs, resolved once and safe to send to worker processes.
    """

    graph: Graph
    w: WeightVector
    algorithm: Literal["lt_linucb", "oim_etc"]
    oracle: str
    spec: OracleSpec
    seeds_count: int
    horizon: int
    master_seed: int
    evaluation: Literal["exact", "mc"]
    sims: int
    live_edge_cap: int
    seed_cap: int
    net_cap: int
    baseline: OracleResult
    delta: float = 1.0
    radius_mode: Literal["per_node", "theorem"] = "per_node"
    epsilon: float = 0.05
    model: Literal["LT", "IC"] = "LT"
    exploration_k: int = 1
    timing: bool = False
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def eta_opt(self) -> float:
        return self.spec.eta * self.baseline.value


def _evaluation_mode(config: ExperimentSchema, graph: Graph) -> Literal["exact", "mc"]:
    mode = config.evaluation.mode
    if mode != "auto":
        return mode
    if live_edge_count(graph) <= int(config.caps.live_edge):
        return "exact"
    logger.warning(
        "Live-edge enumeration of %r exceeds the cap %d, evaluating spreads with %d simulations",
        graph,
        int(config.caps.live_edge),
        int(config.evaluation.sims),
    )
    return "mc"


def _evaluator(plan: ExperimentPlan, rng: np.random.Generator) -> SpreadEvaluator:
    if plan.evaluation == "exact":
        return exact_evaluator(plan.live_edge_cap)
    return mc_evaluator(plan.sims, rng)


def _im_oracle_name(name: str, graph: Graph, k: int, live_edge_cap: int, seed_cap: int) -> Literal["exact", "greedy"]:
    if name == "auto":
        return "exact" if is_enumerable(graph, k, live_edge_cap, seed_cap) else "greedy"
    if name not in ("exact", "greedy"):
        raise ValueError(f"'{name}' is not an influence maximization oracle")
    return name  # type: ignore[return-value]


def plan_experiment(config: ExperimentSchema) -> ExperimentPlan:
    graph, w = build_instance(config)
    k = int(config.seeds_count)
    horizon = int(config.horizon)
    live_edge_cap = int(config.caps.live_edge)
    seed_cap = int(config.caps.seed_sets)
    evaluation = _evaluation_mode(config, graph)
    factory = StreamFactory(int(config.master_seed))

    if evaluation == "exact" and is_enumerable(graph, k, live_edge_cap, seed_cap):
        baseline = exact_opt(graph, w, k, live_edge_cap, seed_cap)
    else:
        rng = factory.stream(Purpose.INSTANCE)
        value = exact_evaluator(live_edge_cap) if evaluation == "exact" else mc_evaluator(int(config.evaluation.sims), rng)
        baseline = greedy_im(graph, w, k, value)
    logger.info("Baseline seeds %s with spread %.6f (%s)", list(baseline.seeds), baseline.value, baseline.spec.name)

    extras: Dict[str, Any] = {}
    common: Dict[str, Any] = {
        "graph": graph,
        "w": w,
        "algorithm": config.algorithm,
        "seeds_count": k,
        "horizon": horizon,
        "master_seed": int(config.master_seed),
        "evaluation": evaluation,
        "sims": int(config.evaluation.sims),
        "live_edge_cap": live_edge_cap,
        "seed_cap": seed_cap,
        "net_cap": int(config.caps.epsilon_net),
        "baseline": baseline,
        "epsilon": float(config.epsilon),
        "model": config.model,
        "timing": config.output.timing,
        "extras": extras,
    }

    if config.algorithm == "lt_linucb":
        oracle = resolve_pair_oracle(graph) if config.oracle == "auto" else config.oracle
        logger.info("Using the '%s' pair oracle", oracle)
        delta = theorem_delta(graph.n, horizon) if config.delta == "auto" else float(config.delta)
        _, spec = select_pair_oracle(
            oracle, graph, k, exact_evaluator(live_edge_cap), float(config.epsilon), "ellipsoid_only",
            live_edge_cap, seed_cap, int(config.caps.epsilon_net),
        )  # fmt: skip
        return ExperimentPlan(oracle=oracle, spec=spec, delta=delta, radius_mode=config.radius_mode, **common)

    oracle = _im_oracle_name(config.oracle, graph, k, live_edge_cap, seed_cap)
    _, spec = make_im_oracle(oracle, graph, k, exact_evaluator(live_edge_cap), live_edge_cap, seed_cap)
    if evaluation == "mc" and oracle == "greedy":
        spec = OracleSpec("greedy-mc", spec.alpha, spec.beta)

    budget = config.budget
    exploration_k: int
    if budget.mode == "manual":
        assert budget.k is not None
        exploration_k = int(budget.k)
    elif budget.mode == "independent":
        exploration_k = exploration_budget(graph.m, graph.n, horizon, "independent")
        extras["regret_bound"] = etc_regret_bound("independent", graph.m, graph.n, horizon)
    else:
        gaps = seed_set_gaps(graph, w, k, spec.alpha, live_edge_cap, seed_cap)
        delta_min = float(budget.delta_min) if budget.delta_min is not None else gaps.delta_min
        if delta_min is None:
            logger.warning("Every seed set is within the oracle factor of the optimum, exploring every node once")
            exploration_k = 1
        else:
            exploration_k = exploration_budget(graph.m, graph.n, horizon, "dependent", delta_min)
            if gaps.delta_max is not None:
                extras["regret_bound"] = etc_regret_bound(
                    "dependent", graph.m, graph.n, horizon, delta_min, gaps.delta_max
                )
        extras["delta_min"] = delta_min
        extras["delta_max"] = gaps.delta_max
    if graph.n * exploration_k > horizon:
        raise ValueError(f"{graph.n} nodes explored {exploration_k} times do not fit into {horizon} rounds")
    extras["exploration_k"] = exploration_k
    logger.info("Exploring every node %d times", exploration_k)
    return ExperimentPlan(oracle=oracle, spec=spec, exploration_k=exploration_k, **common)


@dataclass
class ReplicationResult:
    replication: int
    records: List[RegretRecord]
    coverage_violation_rate: Optional[float] = None
    any_violation_rate: Optional[float] = None
    committed: Optional[Tuple[int, ...]] = None


def run_replication(plan: ExperimentPlan, replication: int) -> ReplicationResult:
    """
    One replication. Its random streams depend only on the master seed and its index.
    """

    streams = StreamFactory(plan.master_seed).for_replication(replication)
    spread_of = SpreadBook(plan.graph, plan.w, _evaluator(plan, streams.evaluation))
    oracle_evaluator = _evaluator(plan, streams.round(Purpose.ORACLE, 0))
    logger.info("Starting replication %d", replication)

    if plan.algorithm == "lt_linucb":
        pair_oracle, _ = select_pair_oracle(
            plan.oracle,  # type: ignore[arg-type]
            plan.graph,
            plan.seeds_count,
            oracle_evaluator,
            plan.epsilon,
            "ellipsoid_only",
            plan.live_edge_cap,
            plan.seed_cap,
            plan.net_cap,
        )
        state = LinUcbState(plan.graph, plan.delta, plan.radius_mode)
        out = run(
            plan.graph,
            plan.w,
            plan.seeds_count,
            plan.horizon,
            pair_oracle,
            streams,
            plan.eta_opt,
            spread_of,
            state=state,
            timing=plan.timing,
        )
        res = ReplicationResult(replication, out.records, out.coverage_violation_rate, out.any_violation_rate)
    else:
        im_oracle, _ = make_im_oracle(
            plan.oracle,  # type: ignore[arg-type]
            plan.graph,
            plan.seeds_count,
            oracle_evaluator,
            plan.live_edge_cap,
            plan.seed_cap,
        )
        config = EtcConfig(plan.exploration_k, plan.seeds_count, plan.horizon, plan.model)
        etc = run_etc(plan.graph, plan.w, config, im_oracle, streams, plan.eta_opt, spread_of, plan.timing)
        committed = etc.committed.seeds if etc.committed is not None else None
        res = ReplicationResult(replication, etc.records, committed=committed)

    final = res.records[-1].cum_regret if res.records else 0.0
    logger.info("Finished replication %d with regret %.4f", replication, final)
    return res


def _run_replication_job(job: Tuple[ExperimentPlan, int]) -> ReplicationResult:
    return run_replication(*job)


def run_replications(plan: ExperimentPlan, replications: int, workers: int = 1) -> List[ReplicationResult]:
    jobs = [(plan, r) for r in range(replications)]
    if workers > 1 and replications > 1:
        with ProcessPoolExecutor(max_workers=min(workers, replications)) as executor:
            results = list(executor.map(_run_replication_job, jobs))
    else:
        results = [_run_replication_job(job) for job in jobs]
    return sorted(results, key=lambda r: r.replication)


def records_frame(results: List[ReplicationResult]) -> pd.DataFrame:
    rows = [
        {
            "replication": res.replication,
            "round": rec.round,
            "seed_set": ";".join(str(s) for s in rec.seeds),
            "spread": rec.spread,
            "eta_opt": rec.eta_opt,
            "cum_regret": rec.cum_regret,
            "ms_elapsed": rec.ms_elapsed,
        }
        for res in results
        for rec in res.records
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_csv(path: Path, results: List[ReplicationResult]) -> None:
    records_frame(results).to_csv(path, index=False)


def summarize(plan: ExperimentPlan, results: List[ReplicationResult]) -> Dict[str, Any]:
    finals = np.array([res.records[-1].cum_regret if res.records else 0.0 for res in results])
    q = np.quantile(finals, [0.0, 0.25, 0.5, 0.75, 1.0]) if finals.size else np.zeros(5)
    summary: Dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "algorithm": plan.algorithm,
        "oracle": plan.oracle,
        "oracle_spec": {"name": plan.spec.name, "alpha": plan.spec.alpha, "beta": plan.spec.beta},
        "eta": plan.spec.eta,
        "opt": plan.baseline.value,
        "baseline_seeds": list(plan.baseline.seeds),
        "baseline_oracle": plan.baseline.spec.name,
        "eta_opt": plan.eta_opt,
        "evaluation": plan.evaluation,
        "horizon": plan.horizon,
        "replications": len(results),
        "per_round_mean_regret": float(finals.mean() / plan.horizon) if finals.size else 0.0,
        "final_regret": dict(zip(["min", "q25", "median", "q75", "max"], (float(x) for x in q))),
    }
    if plan.algorithm == "lt_linucb":
        summary["delta"] = plan.delta
        summary["radius_mode"] = plan.radius_mode
        rates = [r.coverage_violation_rate for r in results if r.coverage_violation_rate is not None]
        any_rates = [r.any_violation_rate for r in results if r.any_violation_rate is not None]
        summary["coverage_violation_rate"] = float(np.mean(rates)) if rates else 0.0
        summary["round_violation_rate"] = float(np.mean(any_rates)) if any_rates else 0.0
    else:
        summary["model"] = plan.model
        summary.update(plan.extras)
        summary["committed_seeds"] = [list(r.committed) if r.committed is not None else None for r in results]
    return summary


def write_summary(path: Path, summary: Dict[str, Any]) -> None:
    dump_file(path, summary)


def summary_path(config: ExperimentSchema) -> Path:
    if config.output.summary is not None:
        return config.output.summary.to_path()
    return config.output.csv.to_path().with_suffix(".json")


def run_experiment(config: ExperimentSchema) -> Dict[str, Any]:
    """
    Runs the configured experiment and writes its CSV and summary, returns the summary.
    """

    plan = plan_experiment(config)
    logger.info(
        "Running %d replications of %s on %r, K=%d, T=%d",
        int(config.replications),
        plan.algorithm,
        plan.graph,
        plan.seeds_count,
        plan.horizon,
    )
    results = run_replications(plan, int(config.replications), int(config.workers))
    write_csv(config.output.csv.to_path(), results)
    summary = summarize(plan, results)
    write_summary(summary_path(config), summary)
    logger.info("Results written to '%s'", config.output.csv)
    return summary

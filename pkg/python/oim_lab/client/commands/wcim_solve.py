import argparse
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type

from oim_lab.bandit import select_pair_oracle
from oim_lab.client.command import Command, CommandArgs, exit_on_errors, register_command, write_output
from oim_lab.constants import EPSILON_NET_CAP, LIVE_EDGE_CAP, SEED_SET_CAP
from oim_lab.graph import load_graph
from oim_lab.spread import exact_evaluator
from oim_lab.utils.modeling.parsing import DataFormat, parse_file
from oim_lab.wcim import ConfidenceSet


@register_command
class WcimSolveCommand(Command):
    def __init__(self, namespace: argparse.Namespace) -> None:
        super().__init__(namespace)
        self.graph: str = namespace.graph
        self.confidence: str = namespace.confidence
        self.k: int = namespace.k
        self.oracle: str = namespace.oracle
        self.epsilon: float = namespace.epsilon
        self.mode: str = namespace.mode
        self.live_edge_cap: int = namespace.live_edge_cap
        self.seed_cap: int = namespace.seed_cap
        self.net_cap: int = namespace.net_cap
        self.output: Optional[str] = namespace.output

    @staticmethod
    def register_args_subparser(
        subparser: "argparse._SubParsersAction[argparse.ArgumentParser]",
    ) -> Tuple[argparse.ArgumentParser, "Type[Command]"]:
        solve = subparser.add_parser(
            "wcim-solve", help="Solves weight-constrained influence maximization over a confidence set."
        )
        solve.add_argument("--graph", type=str, required=True, help="Graph file, its weights are not used.")
        solve.add_argument(
            "--confidence",
            type=str,
            required=True,
            help='Confidence set in JSON, {"<node>": {"M": [[...]], "b": [...], "rho": r}} for every node with in-edges.',
        )
        solve.add_argument("-k", "--k", type=int, default=1, help="Seed set size.")
        solve.add_argument(
            "--oracle",
            choices=["auto", "edge_ucb", "dag_greedy", "epsilon_net", "exact", "greedy"],
            default="auto",
            help="Pair oracle, 'auto' picks by the graph class.",
        )
        solve.add_argument("--epsilon", type=float, default=0.05, help="Pitch of the epsilon-net oracle.")
        solve.add_argument(
            "--mode",
            choices=["ellipsoid_only", "box_clipped"],
            default="ellipsoid_only",
            help="Maximize over the ellipsoids alone or report weights clamped to [0, 1].",
        )
        solve.add_argument("--live-edge-cap", type=int, default=LIVE_EDGE_CAP, help="Live-edge enumeration cap.")
        solve.add_argument("--seed-cap", type=int, default=SEED_SET_CAP, help="Seed set enumeration cap.")
        solve.add_argument("--net-cap", type=int, default=EPSILON_NET_CAP, help="Epsilon-net size cap.")
        solve.add_argument("-o", "--output", type=str, default=None, help="Optional, file for the JSON result.")
        return solve, WcimSolveCommand

    def run(self, args: CommandArgs) -> None:
        with exit_on_errors():
            graph, _ = load_graph(Path(self.graph))
            confidence = ConfidenceSet.from_dict(graph, parse_file(Path(self.confidence)))
            oracle, spec = select_pair_oracle(
                self.oracle,  # type: ignore[arg-type]
                graph,
                self.k,
                exact_evaluator(self.live_edge_cap),
                self.epsilon,
                self.mode,  # type: ignore[arg-type]
                self.live_edge_cap,
                self.seed_cap,
                self.net_cap,
            )
            res = oracle(graph, confidence, self.k)
            out: Dict[str, Any] = {
                "seeds": list(res.seeds),
                "value": res.value,
                "weights": [list(e) for e in res.weights.to_edge_list()],
                "oracle": {"name": spec.name, "alpha": spec.alpha, "beta": spec.beta},
            }
        write_output(DataFormat.JSON.dict_dump(out, indent=2), self.output)

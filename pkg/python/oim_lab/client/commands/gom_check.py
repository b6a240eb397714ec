import argparse
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type

from oim_lab.client.command import Command, CommandArgs, exit_on_errors, register_command, write_output
from oim_lab.constants import LIVE_EDGE_CAP, LONGEST_PATH_NODES_CAP
from oim_lab.gom import verify_gom, verify_update_bound
from oim_lab.graph import load_graph, load_weights
from oim_lab.utils.modeling.parsing import DataFormat


@register_command
class GomCheckCommand(Command):
    def __init__(self, namespace: argparse.Namespace) -> None:
        super().__init__(namespace)
        self.graph: str = namespace.graph
        self.w: Optional[str] = namespace.w
        self.wprime: str = namespace.wprime
        self.seeds: List[int] = namespace.seeds
        self.live_edge_cap: int = namespace.live_edge_cap
        self.path_cap: int = namespace.path_cap
        self.update_bound: bool = namespace.update_bound
        self.output: Optional[str] = namespace.output

    @staticmethod
    def register_args_subparser(
        subparser: "argparse._SubParsersAction[argparse.ArgumentParser]",
    ) -> Tuple[argparse.ArgumentParser, "Type[Command]"]:
        check = subparser.add_parser(
            "gom-check", help="Verifies the bounded smoothness inequality exactly on a small graph."
        )
        check.add_argument("--graph", type=str, required=True, help="Graph file.")
        check.add_argument(
            "--w", type=str, default=None, help="Weight file of w. Defaults to the weights of the graph file."
        )
        check.add_argument("--wprime", type=str, required=True, help="Weight file of w'.")
        check.add_argument("--seeds", type=int, nargs="+", required=True, help="Seed set.")
        check.add_argument(
            "--live-edge-cap",
            type=int,
            default=LIVE_EDGE_CAP,
            help="Maximal number of live-edge realizations to enumerate.",
        )
        check.add_argument(
            "--path-cap",
            type=int,
            default=LONGEST_PATH_NODES_CAP,
            help="Maximal number of nodes for the longest simple path search on cyclic graphs.",
        )
        check.add_argument(
            "--update-bound",
            action="store_true",
            default=False,
            help="Also check the per-node bound of the distilled updates.",
        )
        check.add_argument("-o", "--output", type=str, default=None, help="Optional, file for the JSON report.")
        return check, GomCheckCommand

    def run(self, args: CommandArgs) -> None:
        with exit_on_errors():
            graph, w = load_graph(Path(self.graph))
            if self.w is not None:
                w = load_weights(Path(self.w), graph)
            w_prime = load_weights(Path(self.wprime), graph)

            report: Dict[str, Any] = verify_gom(graph, w, w_prime, self.seeds, self.live_edge_cap, self.path_cap).to_dict()
            if self.update_bound:
                bound = verify_update_bound(graph, w, w_prime, self.seeds, self.live_edge_cap, self.path_cap)
                report["update_bound"] = bound.to_dict()
            report["seeds"] = sorted(set(self.seeds))
        write_output(DataFormat.JSON.dict_dump(report, indent=2), self.output)

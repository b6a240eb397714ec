import argparse
from typing import Any, Dict, Optional, Tuple, Type

from oim_lab.client.command import Command, CommandArgs, exit_on_errors, register_command, write_output
from oim_lab.datamodel.experiment_schema import GeneratorSchema
from oim_lab.graph import GraphFamilyParams, generate
from oim_lab.graph.generators import FAMILIES
from oim_lab.graph.graph import graph_to_dict
from oim_lab.utils.modeling.parsing import DataFormat

_SIZE_ARGS = ("n", "pairs", "rays", "length", "rows", "cols", "left", "right", "max_indegree")


@register_command
class GenerateGraphCommand(Command):
    def __init__(self, namespace: argparse.Namespace) -> None:
        super().__init__(namespace)
        self.params: Dict[str, Any] = {"family": namespace.family, "weights": namespace.weights, "seed": namespace.seed}
        for name in (*_SIZE_ARGS, "p", "weight"):
            value = getattr(namespace, name)
            if value is not None:
                self.params[name] = value
        self.output: Optional[str] = namespace.output

    @staticmethod
    def register_args_subparser(
        subparser: "argparse._SubParsersAction[argparse.ArgumentParser]",
    ) -> Tuple[argparse.ArgumentParser, "Type[Command]"]:
        gen = subparser.add_parser("generate-graph", help="Generates a weighted graph of one of the families.")
        gen.add_argument("--family", choices=FAMILIES, required=True, help="Graph family.")
        for name in _SIZE_ARGS:
            gen.add_argument(
                f"--{name.replace('_', '-')}", dest=name, type=int, default=None, help=f"Family parameter '{name}'."
            )
        gen.add_argument("--p", type=float, default=None, help="Edge probability.")
        gen.add_argument(
            "--weights",
            choices=["constant", "random"],
            default="constant",
            help="Constant weights or uniform random ones, normalized per node when needed.",
        )
        gen.add_argument("--weight", type=float, default=None, help="The constant weight.")
        gen.add_argument("--seed", type=int, default=0, help="Seed of the generator.")
        gen.add_argument(
            "-o",
            "--output",
            type=str,
            default=None,
            help="Optional, output file. If not specified, the graph is printed.",
        )
        return gen, GenerateGraphCommand

    def run(self, args: CommandArgs) -> None:
        with exit_on_errors():
            schema = GeneratorSchema(self.params)
            graph, w = generate(GraphFamilyParams.from_schema(schema))
        write_output(DataFormat.JSON.dict_dump(graph_to_dict(graph, w), indent=2), self.output)

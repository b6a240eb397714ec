import argparse
from pathlib import Path
from typing import Tuple, Type

from oim_lab.client.command import Command, CommandArgs, exit_on_errors, register_command
from oim_lab.harness import configure_logging, load_experiment, run_experiment


@register_command
class RunCommand(Command):
    def __init__(self, namespace: argparse.Namespace) -> None:
        super().__init__(namespace)
        self.config: str = namespace.config

    @staticmethod
    def register_args_subparser(
        subparser: "argparse._SubParsersAction[argparse.ArgumentParser]",
    ) -> Tuple[argparse.ArgumentParser, "Type[Command]"]:
        run = subparser.add_parser("run", help="Runs an experiment and writes its CSV and JSON summary.")
        run.add_argument(
            "-c",
            "--config",
            type=str,
            required=True,
            help="Experiment configuration in YAML or JSON format.",
        )
        return run, RunCommand

    def run(self, args: CommandArgs) -> None:
        with exit_on_errors():
            config = load_experiment(Path(self.config))
            configure_logging(config.logging)
            run_experiment(config)

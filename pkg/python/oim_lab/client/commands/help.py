import argparse
from typing import Optional, Tuple, Type

from oim_lab.client.command import Command, CommandArgs, register_command


@register_command
class HelpCommand(Command):
    def __init__(self, namespace: argparse.Namespace) -> None:
        super().__init__(namespace)
        self.topic: Optional[str] = namespace.topic

    def run(self, args: CommandArgs) -> None:
        if self.topic is None:
            args.parser.print_help()
        else:
            # prints the usage of the command and exits
            args.parser.parse_args([self.topic, "--help"])

    @staticmethod
    def register_args_subparser(
        subparser: "argparse._SubParsersAction[argparse.ArgumentParser]",
    ) -> Tuple[argparse.ArgumentParser, "Type[Command]"]:
        help_parser = subparser.add_parser("help", help="show this help message and exit")
        help_parser.add_argument("topic", nargs="?", default=None, help="Optional, command to show the help of.")
        return help_parser, HelpCommand

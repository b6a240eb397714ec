import argparse
import importlib
import os
from typing import List, Optional

from oim_lab.constants import CLIENT_NAME, VERSION
from oim_lab.datamodel.logging_schema import LoggingSchema
from oim_lab.harness.logging import configure_logging, logger_startup

from .command import CommandArgs, install_commands_parsers


def auto_import_commands() -> None:
    prefix = f"{'.'.join(__name__.split('.')[:-1])}.commands."
    for module_name in sorted(os.listdir(os.path.dirname(__file__) + "/commands")):
        if module_name[-3:] != ".py" or module_name == "__init__.py":
            continue
        importlib.import_module(f"{prefix}{module_name[:-3]}")


def create_main_argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        CLIENT_NAME,
        description="Command-line utility of the online influence maximization lab."
        " Generates graphs, runs LT-LinUCB and OIM-ETC experiments and checks the offline solvers.",
    )
    parser.add_argument(
        "-V",
        "--version",
        action="version",
        version=VERSION,
        help="Get version",
    )
    return parser


def main(argv: Optional[List[str]] = None) -> None:
    logger_startup()
    auto_import_commands()
    parser = create_main_argument_parser()
    install_commands_parsers(parser)

    namespace = parser.parse_args(argv)
    # commands with a configuration reconfigure logging once it is loaded
    configure_logging(LoggingSchema({"level": "warning"}))

    if hasattr(namespace, "command"):
        args = CommandArgs(namespace, parser)
        command = args.command(namespace)
        command.run(args)
    else:
        parser.print_help()

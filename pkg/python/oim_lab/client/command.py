import argparse
import sys
from abc import ABC, abstractmethod
from contextlib import contextmanager
from typing import Iterator, List, Optional, Tuple, Type, TypeVar

from oim_lab.exceptions import CapExceededError, OimValidationError

T = TypeVar("T", bound=Type["Command"])

EXIT_VALIDATION_ERROR = 1
EXIT_CAP_EXCEEDED = 2

_registered_commands: List[Type["Command"]] = []


def register_command(cls: T) -> T:
    _registered_commands.append(cls)
    return cls


def install_commands_parsers(parser: argparse.ArgumentParser) -> None:
    subparsers = parser.add_subparsers(help="command type")
    for command in sorted(_registered_commands, key=lambda c: c.__name__):
        subparser, typ = command.register_args_subparser(subparsers)
        subparser.set_defaults(command=typ, subparser=subparser)


@contextmanager
def exit_on_errors() -> Iterator[None]:
    """
    Translates library exceptions to a message on stderr and the exit code of the client.
    """

    try:
        yield
    except CapExceededError as e:
        print(e, file=sys.stderr)
        sys.exit(EXIT_CAP_EXCEEDED)
    except (OimValidationError, ValueError, OSError) as e:
        print(e, file=sys.stderr)
        sys.exit(EXIT_VALIDATION_ERROR)


def write_output(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf8") as f:
            f.write(text)
            f.write("\n")
    else:
        print(text)


class CommandArgs:
    def __init__(self, namespace: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
        self.namespace = namespace
        self.parser = parser
        self.subparser: argparse.ArgumentParser = namespace.subparser
        self.command: Type["Command"] = namespace.command


class Command(ABC):
    @staticmethod
    @abstractmethod
    def register_args_subparser(
        subparser: "argparse._SubParsersAction[argparse.ArgumentParser]",
    ) -> Tuple[argparse.ArgumentParser, "Type[Command]"]:
        raise NotImplementedError()

    @abstractmethod
    def __init__(self, namespace: argparse.Namespace) -> None:  # pylint: disable=[unused-argument]
        super().__init__()

    @abstractmethod
    def run(self, args: CommandArgs) -> None:
        raise NotImplementedError()

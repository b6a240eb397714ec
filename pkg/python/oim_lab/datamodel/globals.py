"""
The parsing and validation of the datamodel is dependent on a global state:
- a file system path used for resolving relative paths
- whether file system checks are performed at all

Experiment configurations refer to graph files and output files relative to their own location,
so the loader sets the context to the configuration file's directory before validation.
"""

from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional


class Context:
    resolve_root: Optional[Path]
    strict_validation: bool

    def __init__(self, resolve_root: Optional[Path], strict_validation: bool = True) -> None:
        self.resolve_root = resolve_root
        self.strict_validation = strict_validation


_global_context: Context = Context(None)


def set_global_validation_context(context: Context) -> None:
    global _global_context
    _global_context = context


def get_global_validation_context() -> Context:
    return _global_context


def reset_global_validation_context() -> None:
    global _global_context
    _global_context = Context(None)


def get_resolve_root() -> Path:
    if _global_context.resolve_root is None:
        raise RuntimeError(
            "Global validation context 'resolve_root' is not set!"
            " Validate inside `validation_context()` or set it using `set_global_validation_context()`!"
        )

    return _global_context.resolve_root


def get_strict_validation() -> bool:
    return _global_context.strict_validation


@contextmanager
def validation_context(resolve_root: Optional[Path], strict_validation: bool = True) -> Iterator[Context]:
    """
    Validate against `resolve_root` inside the block, the previous context is restored afterwards.
    """

    global _global_context
    previous = _global_context
    _global_context = Context(resolve_root, strict_validation)
    try:
        yield _global_context
    finally:
        _global_context = previous

"""
Dict and list wrappers which let configuration authors use `-` and `_` interchangeably in keys.
Schema fields are always Python identifiers (with `_`), while the files conventionally use `-`.
Values of plain `Dict[...]` fields are not renamed, only schema attribute keys are.
"""

from typing import Any, Dict, List


def to_private(name: Any) -> Any:
    return name.replace("_", "-") if isinstance(name, str) else name


def to_public(name: Any) -> Any:
    return name.replace("-", "_") if isinstance(name, str) else name


class Renamed:
    def original(self) -> Any:
        raise NotImplementedError()


class RenamedDict(Dict[Any, Any], Renamed):
    """Keys are stored as given; lookups accept both spellings."""

    def _resolve(self, key: Any) -> Any:
        if super().__contains__(key):
            return key
        private = to_private(key)
        if super().__contains__(private):
            return private
        return to_public(key)

    def keys(self) -> Any:
        return {to_public(k) for k in super().keys()}

    def __getitem__(self, key: Any) -> Any:
        return renamed(super().__getitem__(self._resolve(key)))

    def __contains__(self, key: object) -> bool:
        return super().__contains__(self._resolve(key))

    def items(self) -> Any:
        for k, v in super().items():
            yield to_public(k), renamed(v)

    def original(self) -> Dict[Any, Any]:
        return dict(super().items())


class RenamedList(List[Any], Renamed):
    def __getitem__(self, key: Any) -> Any:
        return renamed(super().__getitem__(key))

    def __iter__(self) -> Any:
        for v in super().__iter__():
            yield renamed(v)

    def original(self) -> List[Any]:
        return list(super().__iter__())


def renamed(obj: Any) -> Any:
    if isinstance(obj, Renamed):
        return obj
    if isinstance(obj, dict):
        return RenamedDict(obj)
    if isinstance(obj, list):
        return RenamedList(obj)
    return obj


__all__ = ["renamed", "Renamed"]

from pathlib import Path
from typing import Any, Dict, Type

from oim_lab.datamodel.globals import get_resolve_root, get_strict_validation
from oim_lab.utils.modeling.base_value_type import BaseValueType


class FilePath(BaseValueType):
    """
    Path to a file. Relative paths are resolved against the directory of the configuration file.
    With strict validation, the parent directory has to exist.
    """

    _value: Path

    def __init__(self, source_value: Any, object_path: str = "/") -> None:
        if not isinstance(source_value, str):
            raise ValueError(f"expected file path in a string, got '{source_value}' with type '{type(source_value)}'.")

        # no need for the global validation context when the path is absolute,
        # this keeps schema defaults constructible
        self._raw_value: str = source_value
        if Path(source_value).is_absolute():
            self._value = Path(source_value)
        else:
            self._value = Path(get_resolve_root(), source_value)

        if get_strict_validation() and not self._value.parent.is_dir():
            raise ValueError(f"directory '{self._value.parent}' does not exist", object_path)

    def __str__(self) -> str:
        return str(self._value)

    def __repr__(self) -> str:
        return f'FilePath("{self._raw_value}")'

    def __eq__(self, o: object) -> bool:
        return isinstance(o, FilePath) and o._value == self._value

    def __hash__(self) -> int:
        return hash(self._value)

    def to_path(self) -> Path:
        return self._value

    def serialize(self) -> Any:
        return self._raw_value

    @classmethod
    def json_schema(cls: Type["FilePath"]) -> Dict[Any, Any]:
        return {"type": "string"}

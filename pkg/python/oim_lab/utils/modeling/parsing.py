import json
from enum import Enum, auto
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import yaml
from yaml.constructor import ConstructorError
from yaml.nodes import MappingNode

from .exceptions import DataParsingError
from .renaming import Renamed, renamed


def _json_raise_duplicates(pairs: List[Tuple[Any, Any]]) -> Optional[Any]:
    dict_out: Dict[Any, Any] = {}
    for key, val in pairs:
        if key in dict_out:
            raise DataParsingError(f"duplicate key detected: {key}")
        dict_out[key] = val
    return dict_out


def _json_default(obj: Any) -> Any:
    # numpy scalars and arrays leak into reports and summaries
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"object of type '{type(obj).__name__}' is not JSON serializable")


class _RaiseDuplicatesLoader(yaml.SafeLoader):
    def construct_mapping(self, node: Union[MappingNode, Any], deep: bool = False) -> Dict[Any, Any]:
        if not isinstance(node, MappingNode):
            raise ConstructorError(None, None, f"expected a mapping node, but found {node.id}", node.start_mark)
        mapping: Dict[Any, Any] = {}
        for key_node, value_node in node.value:
            key = self.construct_object(key_node, deep=deep)  # type: ignore
            if key in mapping:
                raise DataParsingError(f"duplicate key detected: {key_node.start_mark}")
            mapping[key] = self.construct_object(value_node, deep=deep)  # type: ignore
        return mapping


class DataFormat(Enum):
    YAML = auto()
    JSON = auto()

    @staticmethod
    def from_path(path: Path) -> Optional["DataFormat"]:
        """Format by the file suffix, None when the suffix says nothing."""

        suffix = Path(path).suffix.lower()
        if suffix == ".json":
            return DataFormat.JSON
        if suffix in (".yaml", ".yml"):
            return DataFormat.YAML
        return None

    def parse_to_dict(self, text: str) -> Any:
        if self is DataFormat.YAML:
            return renamed(yaml.load(text, Loader=_RaiseDuplicatesLoader))  # type: ignore
        if self is DataFormat.JSON:
            return renamed(json.loads(text, object_pairs_hook=_json_raise_duplicates))
        raise NotImplementedError(f"Parsing of format '{self}' is not implemented")

    def dict_dump(self, data: Union[Dict[str, Any], Renamed], indent: Optional[int] = None) -> str:
        """
        JSON output has sorted keys so that reruns of an experiment produce identical files.
        """

        if isinstance(data, Renamed):
            data = data.original()

        if self is DataFormat.YAML:
            return yaml.safe_dump(json.loads(json.dumps(data, default=_json_default)), indent=indent, sort_keys=False)
        if self is DataFormat.JSON:
            return json.dumps(data, indent=indent, sort_keys=True, default=_json_default)
        raise NotImplementedError(f"Exporting to '{self}' format is not implemented")


def parse_yaml(data: str) -> Any:
    return DataFormat.YAML.parse_to_dict(data)


def parse_json(data: str) -> Any:
    return DataFormat.JSON.parse_to_dict(data)


def try_to_parse(data: str) -> Any:
    """Attempt to parse the data as a JSON or YAML string."""

    try:
        return parse_json(data)
    except json.JSONDecodeError as je:
        try:
            return parse_yaml(data)
        except yaml.YAMLError as ye:
            raise DataParsingError(f"failed to parse data, JSON: {je}, YAML: {ye}") from ye


def parse_file(path: Path) -> Any:
    """
    Read a JSON or YAML file. The suffix picks the format, files without a known suffix are tried as both.
    """

    with open(path, "r", encoding="utf8") as f:
        data = f.read()
    fmt = DataFormat.from_path(path)
    if fmt is None:
        return try_to_parse(data)
    try:
        return fmt.parse_to_dict(data)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise DataParsingError(f"failed to parse '{path}': {e}") from e


def dump_file(path: Path, data: Union[Dict[str, Any], Renamed], fmt: DataFormat = DataFormat.JSON) -> None:
    with open(path, "w", encoding="utf8") as f:
        f.write(fmt.dict_dump(data, indent=2))
        f.write("\n")

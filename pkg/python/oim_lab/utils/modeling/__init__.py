from .base_schema import BaseSchema, ConfigSchema
from .base_value_type import BaseValueType
from .parsing import DataFormat, dump_file, parse_file, parse_json, parse_yaml, try_to_parse

__all__ = [
    "BaseSchema",
    "BaseValueType",
    "ConfigSchema",
    "DataFormat",
    "dump_file",
    "parse_file",
    "parse_json",
    "parse_yaml",
    "try_to_parse",
]

import enum
import inspect
from typing import Any, Dict, List, Literal, Tuple, Union

try:
    from typing import get_args, get_origin
except ImportError:  # python 3.7
    from typing_extensions import get_args, get_origin

NoneType = type(None)


def is_none_type(tp: Any) -> bool:
    return tp is None or tp is NoneType


def is_union(tp: Any) -> bool:
    """True even for optional types, they are just a Union[T, NoneType]"""
    return get_origin(tp) is Union


def is_optional(tp: Any) -> bool:
    args = get_args(tp)
    return is_union(tp) and len(args) == 2 and is_none_type(args[1])


def optional_inner(tp: Any) -> Any:
    assert is_optional(tp)
    return get_args(tp)[0]


def is_literal(tp: Any) -> bool:
    return get_origin(tp) is Literal


def is_list(tp: Any) -> bool:
    return get_origin(tp) in (List, list)


def is_dict(tp: Any) -> bool:
    return get_origin(tp) in (Dict, dict)


def is_tuple(tp: Any) -> bool:
    return get_origin(tp) in (Tuple, tuple)


def is_enum(tp: Any) -> bool:
    return inspect.isclass(tp) and issubclass(tp, enum.Enum)


def type_args(tp: Any) -> Tuple[Any, ...]:
    return get_args(tp)


def is_internal_field_name(field_name: str) -> bool:
    return field_name.startswith("_")

import inspect
from typing import Any, Dict, List, Optional, Set, Tuple, Type, TypeVar, Union, cast

import yaml

from oim_lab.utils.functional import all_matches

from .base_value_type import BaseValueType
from .exceptions import DataDescriptionError, DataValidationError, raise_collected
from .renaming import Renamed, renamed
from .types import (
    is_dict,
    is_enum,
    is_internal_field_name,
    is_list,
    is_literal,
    is_none_type,
    is_optional,
    is_tuple,
    is_union,
    optional_inner,
    type_args,
)

T = TypeVar("T")

TSource = Union[None, "BaseSchema", Dict[str, Any]]


def is_obj_type(obj: Any, types: Union[type, Tuple[type, ...]]) -> bool:
    # 'type()' instead of 'isinstance()', because 'isinstance(False, int)' is True
    if isinstance(types, tuple):
        return type(obj) in types
    return type(obj) is types


def _is_serializable(typ: Any) -> bool:
    return (
        typ in {str, bool, int, float}
        or is_none_type(typ)
        or is_literal(typ)
        or is_dict(typ)
        or is_list(typ)
        or is_tuple(typ)
        or (inspect.isclass(typ) and issubclass(typ, (BaseValueType, BaseSchema)))
        or (is_union(typ) and all_matches(_is_serializable, type_args(typ)))
    )


def serialize(obj: Any) -> Any:
    if isinstance(obj, BaseSchema):
        return obj.to_dict()
    if isinstance(obj, BaseValueType):
        return serialize(obj.serialize())
    if isinstance(obj, (list, tuple)):
        return [serialize(i) for i in obj]
    if isinstance(obj, dict):
        return {k: serialize(v) for k, v in obj.items()}
    return obj


def _split_docstring(docstring: str) -> Tuple[str, Optional[str]]:
    """
    Splits docstring into description of the class and description of attributes
    """

    if "---" not in docstring:
        return ("\n".join([s.strip() for s in docstring.splitlines()]).strip(), None)

    doc, attrs_doc = docstring.split("---", maxsplit=1)
    return ("\n".join([s.strip() for s in doc.splitlines()]).strip(), attrs_doc)


def _parse_attrs_docstrings(docstring: str) -> Optional[Dict[str, str]]:
    _, attrs_doc = _split_docstring(docstring)
    if attrs_doc is None:
        return None

    data = yaml.safe_load(attrs_doc)
    assert isinstance(data, dict), "Invalid format of attribute description"
    return cast(Dict[str, str], data)


def _describe_type(typ: Any) -> Dict[Any, Any]:  # noqa: PLR0911
    if inspect.isclass(typ) and issubclass(typ, BaseSchema):
        return typ.json_schema(include_schema_definition=False)
    if inspect.isclass(typ) and issubclass(typ, BaseValueType):
        return typ.json_schema()
    if is_none_type(typ):
        return {"type": "null"}
    if typ is bool:
        return {"type": "boolean"}
    if typ is int:
        return {"type": "integer"}
    if typ is float:
        return {"type": "number"}
    if typ is str:
        return {"type": "string"}
    if is_literal(typ):
        return {"enum": list(type_args(typ))}
    if is_optional(typ):
        return {"anyOf": [{"type": "null"}, _describe_type(optional_inner(typ))]}
    if is_union(typ):
        return {"anyOf": [_describe_type(v) for v in type_args(typ)]}
    if is_list(typ):
        return {"type": "array", "items": _describe_type(type_args(typ)[0])}
    if is_tuple(typ):
        return {"type": "array", "prefixItems": [_describe_type(t) for t in type_args(typ)]}
    if is_dict(typ):
        key, val = type_args(typ)
        assert key is str, "only string keys are supported"
        return {"type": "object", "additionalProperties": _describe_type(val)}
    raise NotImplementedError(f"Trying to get JSON schema for type '{typ}', which is not implemented")


class ObjectMapper:
    """
    Maps untrusted dict-like data onto annotated schema classes, validating types at runtime.
    """

    def _create_list(self, tp: Any, obj: Any, object_path: str) -> List[Any]:
        if isinstance(obj, (str, dict)) or not hasattr(obj, "__iter__"):
            raise DataValidationError(f"expected list, got {type(obj).__name__}", object_path)

        inner = type_args(tp)[0]
        errs: List[DataValidationError] = []
        res: List[Any] = []
        for i, val in enumerate(obj):
            try:
                res.append(self.map_object(inner, val, object_path=f"{object_path}[{i}]"))
            except DataValidationError as e:
                errs.append(e)
        raise_collected(errs, object_path)
        return res

    def _create_tuple(self, tp: Any, obj: Any, object_path: str) -> Tuple[Any, ...]:
        types = type_args(tp)
        if isinstance(obj, (str, dict)) or len(obj) != len(types):
            raise DataValidationError(f"expected a sequence of {len(types)} items", object_path)
        errs: List[DataValidationError] = []
        res: List[Any] = []
        for i, (t, val) in enumerate(zip(types, obj)):
            try:
                res.append(self.map_object(t, val, object_path=f"{object_path}[{i}]"))
            except DataValidationError as e:
                errs.append(e)
        raise_collected(errs, object_path)
        return tuple(res)

    def _create_dict(self, tp: Any, obj: Any, object_path: str) -> Dict[Any, Any]:
        if isinstance(obj, Renamed):
            obj = obj.original()
        if not isinstance(obj, dict):
            raise DataValidationError(f"expected dict-like object, found {type(obj).__name__}", object_path)
        key_type, val_type = type_args(tp)
        errs: List[DataValidationError] = []
        res: Dict[Any, Any] = {}
        for key, val in obj.items():
            try:
                nkey = self.map_object(key_type, key, object_path=f"{object_path}[{key}]")
                res[nkey] = self.map_object(val_type, val, object_path=f"{object_path}[{key}]")
            except DataValidationError as e:
                errs.append(e)
        raise_collected(errs, object_path)
        return res

    def _create_str(self, obj: Any, object_path: str) -> str:
        # any primitive value is accepted as a string, compound values are not
        if is_obj_type(obj, (str, float, int)) or isinstance(obj, BaseValueType):
            return str(obj)
        if is_obj_type(obj, bool):
            raise DataValidationError(
                "Expected str, found bool. Be careful, that YAML parsers consider even"
                ' "no" and "yes" as a bool. Please use quotes explicitly.',
                object_path,
            )
        raise DataValidationError(f"expected str, but found type {type(obj).__name__}", object_path)

    def _create_int(self, obj: Any, object_path: str) -> int:
        if is_obj_type(obj, int):
            return obj
        raise DataValidationError(f"expected int, found {type(obj).__name__}", object_path)

    def _create_float(self, obj: Any, object_path: str) -> float:
        # ints are widened, bools are not numbers here
        if is_obj_type(obj, (int, float)):
            return float(obj)
        raise DataValidationError(f"expected number, found {type(obj).__name__}", object_path)

    def _create_bool(self, obj: Any, object_path: str) -> bool:
        if is_obj_type(obj, bool):
            return obj
        raise DataValidationError(f"expected bool, found {type(obj).__name__}", object_path)

    def _create_literal(self, tp: Any, obj: Any, object_path: str) -> Any:
        expected = type_args(tp)
        for e in expected:
            if type(e) is type(obj) and obj == e:
                return obj
        raise DataValidationError(f"'{obj}' does not match any of the expected values {list(expected)}", object_path)

    def _create_union(self, tp: Any, obj: Any, object_path: str) -> Any:
        errs: List[DataValidationError] = []
        for v in type_args(tp):
            try:
                return self.map_object(v, obj, object_path=object_path)
            except DataValidationError as e:
                errs.append(e)
        raise DataValidationError("could not parse any of the possible variants", object_path, child_exceptions=errs)

    def _create_value_type_object(self, tp: Type[BaseValueType], obj: Any, object_path: str) -> BaseValueType:
        if isinstance(obj, tp):
            return obj
        try:
            return tp(obj, object_path=object_path)
        except ValueError as e:
            msg = e.args[0] if e.args and isinstance(e.args[0], str) else f"Failed to validate value against {tp}"
            raise DataValidationError(msg, object_path) from e

    def _create_base_schema_object(self, tp: Type["BaseSchema"], obj: Any, object_path: str) -> "BaseSchema":
        if type(obj) is tp:
            return obj
        if isinstance(obj, (dict, BaseSchema)):
            return tp(obj, object_path=object_path)
        raise DataValidationError(f"expected 'dict' or schema object, found '{type(obj).__name__}'", object_path)

    def map_object(self, tp: Any, obj: Any, object_path: str = "/") -> Any:  # noqa: PLR0911, PLR0912
        """
        Given an expected type `tp` and a value `obj`, return a value of the given type, checking it at runtime.
        """

        if is_none_type(tp):
            if obj is None:
                return None
            raise DataValidationError(f"expected None, found '{obj}'.", object_path)

        if is_optional(tp):
            return None if obj is None else self.map_object(optional_inner(tp), obj, object_path)

        if is_union(tp):
            return self._create_union(tp, obj, object_path)

        if obj is None:
            raise DataValidationError(f"unexpected value 'None' for type {tp}", object_path)

        if tp is Any:
            return obj
        if tp is int:
            return self._create_int(obj, object_path)
        if tp is float:
            return self._create_float(obj, object_path)
        if tp is str:
            return self._create_str(obj, object_path)
        if tp is bool:
            return self._create_bool(obj, object_path)
        if is_literal(tp):
            return self._create_literal(tp, obj, object_path)
        if is_dict(tp):
            return self._create_dict(tp, obj, object_path)
        if is_list(tp):
            return self._create_list(tp, obj, object_path)
        if is_tuple(tp):
            return self._create_tuple(tp, obj, object_path)
        if is_enum(tp):
            if isinstance(obj, tp):
                return obj
            try:
                return tp(obj)
            except ValueError as e:
                raise DataValidationError(f"unexpected value '{obj}' for enum '{tp.__name__}'", object_path) from e
        if inspect.isclass(tp) and issubclass(tp, BaseValueType):
            return self._create_value_type_object(tp, obj, object_path)
        if inspect.isclass(tp) and issubclass(tp, BaseSchema):
            return self._create_base_schema_object(tp, obj, object_path)
        if inspect.isclass(tp) and isinstance(obj, tp):
            return obj

        raise DataValidationError(
            f"Type {tp} cannot be parsed. This is an implementation error, please fix the schema types.",
            object_path,
        )

    def is_obj_type_valid(self, obj: Any, tp: Any) -> bool:
        try:
            self.map_object(tp, obj)
            return True
        except (DataValidationError, ValueError):
            return False

    def _converted_value(self, obj: Any, name: str, source: Any, object_path: str) -> Any:
        func = getattr(obj.__class__, f"_{name}")
        try:
            if len(inspect.signature(func).parameters) == 1:
                return func(source)
            return func(obj, source)
        except ValueError as e:
            msg = e.args[0] if e.args and isinstance(e.args[0], str) else "Failed to validate value type"
            raise DataValidationError(msg, f"{object_path}/{name}") from e

    def _assign_fields(self, obj: Any, source: Any, object_path: str) -> Set[str]:
        """
        A field is populated from (in this order) its transformation function `_<name>`,
        the source data, the class-level default or `None` for optional fields.
        """

        cls = obj.__class__
        annot: Dict[str, Any] = cls.__dict__.get("__annotations__", {})
        errs: List[DataValidationError] = []
        used_keys: Set[str] = set()

        for name, python_type in annot.items():
            if is_internal_field_name(name):
                continue
            path = f"{object_path}/{name}"
            try:
                transform = getattr(cls, f"_{name}", None)
                if callable(transform):
                    if hasattr(cls, name):
                        raise RuntimeError(f"Field '{cls.__name__}.{name}' has a default and a transformation function")
                    val = self._converted_value(obj, name, source, object_path)
                    used_keys.add(name)
                elif name in source:
                    val = source[name]
                    used_keys.add(name)
                elif hasattr(cls, name):
                    val = getattr(cls, name)
                elif is_optional(python_type):
                    val = None
                else:
                    raise DataValidationError(f"missing attribute '{name}'.", object_path)
                setattr(obj, name, self.map_object(python_type, val, object_path=path))
            except DataValidationError as e:
                errs.append(e)

        raise_collected(errs, object_path)
        return used_keys

    def object_constructor(self, obj: "BaseSchema", source: Any, object_path: str) -> None:
        if not isinstance(source, (BaseSchema, dict)):
            raise DataValidationError(f"expected dict-like object, found '{type(source).__name__}'", object_path)

        # construct lower level schema first if configured to do so
        if obj._LAYER is not None:  # noqa: SLF001
            source = obj._LAYER(source, object_path=object_path)  # noqa: SLF001

        used_keys = self._assign_fields(obj, source, object_path)

        if isinstance(source, dict):
            unused = set(source.keys()) - used_keys
            if unused:
                keys = ", ".join(f"'{u}'" for u in sorted(unused))
                raise DataValidationError(f"unexpected extra key(s) {keys}", object_path)

        try:
            obj._validate()  # noqa: SLF001
        except ValueError as e:
            raise DataValidationError(e.args[0] if e.args else "Validation error", object_path or "/") from e


class RenamingObjectMapper(ObjectMapper):
    """
    Same as object mapper, but schema attribute keys may be written with `-` instead of `_`.
    """

    def _create_base_schema_object(self, tp: Type["BaseSchema"], obj: Any, object_path: str) -> "BaseSchema":
        if isinstance(obj, dict):
            obj = renamed(obj)
        return super()._create_base_schema_object(tp, obj, object_path)

    def object_constructor(self, obj: "BaseSchema", source: Any, object_path: str) -> None:
        if isinstance(source, dict):
            source = renamed(source)
        super().object_constructor(obj, source, object_path)


class BaseSchema:
    """
    Base class for modeling configuration schema. It resembles standard dataclasses with
    type validation and data conversion.

    Fields are class-level annotations. A class-level value is the default; optional fields
    default to `None`. A field `x` can instead be computed by a transformation function `_x(self, source)`,
    typically together with `_LAYER`, a lower-level schema the source is parsed into first.
    After all fields are assigned, `_validate()` is called; raise `ValueError` there to reject the data.
    """

    _LAYER: Optional[Type["BaseSchema"]] = None
    _MAPPER: ObjectMapper = ObjectMapper()

    def __init__(self, source: TSource = None, object_path: str = "") -> None:
        source = source or {}
        self.__source = source
        self._MAPPER.object_constructor(self, source, object_path)

    def get_unparsed_data(self) -> Dict[str, Any]:
        if isinstance(self.__source, BaseSchema):
            return self.__source.get_unparsed_data()
        if isinstance(self.__source, Renamed):
            return self.__source.original()
        return cast(Dict[str, Any], self.__source)

    def __getitem__(self, key: str) -> Any:
        if not hasattr(self, key):
            raise RuntimeError(f"Object '{self}' of type '{type(self)}' does not have field named '{key}'")
        return getattr(self, key)

    def __contains__(self, item: Any) -> bool:
        return hasattr(self, item)

    def _validate(self) -> None:
        """
        Validation procedure called after all fields are assigned. Should raise a ValueError in case of failure.
        """

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, self.__class__):
            return False
        annot = self.__class__.__dict__.get("__annotations__", {})
        return all(getattr(self, name) == getattr(o, name) for name in annot if not is_internal_field_name(name))

    @classmethod
    def json_schema(
        cls: Type["BaseSchema"],
        schema_id: Optional[str] = None,
        title: Optional[str] = None,
        include_schema_definition: bool = True,
    ) -> Dict[Any, Any]:
        if cls._LAYER is not None:
            return cls._LAYER.json_schema(schema_id, title, include_schema_definition)

        schema: Dict[Any, Any] = {}
        if include_schema_definition:
            schema["$schema"] = "https://json-schema.org/draft/2020-12/schema"
        if schema_id is not None:
            schema["$id"] = schema_id
        if title is not None:
            schema["title"] = title
        if cls.__doc__ is not None:
            schema["description"] = _split_docstring(cls.__doc__)[0]
        schema["type"] = "object"
        schema["properties"] = cls._properties_schema()
        return schema

    @classmethod
    def _properties_schema(cls) -> Dict[Any, Any]:
        schema: Dict[Any, Any] = {}
        annot: Dict[str, Any] = cls.__dict__.get("__annotations__", {})
        docs = _parse_attrs_docstrings(cls.__dict__.get("__doc__", "") or "")
        for field_name, python_type in annot.items():
            if is_internal_field_name(field_name):
                continue
            name = field_name.replace("_", "-")
            schema[name] = _describe_type(python_type)
            if docs is not None:
                if field_name not in docs:
                    raise DataDescriptionError(f"The docstring does not describe field '{field_name}'", str(cls))
                schema[name]["description"] = docs.pop(field_name)
            if hasattr(cls, field_name):
                assert _is_serializable(python_type), f"Type '{python_type}' does not appear to be JSON serializable"
                schema[name]["default"] = serialize(getattr(cls, field_name))
        if docs:
            raise DataDescriptionError(f"The docstring describes attributes which are not present - {tuple(docs)}")
        return schema

    def to_dict(self) -> Dict[Any, Any]:
        annot = self.__class__.__dict__.get("__annotations__", {})
        return {
            name.replace("_", "-"): serialize(getattr(self, name))
            for name in annot
            if not is_internal_field_name(name)
        }


is_obj_type_valid = ObjectMapper().is_obj_type_valid
map_object = ObjectMapper().map_object


class ConfigSchema(BaseSchema):
    """
    Same as BaseSchema, but maps with RenamingObjectMapper
    """

    _MAPPER: ObjectMapper = RenamingObjectMapper()

from abc import ABC, abstractmethod
from typing import Any, Dict, Type


class BaseValueType(ABC):
    """
    Subclasses of this class can be used as type annotations in schemas. When a value
    is being parsed from a serialized format (e.g. JSON/YAML), an object is created by
    calling the constructor of the type on the field value. The value MUST NOT be `None`.

    Validation happens in the constructor; raise a `ValueError` in case of errors.
    """

    @abstractmethod
    def __init__(self, source_value: Any, object_path: str = "/") -> None:
        pass

    @abstractmethod
    def serialize(self) -> Any:
        """
        JSON-serializable object from which the value can be recreated using the constructor.
        """

    @classmethod
    @abstractmethod
    def json_schema(cls: Type["BaseValueType"]) -> Dict[Any, Any]:
        raise NotImplementedError()

from .files import FilePath
from .types import FloatNonNegative, FloatPositive, FloatUnit, IntNonNegative, IntPositive, Probability

__all__ = [
    "FilePath",
    "FloatNonNegative",
    "FloatPositive",
    "FloatUnit",
    "IntNonNegative",
    "IntPositive",
    "Probability",
]

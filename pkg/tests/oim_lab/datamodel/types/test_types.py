from pathlib import Path
from typing import Any

import pytest
from pytest import raises

from oim_lab.datamodel.globals import Context, set_global_validation_context
from oim_lab.datamodel.types import (
    FilePath,
    FloatNonNegative,
    FloatPositive,
    FloatUnit,
    IntNonNegative,
    IntPositive,
    Probability,
)
from oim_lab.utils.modeling import BaseValueType


@pytest.mark.parametrize("val", [0, 1, 10**9])
def test_int_non_negative_valid(val: int):
    assert int(IntNonNegative(val)) == val


@pytest.mark.parametrize("val", [-1, 1.0, "1", True])
def test_int_non_negative_invalid(val: Any):
    with raises(ValueError):
        IntNonNegative(val)


def test_int_positive():
    assert int(IntPositive(1)) == 1
    assert list(range(5))[IntPositive(2)] == 2
    with raises(ValueError):
        IntPositive(0)


@pytest.mark.parametrize("val", [0.5, 1, 1.0])
def test_probability_valid(val: Any):
    assert float(Probability(val)) == float(val)


@pytest.mark.parametrize("val", [0, 0.0, -0.1, 1.5, False])
def test_probability_invalid(val: Any):
    with raises(ValueError):
        Probability(val)


def test_float_ranges():
    assert float(FloatUnit(0)) == 0.0
    assert float(FloatNonNegative(3)) == 3.0
    assert float(FloatPositive(1e-9)) == 1e-9
    with raises(ValueError):
        FloatUnit(1.01)
    with raises(ValueError):
        FloatPositive(0.0)
    with raises(ValueError):
        FloatNonNegative(-1e-9)


def test_value_types_serialize_original():
    assert FloatUnit(1).serialize() == 1
    assert IntPositive(4).serialize() == 4
    assert FloatUnit(0.5) == FloatUnit(0.5)
    assert FloatUnit(0.5) != FloatUnit(0.25)


def test_json_schema():
    assert Probability.json_schema() == {"type": "number", "exclusiveMinimum": 0.0, "maximum": 1.0}
    assert IntNonNegative.json_schema() == {"type": "integer", "minimum": 0}


def test_file_path_resolves_relative(tmp_path: Path):
    set_global_validation_context(Context(tmp_path))
    path = FilePath("out.csv")
    assert path.to_path() == tmp_path / "out.csv"
    assert path.serialize() == "out.csv"
    assert isinstance(path, BaseValueType)


def test_file_path_strict_requires_directory(tmp_path: Path):
    set_global_validation_context(Context(tmp_path))
    with raises(ValueError):
        FilePath("missing/out.csv")

    set_global_validation_context(Context(tmp_path, strict_validation=False))
    assert FilePath("missing/out.csv").to_path() == tmp_path / "missing" / "out.csv"


def test_file_path_absolute_without_context(tmp_path: Path):
    assert FilePath(str(tmp_path / "g.json")).to_path() == tmp_path / "g.json"

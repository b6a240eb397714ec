import json
from pathlib import Path

import numpy as np
import pytest
from pytest import raises

from oim_lab.utils.modeling import DataFormat, dump_file, parse_file, try_to_parse
from oim_lab.utils.modeling.exceptions import DataParsingError


@pytest.mark.parametrize(
    "name,fmt",
    [
        ("a.json", DataFormat.JSON),
        ("a.YAML", DataFormat.YAML),
        ("a.yml", DataFormat.YAML),
        ("a.conf", None),
        ("a", None),
    ],
)
def test_format_from_path(name: str, fmt):
    assert DataFormat.from_path(Path(name)) is fmt


def test_parse_file_by_suffix(tmp_path: Path):
    path = tmp_path / "config.yaml"
    path.write_text("seeds-count: 2\nhorizon: 10\n", encoding="utf8")
    data = parse_file(path)
    assert data["seeds_count"] == 2
    assert data["horizon"] == 10


def test_parse_file_without_suffix(tmp_path: Path):
    path = tmp_path / "config"
    path.write_text('{"horizon": 10}', encoding="utf8")
    assert parse_file(path)["horizon"] == 10


def test_parse_file_wrong_suffix(tmp_path: Path):
    path = tmp_path / "config.json"
    path.write_text("horizon: 10\n", encoding="utf8")
    with raises(DataParsingError):
        parse_file(path)


def test_try_to_parse_invalid():
    with raises(DataParsingError):
        try_to_parse("{horizon: [10")


def test_dump_numpy_values(tmp_path: Path):
    path = tmp_path / "out.json"
    dump_file(path, {"b": np.float64(0.5), "a": np.int64(3), "c": np.array([1, 2]), "d": frozenset({2, 1})})

    text = path.read_text(encoding="utf8")
    assert json.loads(text) == {"a": 3, "b": 0.5, "c": [1, 2], "d": [1, 2]}
    assert text.index('"a"') < text.index('"b"')
    assert text.endswith("}\n")


def test_dump_yaml_keeps_order():
    text = DataFormat.YAML.dict_dump({"z": np.int64(1), "a": 2})
    assert text == "z: 1\na: 2\n"


def test_dump_rejects_unknown_objects():
    with raises(TypeError):
        DataFormat.JSON.dict_dump({"a": object()})

import json
from pathlib import Path

import pytest
from pytest import approx, raises

from oim_lab.client.command import EXIT_CAP_EXCEEDED, EXIT_VALIDATION_ERROR
from oim_lab.client.main import main
from oim_lab.graph import WeightVector, build_graph, dump_graph, load_graph

CONFIG = """
graph:
  file: graph.json
algorithm: lt_linucb
horizon: 4
output:
  csv: out/regret.csv
"""


@pytest.fixture
def graph_file(tmp_path: Path) -> Path:
    path = tmp_path / "graph.json"
    dump_graph(*build_graph([(0, 1, 0.2)]), path)
    return path


def _exit_code(argv) -> int:
    with raises(SystemExit) as e:
        main(argv)
    return e.value.code


def test_version():
    assert _exit_code(["--version"]) == 0


def test_help(capsys):
    main(["help"])
    assert "generate-graph" in capsys.readouterr().out

    assert _exit_code(["help", "gom-check"]) == 0
    assert "--update-bound" in capsys.readouterr().out


def test_generate_graph(tmp_path: Path):
    out = tmp_path / "chain.json"
    main(["generate-graph", "--family", "chain", "--n", "3", "--weight", "0.2", "-o", str(out)])

    graph, w = load_graph(out)
    assert graph.n == 3
    assert w.to_edge_list() == [(0, 1, approx(0.2)), (1, 2, approx(0.2))]


def test_generate_graph_stdout(capsys):
    main(["generate-graph", "--family", "bipartite", "--left", "2", "--right", "2", "--max-indegree", "1"])
    data = json.loads(capsys.readouterr().out)
    assert data["n"] == 4
    assert len(data["edges"]) == 2


def test_generate_graph_invalid_size():
    # a chain needs two nodes
    assert _exit_code(["generate-graph", "--family", "chain", "--n", "1"]) == EXIT_VALIDATION_ERROR


def test_schema(tmp_path: Path, capsys):
    main(["schema"])
    schema = json.loads(capsys.readouterr().out)
    assert "horizon" in schema["properties"]

    out = tmp_path / "schema.json"
    main(["schema", str(out)])
    with open(out, "r", encoding="utf8") as f:
        assert json.load(f) == schema


def test_validate(tmp_path: Path, graph_file: Path):
    (tmp_path / "out").mkdir()
    config = tmp_path / "experiment.yaml"
    config.write_text(CONFIG, encoding="utf8")
    main(["validate", str(config)])

    config.write_text(CONFIG.replace("horizon: 4", "horizon: 0"), encoding="utf8")
    assert _exit_code(["validate", str(config)]) == EXIT_VALIDATION_ERROR


def test_validate_no_strict(tmp_path: Path, graph_file: Path):
    config = tmp_path / "experiment.yaml"
    config.write_text(CONFIG, encoding="utf8")

    # the output directory does not exist
    assert _exit_code(["validate", str(config)]) == EXIT_VALIDATION_ERROR
    main(["validate", "--no-strict", str(config)])


def test_run(tmp_path: Path, graph_file: Path):
    (tmp_path / "out").mkdir()
    config = tmp_path / "experiment.yaml"
    config.write_text(CONFIG, encoding="utf8")

    main(["run", "-c", str(config)])

    assert (tmp_path / "out" / "regret.csv").exists()
    with open(tmp_path / "out" / "regret.json", "r", encoding="utf8") as f:
        summary = json.load(f)
    assert summary["horizon"] == 4
    assert summary["opt"] == approx(1.2)


def test_run_missing_graph(tmp_path: Path):
    (tmp_path / "out").mkdir()
    config = tmp_path / "experiment.yaml"
    config.write_text(CONFIG, encoding="utf8")
    assert _exit_code(["run", "-c", str(config)]) == EXIT_VALIDATION_ERROR


@pytest.fixture
def wprime_file(tmp_path: Path, graph_file: Path) -> Path:
    graph, _ = load_graph(graph_file)
    path = tmp_path / "wprime.json"
    dump_graph(graph, WeightVector(graph, [0.5]), path)
    return path


def test_gom_check(tmp_path: Path, graph_file: Path, wprime_file: Path):
    out = tmp_path / "report.json"
    main(
        [
            "gom-check",
            "--graph",
            str(graph_file),
            "--wprime",
            str(wprime_file),
            "--seeds",
            "0",
            "--update-bound",
            "-o",
            str(out),
        ]
    )

    with open(out, "r", encoding="utf8") as f:
        report = json.load(f)
    assert report["holds"] is True
    assert report["lhs"] == approx(0.3)
    assert report["rhs"] == approx(0.54)
    assert report["seeds"] == [0]
    assert report["update_bound"]["violations_d"] == 1


def test_gom_check_cap(graph_file: Path, wprime_file: Path):
    argv = ["gom-check", "--graph", str(graph_file), "--wprime", str(wprime_file), "--seeds", "0"]
    assert _exit_code([*argv, "--live-edge-cap", "1"]) == EXIT_CAP_EXCEEDED


def test_gom_check_foreign_weights(tmp_path: Path, graph_file: Path):
    other = tmp_path / "other.json"
    dump_graph(*build_graph([(1, 0, 0.5)]), other)
    argv = ["gom-check", "--graph", str(graph_file), "--wprime", str(other), "--seeds", "0"]
    assert _exit_code(argv) == EXIT_VALIDATION_ERROR


def test_wcim_solve(tmp_path: Path, graph_file: Path, capsys):
    confidence = tmp_path / "confidence.json"
    confidence.write_text(json.dumps({"1": {"M": [[1.0]], "b": [0.2], "rho": 0.1}}), encoding="utf8")

    main(["wcim-solve", "--graph", str(graph_file), "--confidence", str(confidence), "-k", "1"])

    result = json.loads(capsys.readouterr().out)
    assert result["seeds"] == [0]
    assert result["value"] == approx(1.3)
    assert result["weights"] == [[0, 1, approx(0.3)]]
    # the edge UCB oracle hands the optimistic weights to the exact oracle
    assert result["oracle"]["name"] == "exact"
    assert result["oracle"]["alpha"] == 1.0


def test_wcim_solve_missing_node(tmp_path: Path, graph_file: Path):
    confidence = tmp_path / "confidence.json"
    confidence.write_text("{}", encoding="utf8")
    argv = ["wcim-solve", "--graph", str(graph_file), "--confidence", str(confidence)]
    assert _exit_code(argv) == EXIT_VALIDATION_ERROR

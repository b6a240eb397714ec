import json
from pathlib import Path

import pandas as pd
from pytest import approx, raises

from oim_lab.harness import load_experiment, run_experiment
from oim_lab.harness.experiment import CSV_COLUMNS, plan_experiment
from oim_lab.utils.modeling.exceptions import DataValidationError

LINUCB = """
graph:
  generator:
    family: chain
    n: 3
    weight: 0.4
algorithm: lt_linucb
horizon: 3
replications: 2
master-seed: 11
output:
  csv: results/linucb.csv
"""

ETC = """
graph:
  generator:
    family: star
    n: 3
    weight: 0.5
algorithm: oim_etc
horizon: 10
budget:
  mode: manual
  k: 2
output:
  csv: results/etc.csv
"""


def _config(tmp_path: Path, text: str, name: str = "experiment.yaml") -> Path:
    (tmp_path / "results").mkdir(exist_ok=True)
    path = tmp_path / name
    path.write_text(text, encoding="utf8")
    return path


def _run(path: Path):
    return run_experiment(load_experiment(path))


def test_relative_paths_resolve_against_config(tmp_path: Path):
    config = load_experiment(_config(tmp_path, LINUCB))
    assert config.output.csv.to_path() == tmp_path / "results" / "linucb.csv"


def test_missing_output_directory(tmp_path: Path):
    path = tmp_path / "experiment.yaml"
    path.write_text(LINUCB, encoding="utf8")

    with raises(DataValidationError):
        load_experiment(path)
    load_experiment(path, strict=False)


def test_linucb_rows(tmp_path: Path):
    summary = _run(_config(tmp_path, LINUCB))

    frame = pd.read_csv(tmp_path / "results" / "linucb.csv")
    assert list(frame.columns) == CSV_COLUMNS
    assert len(frame) == 6
    assert list(frame["replication"]) == [0, 0, 0, 1, 1, 1]
    assert list(frame["round"]) == [1, 2, 3, 1, 2, 3]
    assert (frame["ms_elapsed"] == 0).all()

    for _, rows in frame.groupby("replication"):
        steps = (rows["eta_opt"] - rows["spread"]).cumsum()
        assert list(rows["cum_regret"]) == approx(list(steps))

    assert summary["algorithm"] == "lt_linucb"
    assert summary["oracle"] == "edge_ucb"
    assert summary["evaluation"] == "exact"
    assert summary["horizon"] == 3
    assert summary["replications"] == 2
    assert summary["eta_opt"] == approx(summary["eta"] * summary["opt"])
    # the best single seed of the chain is its head
    assert summary["baseline_seeds"] == [0]
    assert summary["opt"] == approx(1 + 0.4 + 0.16)
    assert set(summary["final_regret"]) == {"min", "q25", "median", "q75", "max"}
    assert 0.0 <= summary["coverage_violation_rate"] <= 1.0
    assert "delta" in summary
    assert summary["radius_mode"] == "per_node"


def test_summary_next_to_csv(tmp_path: Path):
    summary = _run(_config(tmp_path, LINUCB))
    with open(tmp_path / "results" / "linucb.json", "r", encoding="utf8") as f:
        assert json.load(f) == summary


def test_explicit_summary_path(tmp_path: Path):
    _run(_config(tmp_path, LINUCB + "  summary: results/summary.json\n"))
    assert (tmp_path / "results" / "summary.json").exists()
    assert not (tmp_path / "results" / "linucb.json").exists()


def test_rerun_is_byte_identical(tmp_path: Path):
    path = _config(tmp_path, LINUCB)
    csv = tmp_path / "results" / "linucb.csv"

    _run(path)
    first = csv.read_bytes()
    _run(path)
    assert csv.read_bytes() == first


def test_workers_do_not_change_results(tmp_path: Path):
    path = _config(tmp_path, LINUCB)
    csv = tmp_path / "results" / "linucb.csv"
    _run(path)
    serial = csv.read_bytes()

    _run(_config(tmp_path, LINUCB + "workers: 2\n"))
    assert csv.read_bytes() == serial


def test_etc_summary(tmp_path: Path):
    summary = _run(_config(tmp_path, ETC))

    frame = pd.read_csv(tmp_path / "results" / "etc.csv")
    assert len(frame) == 10
    # exploration seeds one node per round
    assert [str(s) for s in frame["seed_set"][:6]] == ["0", "1", "2", "0", "1", "2"]

    assert summary["algorithm"] == "oim_etc"
    assert summary["oracle"] == "exact"
    assert summary["model"] == "LT"
    assert summary["exploration_k"] == 2
    assert len(summary["committed_seeds"]) == 1
    assert len(summary["committed_seeds"][0]) == 1


def test_etc_budget_must_fit(tmp_path: Path):
    config = load_experiment(_config(tmp_path, ETC.replace("k: 2", "k: 4")))
    with raises(ValueError):
        plan_experiment(config)


def test_etc_independent_budget(tmp_path: Path):
    text = ETC.replace("horizon: 10", "horizon: 300").replace("  mode: manual\n  k: 2\n", "  mode: independent\n")
    config = load_experiment(_config(tmp_path, text))
    plan = plan_experiment(config)

    assert 1 <= plan.exploration_k <= 100
    assert plan.extras["exploration_k"] == plan.exploration_k
    assert plan.extras["regret_bound"] > 0


def test_monte_carlo_evaluation(tmp_path: Path):
    text = LINUCB + "evaluation:\n  mode: mc\n  sims: 20\n"
    summary = _run(_config(tmp_path, text))

    assert summary["evaluation"] == "mc"
    frame = pd.read_csv(tmp_path / "results" / "linucb.csv")
    assert ((frame["spread"] >= 1.0) & (frame["spread"] <= 3.0)).all()

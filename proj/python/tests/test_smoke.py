import json
import pathlib

import pytest

import taskseq

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "fixtures"


def test_counts_and_enumeration():
    assert taskseq.count_curricula(9, 5) == 18729
    assert taskseq.count_curricula(5, 3, 2) == 80
    cs = taskseq.enumerate_curricula(["a", "b", "c"], 2)
    assert cs[:3] == [["a"], ["b"], ["c"]]
    assert len(cs) == 9


def test_aco_probabilities():
    p = taskseq.aco_selection_prob([5.0, 0.0], [0.0, 0.0])
    assert p == pytest.approx([2 / 3, 1 / 3], abs=1e-12)


def test_sign_test():
    assert taskseq.sign_test_p_value(5, 0) == pytest.approx(1 / 32)


def test_task_set_and_learner():
    tasks = taskseq.load_task_set(FIXTURES / "corridor" / "tasks.json")
    assert tasks["tasks"][0]["task_id"] == "corridor"
    assert taskseq.optimal_return(FIXTURES / "corridor" / "tasks.json", "corridor") == 199
    returns = taskseq.train(FIXTURES / "corridor" / "tasks.json", "corridor", 300, seed=1)
    assert len(returns) == 300
    assert returns[-1] == 199


def test_search_on_python_objective():
    ids = [f"t{i}" for i in range(5)]

    def objective(curriculum):
        return 10.0 if curriculum == ["t3", "t1", "t4"] else float(len(curriculum))

    for algo in ["htscr", "tabu", "ga", "aco"]:
        result = taskseq.search_function(algo, objective, ids, 3, 85, seed=2, scratch=0.0)
        assert result["best"]["curriculum"] == ["t3", "t1", "t4"]
        assert len(result["trace"]) <= 85
    hts = taskseq.search_function("htscr", objective, ids, 3, 20)
    assert [e["curriculum"] for e in hts["trace"]][:2] == [["t0", "t1"], ["t0", "t2"]]


def test_experiment_round_trip(tmp_path):
    def task(tid, rows):
        return {"task_id": tid, "env": {"kind": "gridworld", "map": rows},
                "max_steps": 20, "train_episodes": 4, "eval_episodes": 3}

    (tmp_path / "tasks.json").write_text(json.dumps({"tasks": [
        task("goal", ["S..", "..T"]), task("a", ["S.T"]), task("b", ["S.", ".T"]), task("c", ["ST"])]}))
    (tmp_path / "exp.json").write_text(json.dumps({
        "name": "py", "task_set": "tasks.json", "final_tasks": ["goal"], "L": 2, "epochs": 2,
        "repeats": 2, "algorithms": ["htscr", "tabu", "ga", "aco"]}))

    exp = taskseq.Experiment(tmp_path / "exp.json", cache=tmp_path / "cache.jsonl")
    assert exp.ids == ["a", "b", "c"]
    assert exp.space_size == 9
    record = exp.evaluate(["b", "a"])
    assert record["curriculum"] == ["b", "a"]
    assert len(record["seeds"]) == 2
    assert len(exp.enumerate()) == 9
    assert exp.scratch_value() is not None
    summary = exp.run(tmp_path / "out")
    assert [a["algorithm"] for a in summary["algorithms"]] == ["htscr", "tabu", "ga", "aco"]
    assert (tmp_path / "out" / "curves.csv").exists()

    again = taskseq.Experiment(tmp_path / "exp.json", cache=tmp_path / "cache.jsonl")
    assert again.evaluate(["b", "a"]) == record
    first = again.search("aco", seed=4)
    assert again.search("aco", seed=4) == first


def test_errors(tmp_path):
    with pytest.raises(taskseq.ConfigError):
        taskseq.load_task_set(tmp_path / "missing.json")
    with pytest.raises(taskseq.ConfigError):
        taskseq.search_function("simplex", lambda c: 0.0, ["a", "b"], 2, 5)

import json

import pytest

from pyreline.cli import main
from pyreline.graph import write_edgelist

from oracles import make_path_graph


def test_exact_subcommand(tmp_path, capsys):
    path = tmp_path / "p9.edgelist"
    write_edgelist(make_path_graph(9), path)
    assert main(["exact", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("b=3")
    assert "sources:" in out


def test_run_subcommand(tmp_path, capsys):
    doc = {
        "schema": 1,
        "name": "cli-smoke",
        "schedule": {"kind": "constant", "value": 1},
        "builder": "path",
        "arsonist": "greedy",
        "turns": 5,
        "seed": 1,
        "assertions": [
            {"metric": "tail_max", "comparator": "<=", "threshold": 1.0}
        ],
    }
    sc = tmp_path / "sc.json"
    sc.write_text(json.dumps(doc))
    out = tmp_path / "out"
    assert main(["run", str(sc), "--out", str(out)]) == 0
    assert (out / "cli-smoke.trace.csv").exists()
    assert (out / "cli-smoke.summary.json").exists()
    printed = capsys.readouterr().out
    assert "[PASS]" in printed


def test_run_failing_assertion_sets_exit_code(tmp_path, capsys):
    doc = {
        "schema": 1,
        "name": "failing",
        "schedule": {"kind": "constant", "value": 1},
        "builder": "path",
        "arsonist": "greedy",
        "turns": 5,
        "seed": 1,
        "assertions": [
            {"metric": "tail_max", "comparator": "<", "threshold": 0.5}
        ],
    }
    sc = tmp_path / "sc.json"
    sc.write_text(json.dumps(doc))
    assert main(["run", str(sc)]) == 1
    assert "[FAIL]" in capsys.readouterr().out


def test_verify_tree_dominance_subcommand(capsys):
    assert main(["verify-tree-dominance", "--samples", "3", "--turns", "20", "--seed", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["violations"] == 0


def test_report_subcommand(tmp_path, capsys):
    doc = {
        "schema": 1,
        "name": "fig",
        "schedule": {"kind": "poly", "c": 1.0, "alpha": 0.5},
        "builder": "path",
        "arsonist": "random",
        "turns": 50,
        "seed": 1,
    }
    sc = tmp_path / "sc.json"
    sc.write_text(json.dumps(doc))
    out = tmp_path / "out"
    main(["run", str(sc), "--out", str(out)])
    trace = out / "fig.trace.csv"
    assert main(["report", str(trace)]) == 0
    assert (out / "fig.trace.png").exists()


def test_bad_scenario_reports_error(tmp_path, capsys):
    sc = tmp_path / "bad.json"
    sc.write_text("{}")
    assert main(["run", str(sc)]) == 2
    assert "error:" in capsys.readouterr().err


def test_sweep_subcommand(tmp_path, capsys):
    template = {
        "schema": 1,
        "name": "sw",
        "schedule": {"kind": "poly", "c": 1.0, "alpha": 0.5},
        "builder": "path",
        "arsonist": "random",
        "turns": 30,
        "seed": 1,
    }
    grid = {"seed": [1, 2]}
    t = tmp_path / "t.json"
    g = tmp_path / "g.json"
    t.write_text(json.dumps(template))
    g.write_text(json.dumps(grid))
    out = tmp_path / "out"
    assert main(["sweep", str(t), str(g), "--out", str(out)]) == 0
    assert (out / "sweep.csv").exists()
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2

import numpy as np
import pytest

from pyreline.engine import BuilderMove, Game, validate_builder_move, write_trace_csv, write_trace_jsonl
from pyreline.errors import (
    EdgeBetweenOldVertices,
    ResultDisconnected,
    StrategyPassedWithUnburnedVertices,
    StrategyReturnedBurnedVertex,
    StrategyReturnedUnknownVertex,
    WrongCount,
)
from pyreline.graph import GrowingGraph
from pyreline.schedule import cumulative_through, make_schedule
from pyreline.strategies import make_arsonist, make_builder

from conftest import new_game
from oracles import FullScanGame, make_path_graph


# -- spread ------------------------------------------------------------------

def spread_once(graph, burning):
    """Replay a prebuilt graph into a fresh game and run one spread round."""
    g = Game(make_schedule({"kind": "table", "values": [graph.vertex_count]}),
             make_builder("human"), make_arsonist("random", 1))
    eu, ev = graph.edge_arrays()
    g.begin_turn()
    g.apply_builder_move(BuilderMove(graph.vertex_count, (eu, ev)))
    for v in burning:
        g.burn.burned.data[v] = True
        g.burn.count += 1
    g.burn.frontier = np.array(sorted(burning), np.int32)
    before = set(np.flatnonzero(g.burn.burned.view()))
    g.run_spread()
    after = set(np.flatnonzero(g.burn.burned.view()))
    return after - before


def test_spread_path():
    assert spread_once(make_path_graph(3), {0}) == {1}


def test_spread_empty():
    assert spread_once(make_path_graph(3), set()) == set()


def test_spread_star():
    g = GrowingGraph()
    g.add_generation(1, 5, [(0, i) for i in range(1, 5)])
    assert spread_once(g, {0}) == {1, 2, 3, 4}


# -- validate_builder_move ------------------------------------------------------

def test_validate_ok():
    g = GrowingGraph()
    g.add_generation(1, 1, [])
    validate_builder_move(g, BuilderMove(2, [(0, 1), (1, 2)]), 2)


def test_validate_disconnected():
    g = GrowingGraph()
    g.add_generation(1, 1, [])
    with pytest.raises(ResultDisconnected):
        validate_builder_move(g, BuilderMove(2, [(1, 2)]), 2)


def test_validate_wrong_count():
    g = GrowingGraph()
    g.add_generation(1, 1, [])
    with pytest.raises(WrongCount):
        validate_builder_move(g, BuilderMove(3, [(0, 1), (1, 2), (2, 3)]), 2)


def test_validate_zero_count_must_be_empty():
    g = GrowingGraph()
    g.add_generation(1, 2, [(0, 1)])
    validate_builder_move(g, BuilderMove(0, []), 0)
    with pytest.raises(EdgeBetweenOldVertices):
        validate_builder_move(g, BuilderMove(0, [(0, 1)]), 0)


# -- play_turn -------------------------------------------------------------------

def test_first_turn_single_vertex():
    game = new_game({"kind": "constant", "value": 1}, "path", "greedy")
    rec = game.play_turn()
    assert (rec.n, rec.added, rec.vertex_total, rec.burning_total) == (1, 1, 1, 1)
    assert rec.source == 0


def test_second_turn_spread_covers_then_pass():
    game = new_game({"kind": "constant", "value": 1}, "path", "greedy")
    game.play_turn()
    rec = game.play_turn()
    assert rec.vertex_total == 2 and rec.burning_total == 2
    assert rec.source is None  # PASS: spread covered the only new vertex


def test_engine_vs_fullscan_small():
    """f(n)=2 path + greedy for 5 turns equals the full-scan reference."""
    fast = new_game({"kind": "constant", "value": 2}, "path", "greedy", seed=9)
    slow = FullScanGame(
        make_schedule({"kind": "constant", "value": 2}),
        make_builder("path", 9),
        make_arsonist("greedy", 9),
    )
    for _ in range(5):
        a = fast.play_turn()
        b = slow.play_turn()
        assert (a.n, a.added, a.vertex_total, a.burning_total, a.source) == (
            b.n, b.added, b.vertex_total, b.burning_total, b.source)


def test_run_single_turn_density():
    game = new_game({"kind": "constant", "value": 1}, "path", "greedy")
    series = game.run(1)
    assert len(series) == 1 and series.densities()[0] == 1.0


def test_run_determinism():
    a = new_game({"kind": "poly", "c": 1.0, "alpha": 0.5}, "rrt", "random", seed=5).run(300)
    b = new_game({"kind": "poly", "c": 1.0, "alpha": 0.5}, "rrt", "random", seed=5).run(300)
    assert np.array_equal(a.burning, b.burning)
    assert np.array_equal(a.vertices, b.vertices)


def test_ignite_validation():
    game = new_game({"kind": "constant", "value": 3}, "path", "greedy")
    game.begin_turn()
    game.apply_builder_move(game.builder.propose(game, 3))
    game.run_spread()
    with pytest.raises(StrategyReturnedUnknownVertex):
        game.ignite(99)
    with pytest.raises(StrategyPassedWithUnburnedVertices):
        game.ignite(None)
    game.ignite(1)
    game.begin_turn()
    game.apply_builder_move(game.builder.propose(game, 3))
    game.run_spread()
    with pytest.raises(StrategyReturnedBurnedVertex):
        game.ignite(1)


# -- invariants ---------------------------------------------------------------------

def fuzz_pairs():
    return [
        ({"kind": "constant", "value": 2}, "path", "greedy", 300),
        ({"kind": "poly", "c": 1.0, "alpha": 0.4}, "rrt", "random", 300),
        ({"kind": "example1", "alpha": 0.25}, "path", "greedy", 300),
        ({"kind": "poly", "c": 1.0, "alpha": 0.5}, "star", "phase", 300),
        ({"kind": "linear", "c": 1.0}, "path", "phase", 200),
    ]


@pytest.mark.parametrize("sched,builder,arsonist,turns", fuzz_pairs())
def test_burning_monotone_and_conserved(sched, builder, arsonist, turns):
    game = new_game(sched, builder, arsonist, seed=3)
    series = game.run(turns)
    assert np.all(np.diff(series.burning) >= 0)
    assert series.vertices[-1] == cumulative_through(sched, turns)
    # PASS only when everything is burning
    for rec in game.records():
        if rec.source is None:
            assert rec.burning_total == rec.vertex_total


def test_spread_work_is_amortized_linear():
    game = new_game({"kind": "constant", "value": 3}, "star", "random", seed=2)
    game.run(500)
    v = game.graph.vertex_count
    e = game.graph.edge_count
    # each vertex enters the frontier once; each edge is examined O(1) times
    assert game.spread_examined <= 3 * (v + e) + 500


def test_trace_export(tmp_path):
    game = new_game({"kind": "constant", "value": 2}, "path", "greedy")
    game.run(4)
    csv_path = tmp_path / "t.csv"
    write_trace_csv(game, csv_path)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "n,added,vertices,burning,density,source"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "1" and first[5] in {"PASS"} | {str(i) for i in range(10)}
    jsonl_path = tmp_path / "t.jsonl"
    write_trace_jsonl(game, jsonl_path)
    import json

    rows = [json.loads(s) for s in jsonl_path.read_text().splitlines()]
    assert rows[0]["n"] == 1 and rows[0]["vertices"] == 2

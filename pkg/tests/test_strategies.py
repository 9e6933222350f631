import numpy as np
import pytest

from pyreline.engine import Game
from pyreline.errors import BadStrategy, HumanMoveRequired
from pyreline.schedule import make_schedule
from pyreline.strategies import (
    GreedyArsonist,
    PathBuilder,
    PhaseArsonist,
    StarBuilder,
    make_arsonist,
    make_builder,
)
from pyreline._util import ceil_sqrt

from conftest import new_game
from oracles import FullScanGame, farthest_unburned


# -- builders -------------------------------------------------------------------

def test_path_builder_moves():
    game = new_game({"kind": "constant", "value": 5}, "path", "random", seed=1)
    game.play_turn()
    b = game.builder
    move = b.propose(game, 3)
    eu, ev = move.edges
    assert list(zip(eu.tolist(), ev.tolist())) == [(4, 5), (5, 6), (6, 7)]
    assert b.propose(game, 0).count == 0


def test_path_builder_from_empty():
    game = new_game({"kind": "constant", "value": 2}, "path", "random", seed=1)
    move = game.builder.propose(game, 2)
    eu, ev = move.edges
    assert list(zip(eu.tolist(), ev.tolist())) == [(0, 1)]


def test_path_builder_is_a_path():
    game = new_game({"kind": "poly", "c": 1.0, "alpha": 0.6}, "path", "random", seed=4)
    for _ in range(40):
        game.play_turn()
        eu, ev = game.graph.edge_arrays()
        degs = np.bincount(np.concatenate([eu, ev]), minlength=game.graph.vertex_count)
        n = game.graph.vertex_count
        if n >= 2:
            assert sorted(degs.tolist())[:2] == [1, 1] or n == 1
            assert (degs == 2).sum() == n - 2
            assert (degs == 1).sum() == 2


def test_star_builder_first_vertex_is_bare_hub():
    game = new_game({"kind": "constant", "value": 1}, "star", "random", seed=1)
    move = game.builder.propose(game, 1)
    assert move.count == 1 and move.edges[0].size == 0


def test_star_builder_moves():
    game = new_game({"kind": "constant", "value": 3}, "star", "random", seed=1)
    move = game.builder.propose(game, 3)
    eu, ev = move.edges
    assert list(zip(eu.tolist(), ev.tolist())) == [(0, 1), (0, 2)]
    game.play_turn()
    move = game.builder.propose(game, 3)
    eu, ev = move.edges
    assert list(zip(eu.tolist(), ev.tolist())) == [(0, 3), (0, 4), (0, 5)]
    assert game.builder.propose(game, 0).count == 0


def test_rrt_root_and_fixture():
    game = new_game({"kind": "constant", "value": 1}, "rrt", "random", seed=7)
    move = game.builder.propose(game, 1)
    eu, ev = move.edges
    assert eu.size == 0  # first vertex is the root

    # same seed twice: identical parent sequences over 10 turns of f=2
    def parents(seed):
        g = new_game({"kind": "constant", "value": 2}, "rrt", "random", seed=seed)
        g.run(10)
        eu, ev = g.graph.edge_arrays()
        return list(zip(eu.tolist(), ev.tolist()))

    assert parents(42) == parents(42)
    assert parents(42) != parents(43)


def test_rrt_parent_uniformity():
    """Chi-square: the parent of the next vertex is uniform within 3 sigma."""
    base = 7  # drawing a parent among 7 existing vertices
    trials = 100_000
    counts = np.zeros(base, np.int64)
    rng = np.random.default_rng(11)
    builder = make_builder("rrt", seed=0)
    # sample the same decision repeatedly with fresh rngs
    draws = np.floor(builder.rng.random(trials) * base).astype(int)
    for d in draws:
        counts[d] += 1
    expected = trials / base
    chi2 = ((counts - expected) ** 2 / expected).sum()
    dof = base - 1
    # 3 sigma above the dof mean for chi-square (var = 2 dof)
    assert chi2 < dof + 3 * np.sqrt(2 * dof)


def test_human_strategies_raise():
    game = new_game({"kind": "constant", "value": 1}, "human", "human")
    with pytest.raises(HumanMoveRequired):
        game.play_turn()


def test_unknown_names_rejected():
    with pytest.raises(BadStrategy):
        make_builder("nope")
    with pytest.raises(BadStrategy):
        make_arsonist("nope")


# -- greedy arsonist ---------------------------------------------------------------

def test_greedy_picks_farthest():
    game = new_game({"kind": "table", "values": [10, 0]}, "path", "greedy")
    game.play_turn()  # ignites 0 (all distances infinite, lowest id)
    rec = game.play_turn()  # spread burns 1; farthest from {0,1} is 9
    assert rec.source == 9


def test_greedy_tie_breaks_low():
    # symmetric path with fire in the middle: both ends tie, lowest id wins
    game = new_game({"kind": "table", "values": [5, 0]}, "path", "greedy")
    g = game
    g.begin_turn()
    g.apply_builder_move(g.builder.propose(g, 5))
    g.run_spread()
    g.ignite(2)  # centre
    rec = g.play_turn()
    assert rec.source == 0


def test_greedy_matches_bfs_oracle_per_turn():
    """Every greedy pick equals a fresh multi-source BFS argmax."""
    fast = new_game({"kind": "poly", "c": 1.0, "alpha": 0.5}, "rrt", "greedy", seed=13)
    for _ in range(120):
        fast.begin_turn()
        fast.apply_builder_move(fast.builder.propose(fast, fast._required))
        fast.run_spread()
        if fast.all_burned():
            fast.ignite(None)
            continue
        pick = fast.arsonist.choose(fast)
        want = farthest_unburned(fast.graph, fast.burn.burned.view())
        assert pick == want
        fast.ignite(pick)


def test_greedy_requires_fresh_game():
    game = new_game({"kind": "constant", "value": 2}, "path", "random", seed=1)
    game.play_turn()
    with pytest.raises(BadStrategy):
        GreedyArsonist().setup(game)


# -- random arsonist ---------------------------------------------------------------

def test_random_single_choice_and_pass():
    game = new_game({"kind": "table", "values": [2, 1]}, "path", "random", seed=3)
    rec = game.play_turn()
    assert rec.source in (0, 1)
    # all burned: engine records PASS without consulting the strategy
    rec2 = game.play_turn()
    assert rec2.source in (2, None)


def test_random_returns_the_only_unburned_vertex():
    game = new_game({"kind": "table", "values": [3, 0]}, "path", "random", seed=3)
    game.begin_turn()
    game.apply_builder_move(game.builder.propose(game, 3))
    game.run_spread()
    game.ignite(0)
    game.begin_turn()
    game.apply_builder_move(game.builder.propose(game, 0))
    game.run_spread()  # burns 1; only 2 remains
    assert game.arsonist.choose(game) == 2
    # nothing unburned: strategy itself passes
    game.ignite(2)
    assert game.arsonist.choose(game) is None


def test_random_uniform_over_unburned():
    game = new_game({"kind": "table", "values": [10, 0]}, "path", "random", seed=5)
    game.begin_turn()
    game.apply_builder_move(game.builder.propose(game, 10))
    game.run_spread()
    game.ignite(0)
    counts = np.zeros(10, np.int64)
    trials = 100_000
    ars = game.arsonist
    for _ in range(trials):
        counts[ars.choose(game)] += 1
    assert counts[0] == 0
    live = counts[1:]
    expected = trials / 9
    chi2 = ((live - expected) ** 2 / expected).sum()
    dof = 8
    assert chi2 < dof + 3 * np.sqrt(2 * dof)


# -- phase arsonist ----------------------------------------------------------------

def test_phase_warmup_burns_lowest_ids():
    game = new_game(
        {"kind": "constant", "value": 3}, "path", "phase",
        arsonist_params={"warmup": 3},
    )
    recs = [game.play_turn() for _ in range(3)]
    assert [r.source for r in recs] == [0, 2, 4]  # lowest unburned each turn


def test_phase_growth_one_burns_everything():
    game = new_game(
        {"kind": "constant", "value": 1}, "path", "phase",
        arsonist_params={"warmup": 1},
    )
    for rec in [game.play_turn() for _ in range(30)]:
        assert rec.burning_total == rec.vertex_total


def test_phase_recursion_fixture():
    """(N_k) for f=floor(sqrt(n)), path builder, warmup 10: replay the
    recursion N_{k+1} = N_k + A_k with A_k from the planner policy
    (exact b(P_m) = ceil(sqrt(m)) up to the cap, then the ceil(sqrt(2m))
    budget)."""
    from pyreline.schedule import cumulative_through

    game = new_game(
        {"kind": "poly", "c": 1.0, "alpha": 0.5}, "path", "phase", seed=1,
        arsonist_params={"warmup": 10},
    )
    game.run(120)
    got = [(b["turn"], b["vertices"], b["rounds"]) for b in game.arsonist.boundaries[:5]]
    expect = []
    n_k = 10
    for _ in range(5):
        m = cumulative_through({"kind": "poly", "c": 1.0, "alpha": 0.5}, n_k)
        rounds = ceil_sqrt(m) if m <= 64 else ceil_sqrt(2 * m)
        expect.append((n_k, m, rounds))
        n_k += rounds
    assert got == expect


def test_phase_boundary_invariant_and_budget():
    game = new_game({"kind": "poly", "c": 1.0, "alpha": 0.6}, "rrt", "phase", seed=21)
    game.run(400)
    bounds = game.arsonist.boundaries
    burning = game._trace_burning.view()
    assert len(bounds) >= 3
    for prev, nxt in zip(bounds, bounds[1:]):
        assert burning[nxt["turn"] - 1] >= prev["vertices"]
    for b in bounds:
        if not b["budget_violation"] and b["vertices"]:
            assert b["rounds"] <= ceil_sqrt(2 * b["vertices"])


def test_phase_substitution_when_planned_source_burned():
    # growth 1 on a path: spread covers everything, so planned sources are
    # always burned and the substitution rule must keep the turn legal
    game = new_game(
        {"kind": "constant", "value": 2}, "star", "phase",
        arsonist_params={"warmup": 2},
    )
    series = game.run(50)
    assert series.densities()[-1] == 1.0


# -- every pair stays legal ----------------------------------------------------------

@pytest.mark.parametrize("builder", ["path", "star", "rrt"])
@pytest.mark.parametrize("arsonist", ["phase", "greedy", "random"])
def test_strategy_pairs_fuzz(builder, arsonist):
    """10^4-turn games: every proposed move passes engine validation
    (the engine validates inline and raises on any illegal output)."""
    game = new_game({"kind": "constant", "value": 2}, builder, arsonist, seed=17)
    series = game.run(10_000)
    assert series.vertices[-1] == 20_000
    assert np.all(series.burning <= series.vertices)

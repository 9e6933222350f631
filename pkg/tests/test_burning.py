import numpy as np
import pytest

from pyreline.burning import (
    exact_burning_number,
    greedy_schedule,
    path_schedule,
    simulate_schedule,
    spanning_tree_schedule,
    sqrt_2n_budget,
    verify_schedule,
)
from pyreline.errors import EmptyGraph, GraphDisconnected, GraphTooLarge
from pyreline.graph import GrowingGraph
from pyreline._util import ceil_sqrt

from oracles import (
    brute_force_burning_number,
    make_path_graph,
    make_star_graph,
    random_tree_graph,
    relabeled_copy,
)


def test_single_vertex():
    g = GrowingGraph()
    g.add_generation(1, 1, [])
    b, sched = exact_burning_number(g)
    assert b == 1 and sched.sources == [0]


def test_path_paper_values():
    assert exact_burning_number(make_path_graph(9))[0] == 3
    assert exact_burning_number(make_path_graph(10))[0] == 4


def test_errors():
    with pytest.raises(EmptyGraph):
        exact_burning_number(GrowingGraph())
    g = GrowingGraph()
    g.add_generation(1, 2, [])
    with pytest.raises(GraphDisconnected):
        exact_burning_number(g)
    with pytest.raises(GraphTooLarge):
        exact_burning_number(make_path_graph(65))
    assert exact_burning_number(make_path_graph(65), cap=70)[0] == 9


def test_matches_brute_force_on_random_trees(rng):
    for _ in range(100):
        n = int(rng.integers(1, 21))
        g = random_tree_graph(rng, n)
        b, sched = exact_burning_number(g)
        expect, _ = brute_force_burning_number(g)
        assert b == expect
        assert verify_schedule(g, sched)


def test_schedule_is_feasible_and_simulates(rng):
    for _ in range(30):
        n = int(rng.integers(1, 40))
        g = random_tree_graph(rng, n)
        b, sched = exact_burning_number(g)
        assert verify_schedule(g, sched)
        # covering view == process view
        assert simulate_schedule(g, sched) == n


def test_path_schedule_examples():
    s1 = path_schedule(1)
    assert s1.rounds == 1 and s1.sources == [0]
    assert path_schedule(4).rounds == 2
    s9 = path_schedule(9)
    assert s9.rounds == 3
    # interval lengths 5, 3, 1: balls centred at 2, 6, 8
    assert s9.sources == [2, 6, 8]
    assert verify_schedule(make_path_graph(9), s9)


def test_path_schedule_rounds_formula():
    for n in range(1, 10_001):
        assert path_schedule(n).rounds == ceil_sqrt(n)


def test_path_schedule_covers(rng):
    for n in [1, 2, 3, 5, 8, 13, 36, 50, 100, 257]:
        sched = path_schedule(n)
        g = make_path_graph(n)
        assert verify_schedule(g, sched)
        assert simulate_schedule(g, sched) == n


def test_greedy_star():
    sched = greedy_schedule(make_star_graph(5), 2)
    assert sched is not None and sched.sources[0] == 0  # hub first: covers all 5


def test_greedy_path_budgets():
    assert greedy_schedule(make_path_graph(9), 2) is None
    sched = greedy_schedule(make_path_graph(9), 3)
    assert sched is not None
    assert verify_schedule(make_path_graph(9), sched)


def test_greedy_ties_go_low(rng):
    # all gains equal on an edgeless ... use K2: radius 1 ball covers both
    g = GrowingGraph()
    g.add_generation(1, 2, [(0, 1)])
    sched = greedy_schedule(g, 2)
    assert sched.sources[0] == 0


def test_sqrt_budget_values():
    assert sqrt_2n_budget(50) == 10
    assert sqrt_2n_budget(2) == 2
    assert sqrt_2n_budget(1) == 2


def test_eq1_budget_dominates_exact(rng):
    for _ in range(40):
        n = int(rng.integers(1, 30))
        g = random_tree_graph(rng, n)
        b, _ = exact_burning_number(g)
        assert b <= sqrt_2n_budget(n)


def test_relabeling_invariance(rng):
    for _ in range(20):
        n = int(rng.integers(2, 16))
        g = random_tree_graph(rng, n)
        perm = rng.permutation(n)
        h = relabeled_copy(g, perm)
        assert exact_burning_number(g)[0] == exact_burning_number(h)[0]


def test_spanning_tree_planner(rng):
    for _ in range(25):
        n = int(rng.integers(1, 400))
        g = random_tree_graph(rng, max(n, 1))
        sched = spanning_tree_schedule(g)
        assert sched.rounds == sqrt_2n_budget(g.vertex_count)
        assert verify_schedule(g, sched)
        assert simulate_schedule(g, sched) == g.vertex_count


def test_spanning_tree_planner_on_cyclic_graph():
    g = GrowingGraph()
    g.add_generation(1, 6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])
    sched = spanning_tree_schedule(g)
    assert verify_schedule(g, sched)


def test_greedy_matches_cover_check(rng):
    for _ in range(20):
        n = int(rng.integers(2, 60))
        g = random_tree_graph(rng, n)
        budget = sqrt_2n_budget(n)
        sched = greedy_schedule(g, budget)
        if sched is not None:
            assert verify_schedule(g, sched)
            assert simulate_schedule(g, sched) == n

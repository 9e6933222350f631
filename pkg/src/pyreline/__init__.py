"""Adversarial graph-burning game: engine, strategies, solvers, harness.

Builder grows a connected graph by f(n) vertices per turn, fire spreads
one synchronous round, and Arsonist ignites a new source. The package
provides the turn engine, the burning-number solvers, the strategies
from the threshold analysis, spanning-tree dominance checks, density
metrics, a scenario harness with reproduction presets, and an HTTP
service for interactive play.
"""

from .burning import (
    BurnSchedule,
    exact_burning_number,
    greedy_schedule,
    path_schedule,
    spanning_tree_schedule,
    sqrt_2n_budget,
)
from .density import DensitySeries, checkpoint_densities, tail_extrema
from .engine import (
    BuilderMove,
    BurnState,
    Game,
    TurnRecord,
    validate_builder_move,
    write_trace_csv,
    write_trace_jsonl,
)
from .graph import GraphSnapshot, GrowingGraph, read_edgelist, write_edgelist
from .scenario import Scenario, get_preset, preset_names, run_scenario, sweep
from .schedule import GrowthSchedule, cumulative_through, make_schedule
from .spanning import TreeSequence, dominance_check, incremental_spanning_tree
from .strategies import make_arsonist, make_builder

__version__ = "0.1.0"

__all__ = [
    "BuilderMove",
    "BurnSchedule",
    "BurnState",
    "DensitySeries",
    "Game",
    "GraphSnapshot",
    "GrowingGraph",
    "GrowthSchedule",
    "Scenario",
    "TreeSequence",
    "TurnRecord",
    "checkpoint_densities",
    "cumulative_through",
    "dominance_check",
    "exact_burning_number",
    "get_preset",
    "greedy_schedule",
    "incremental_spanning_tree",
    "make_arsonist",
    "make_builder",
    "make_schedule",
    "path_schedule",
    "preset_names",
    "read_edgelist",
    "run_scenario",
    "spanning_tree_schedule",
    "sqrt_2n_budget",
    "sweep",
    "tail_extrema",
    "validate_builder_move",
    "write_edgelist",
    "write_trace_csv",
    "write_trace_jsonl",
]

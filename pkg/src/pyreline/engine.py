"""The three-phase turn loop: grow, spread, ignite.

Each turn: Builder's move is validated and applied, fire spreads one
synchronous round on the grown graph, then Arsonist ignites an unburned
vertex (or the turn records PASS when everything is already burning).
Spread is incremental from the previous turn's frontier plus vertices
newly attached to old burning vertices; the fuzz suite checks this is
observationally identical to the full-scan definition.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._util import GrowableArray
from .density import DensitySeries
from .errors import (
    DuplicateEdge,
    EdgeBetweenOldVertices,
    ResultDisconnected,
    SelfLoop,
    StrategyPassedWithUnburnedVertices,
    StrategyReturnedBurnedVertex,
    StrategyReturnedUnknownVertex,
    UnknownEndpoint,
    WrongCount,
)
from .graph import GrowingGraph, normalize_edges

PASS = None  # recorded source when no unburned vertex exists

_MOVE_ERRORS = {
    1: SelfLoop,
    2: UnknownEndpoint,
    3: EdgeBetweenOldVertices,
    4: DuplicateEdge,
    5: ResultDisconnected,
}


@dataclass
class BuilderMove:
    """f(n) new vertices (ids pre-assigned densely) plus their edges."""

    count: int
    edges: object  # list of pairs or (eu, ev) arrays

    @classmethod
    def empty(cls):
        return cls(0, [])


@dataclass
class TurnRecord:
    n: int
    added: int
    vertex_total: int
    burning_total: int
    source: int | None


class BurnState:
    """Burning membership, the incremental-spread frontier, and sources."""

    def __init__(self):
        self.burned = GrowableArray(np.bool_, fill=False)
        self.burn_turn = GrowableArray(np.int32, fill=-1)
        self.count = 0
        self.frontier = np.empty(0, np.int32)
        self.sources: list[int] = []  # -1 encodes PASS; index i is turn i+1

    def is_burned(self, v: int) -> bool:
        return bool(self.burned.data[v])

    def source_history(self):
        return [(i + 1, None if s < 0 else s) for i, s in enumerate(self.sources)]


def validate_builder_move(graph: GrowingGraph, move: BuilderMove, required_count: int):
    """Raise a MoveError unless the move is legal for this turn.

    Legal: exactly `required_count` vertices, every edge touches a new
    vertex, no self-loops or duplicates, and the grown graph is
    connected (for a 0-count turn the move must be empty).
    """
    if move.count != required_count:
        raise WrongCount(f"move adds {move.count} vertices, schedule says {required_count}")
    eu, ev = normalize_edges(move.edges)
    if required_count == 0 and eu.size:
        raise EdgeBetweenOldVertices("a 0-vertex turn must be the empty move")
    old = graph.vertex_count
    if old == 0 and move.count == 0:
        if eu.size:
            raise UnknownEndpoint("edges on an empty move")
        return eu, ev
    code, idx = _kernels.batch_move_check(eu, ev, old, move.count)
    if code:
        if code == 5:
            raise ResultDisconnected(f"vertex block near {idx} not attached")
        raise _MOVE_ERRORS[code](f"edge ({int(eu[idx])}, {int(ev[idx])}) at position {idx}")
    return eu, ev


class Game:
    """One adversarial burning game; strictly sequential, replayable.

    The turn can be driven whole (`play_turn`) or in sub-steps
    (`begin_turn` / `apply_builder_move` / `run_spread` / `ignite`),
    which is how the HTTP service suspends a turn at a human decision.
    """

    def __init__(self, schedule, builder, arsonist, seed: int = 0):
        self.graph = GrowingGraph()
        self.burn = BurnState()
        self.schedule = schedule
        self.builder = builder
        self.arsonist = arsonist
        self.seed = seed
        self.turn = 0  # completed turns
        self.phase = "idle"  # idle -> awaiting-move -> moved -> spread -> idle
        self.spread_examined = 0  # adjacency examinations, for the O(V+E) assertion
        self._required = 0
        self._added = 0
        self._pending = np.empty(0, np.int32)
        self._trace_added = GrowableArray(np.int64)
        self._trace_vertices = GrowableArray(np.int64)
        self._trace_burning = GrowableArray(np.int64)
        self._trace_source = GrowableArray(np.int64, fill=-1)
        builder.setup(self)
        arsonist.setup(self)

    # -- sub-steps ------------------------------------------------------------

    @property
    def current_turn(self) -> int:
        """Turn number in progress (or next to start)."""
        return self.turn + 1

    def begin_turn(self) -> int:
        assert self.phase == "idle", self.phase
        self._required = self.schedule.next_count(self.current_turn, self.graph.vertex_count)
        self.phase = "awaiting-move"
        return self._required

    def apply_builder_move(self, move: BuilderMove):
        assert self.phase == "awaiting-move", self.phase
        old = self.graph.vertex_count
        if move.count == 0 and self._required == 0 and old and not _edges_present(move.edges):
            # fast path for f(n) = 0 turns
            self._added = 0
            self._pending = np.empty(0, np.int32)
            self.phase = "moved"
            return
        eu, ev = validate_builder_move(self.graph, move, self._required)
        self.graph.add_generation(self.current_turn, move.count, (eu, ev), _validated=True)
        self.burn.burned.extend_fill(move.count)
        self.burn.burn_turn.extend_fill(move.count)
        if eu.size:
            burned = self.burn.burned.data
            bu = burned[eu]
            bv = burned[ev]
            self._pending = np.concatenate(
                [ev[bu & ~bv], eu[bv & ~bu]]
            ).astype(np.int32)
        else:
            self._pending = np.empty(0, np.int32)
        self._added = move.count
        self.arsonist.observe_growth(self, old, move.count, eu, ev)
        self.phase = "moved"

    def run_spread(self):
        assert self.phase == "moved", self.phase
        if self.burn.frontier.size or self._pending.size:
            newly, examined = _kernels.spread_step(
                self.graph._head.data,
                self.graph._nxt.data,
                self.graph._eto.data,
                self.burn.burned.data,
                self.burn.burn_turn.data,
                self.burn.frontier,
                self._pending,
                self.current_turn,
            )
            self.spread_examined += int(examined)
            self.burn.count += newly.size
            self.burn.frontier = newly
            self._pending = np.empty(0, np.int32)
        else:
            self.burn.frontier = np.empty(0, np.int32)
        self.arsonist.observe_spread(self, self.burn.frontier)
        self.phase = "spread"

    def all_burned(self) -> bool:
        return self.burn.count == self.graph.vertex_count

    def ignite(self, source: int | None) -> TurnRecord:
        assert self.phase == "spread", self.phase
        n = self.current_turn
        if source is None:
            if not self.all_burned():
                raise StrategyPassedWithUnburnedVertices(
                    f"turn {n}: PASS with {self.graph.vertex_count - self.burn.count} unburned"
                )
            self.burn.sources.append(-1)
        else:
            source = int(source)
            if not 0 <= source < self.graph.vertex_count:
                raise StrategyReturnedUnknownVertex(f"turn {n}: vertex {source}")
            if self.burn.is_burned(source):
                raise StrategyReturnedBurnedVertex(f"turn {n}: vertex {source}")
            self.burn.burned.data[source] = True
            self.burn.burn_turn.data[source] = n
            self.burn.count += 1
            self.burn.frontier = np.append(self.burn.frontier, np.int32(source))
            self.burn.sources.append(source)
            self.arsonist.observe_ignition(self, source)
        self._trace_added.append(self._added)
        self._trace_vertices.append(self.graph.vertex_count)
        self._trace_burning.append(self.burn.count)
        self._trace_source.append(-1 if source is None else source)
        self.turn = n
        self.phase = "idle"
        return TurnRecord(n, self._added, self.graph.vertex_count, self.burn.count, source)

    # -- whole turns ------------------------------------------------------------

    def play_turn(self) -> TurnRecord:
        required = self.begin_turn()
        move = self.builder.propose(self, required)
        self.apply_builder_move(move)
        self.run_spread()
        if self.all_burned():
            return self.ignite(PASS)
        return self.ignite(self.arsonist.choose(self))

    def run(self, turns: int) -> DensitySeries:
        if turns < 1:
            raise ValueError("turns must be >= 1")
        for _ in range(turns):
            self.play_turn()
        return self.series()

    # -- trace access -------------------------------------------------------------

    def series(self) -> DensitySeries:
        return DensitySeries(
            np.arange(1, self.turn + 1),
            self._trace_vertices.view().copy(),
            self._trace_burning.view().copy(),
        )

    def records(self):
        added = self._trace_added.view()
        vert = self._trace_vertices.view()
        burn = self._trace_burning.view()
        src = self._trace_source.view()
        for i in range(self.turn):
            s = int(src[i])
            yield TurnRecord(i + 1, int(added[i]), int(vert[i]), int(burn[i]), None if s < 0 else s)


def _edges_present(edges) -> bool:
    if isinstance(edges, tuple) and len(edges) == 2 and isinstance(edges[0], np.ndarray):
        return edges[0].size > 0
    return len(edges) > 0


# -- trace export ----------------------------------------------------------------

TRACE_HEADER = "n,added,vertices,burning,density,source"
SUBSAMPLE_THRESHOLD = 100_000


def _trace_rows(game: Game, subsample: bool | None):
    added = game._trace_added.view()
    vert = game._trace_vertices.view()
    burn = game._trace_burning.view()
    src = game._trace_source.view()
    total = game.turn
    if subsample is None:
        subsample = total > SUBSAMPLE_THRESHOLD
    last = 0
    for i in range(total):
        n = i + 1
        if subsample and n > 1000 and n - last < math.ceil(n / 1000) and n != total:
            continue
        last = n
        yield n, int(added[i]), int(vert[i]), int(burn[i]), int(src[i])


def write_trace_csv(game: Game, path, subsample: bool | None = None):
    """CSV trace; runs past 10^5 turns are geometrically subsampled."""
    with open(path, "w") as fh:
        fh.write(TRACE_HEADER + "\n")
        for n, added, v, b, s in _trace_rows(game, subsample):
            density = b / v if v else 0.0
            source = "PASS" if s < 0 else str(s)
            fh.write(f"{n},{added},{v},{b},{density:.10g},{source}\n")


def write_trace_jsonl(game: Game, path, subsample: bool | None = None):
    with open(path, "w") as fh:
        for n, added, v, b, s in _trace_rows(game, subsample):
            fh.write(
                json.dumps(
                    {
                        "n": n,
                        "added": added,
                        "vertices": v,
                        "burning": b,
                        "density": float(f"{(b / v if v else 0.0):.10g}"),
                        "source": None if s < 0 else s,
                    },
                    separators=(",", ":"),
                )
                + "\n"
            )

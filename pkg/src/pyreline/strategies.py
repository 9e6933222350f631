"""Pluggable Builder and Arsonist strategies.

Builders: `path` (append to one end), `star` (attach everything to a
hub), `rrt` (uniform random recursive tree), `human` (service only).
Arsonists: `phase` (snapshot the graph at phase boundaries and burn it
within the ceil(sqrt(2n)) budget), `greedy` (farthest unburned vertex),
`random`, `human`.

The greedy arsonist keeps exact distances-to-fire incrementally: one
synchronous spread shrinks every unburned vertex's distance by exactly
1 (handled by a global offset), ignitions and new edges only ever
decrease distances (handled by a truncated relaxation), so an argmax
over a lazy max-heap of packed (distance, id) keys stays exact without
per-turn BFS.
"""

from __future__ import annotations

import logging

import numpy as np

from . import _kernels
from ._kernels import INF_DIST
from ._util import GrowableArray
from .burning import (
    exact_burning_number,
    greedy_schedule,
    spanning_tree_schedule,
    sqrt_2n_budget,
)
from .engine import BuilderMove
from .errors import BadStrategy, HumanMoveRequired, StrategyError

log = logging.getLogger(__name__)


# -- builders ---------------------------------------------------------------


class BuilderStrategy:
    name = "abstract"

    def setup(self, game):
        pass

    def propose(self, game, count: int) -> BuilderMove:
        raise NotImplementedError


class PathBuilder(BuilderStrategy):
    """Grow one long path by always appending to the same end."""

    name = "path"

    def __init__(self):
        self._endpoint = None

    def propose(self, game, count):
        if count == 0:
            return BuilderMove.empty()
        base = game.graph.vertex_count
        ids = np.arange(base, base + count, dtype=np.int32)
        if self._endpoint is None:
            eu = ids[:-1]
            ev = ids[1:]
        else:
            eu = np.concatenate([[np.int32(self._endpoint)], ids[:-1]]).astype(np.int32)
            ev = ids
        self._endpoint = int(ids[-1])
        return BuilderMove(count, (eu, ev))


class StarBuilder(BuilderStrategy):
    """Attach every new vertex to vertex 0 (created on the first growth turn)."""

    name = "star"

    def propose(self, game, count):
        if count == 0:
            return BuilderMove.empty()
        base = game.graph.vertex_count
        ids = np.arange(base, base + count, dtype=np.int32)
        if base == 0:
            spokes = ids[1:]
        else:
            spokes = ids
        eu = np.zeros(spokes.size, np.int32)
        return BuilderMove(count, (eu, spokes))


class RandomRecursiveBuilder(BuilderStrategy):
    """Each new vertex picks a uniformly random existing parent.

    Vertices added earlier in the same turn are eligible parents; the
    very first vertex is the root.
    """

    name = "rrt"

    def __init__(self, rng):
        self.rng = rng

    def propose(self, game, count):
        if count == 0:
            return BuilderMove.empty()
        base = game.graph.vertex_count
        ids = np.arange(base, base + count, dtype=np.int64)
        pool = base + np.arange(count, dtype=np.int64)  # choices for vertex i
        draws = self.rng.random(count)
        parents = np.floor(draws * pool).astype(np.int64)
        has_parent = pool > 0
        return BuilderMove(
            count,
            (
                parents[has_parent].astype(np.int32),
                ids[has_parent].astype(np.int32),
            ),
        )


class HumanBuilder(BuilderStrategy):
    name = "human"

    def propose(self, game, count):
        raise HumanMoveRequired("builder move must come from the human player")


# -- arsonists ----------------------------------------------------------------


class ArsonistStrategy:
    name = "abstract"

    def setup(self, game):
        pass

    def choose(self, game) -> int | None:
        raise NotImplementedError

    # engine notifications; only stateful strategies care
    def observe_growth(self, game, old_count, count, eu, ev):
        pass

    def observe_spread(self, game, newly):
        pass

    def observe_ignition(self, game, vertex):
        pass


class RandomArsonist(ArsonistStrategy):
    """Uniform over unburned vertices."""

    name = "random"

    def __init__(self, rng):
        self.rng = rng

    def choose(self, game):
        total = game.graph.vertex_count
        unburned = total - game.burn.count
        if unburned == 0:
            return None
        burned = game.burn.burned.data
        if unburned * 4096 >= total:
            while True:
                v = int(self.rng.random() * total)
                if not burned[v]:
                    return v
        pool = np.flatnonzero(~burned[:total])
        return int(pool[self.rng.integers(pool.size)])


class GreedyArsonist(ArsonistStrategy):
    """Ignites an unburned vertex at maximum distance from the fire.

    Ties break to the lowest id. Before anything burns, every distance
    is infinite and the tie rule picks the lowest unburned id.
    """

    name = "greedy"

    def __init__(self):
        self.sigma = 0  # completed spreads; true dist = D[v] - sigma
        self.D = GrowableArray(np.int32, fill=INF_DIST)
        self._stamp = GrowableArray(np.int32, fill=0)
        self._inq = GrowableArray(np.uint8, fill=0)
        self._stamp_id = 0
        self._heap_buf = np.empty(1024, np.int64)
        self._heap_size = 0

    def setup(self, game):
        if game.graph.vertex_count:
            raise BadStrategy("greedy arsonist must be attached to a fresh game")

    # -- maintenance ------------------------------------------------------------

    def _push(self, vertices, dists):
        if vertices.size == 0:
            return
        keys = (dists.astype(np.int64) << np.int64(32)) + (
            np.int64((1 << 32) - 1) - vertices.astype(np.int64)
        )
        need = self._heap_size + keys.size
        if self._heap_buf.size < need:
            cap = max(need, self._heap_buf.size * 2)
            grown = np.empty(cap, np.int64)
            grown[: self._heap_size] = self._heap_buf[: self._heap_size]
            self._heap_buf = grown
        self._heap_size = int(
            _kernels.heap_push_bulk(self._heap_buf, self._heap_size, keys)
        )

    def _maybe_compact(self, game):
        limit = max(4096, game.graph.vertex_count + (game.graph.vertex_count >> 2))
        if self._heap_size <= limit:
            return
        keys = self._heap_buf[: self._heap_size]
        d = keys >> np.int64(32)
        v = (np.int64((1 << 32) - 1) - (keys & np.int64((1 << 32) - 1))).astype(np.int64)
        burned = game.burn.burned.data
        live = (~burned[v]) & (self.D.data[v] == d)
        kept = keys[live].copy()
        self._heap_size = int(_kernels.heap_push_bulk(self._heap_buf, 0, kept))

    def _relax(self, game, seed_v, seed_d):
        if seed_v.size == 0:
            return
        self._stamp_id += 1
        imp_v, imp_d = _kernels.relax_unit(
            game.graph._head.data,
            game.graph._nxt.data,
            game.graph._eto.data,
            game.burn.burned.data,
            self.D.data,
            seed_v.astype(np.int32),
            seed_d.astype(np.int32),
            self._stamp.data,
            self._stamp_id,
            self._inq.data,
        )
        self._push(imp_v, imp_d)
        self._maybe_compact(game)

    # -- notifications ------------------------------------------------------------

    def observe_growth(self, game, old_count, count, eu, ev):
        if count == 0:
            return
        self.D.extend_fill(count)
        self._stamp.extend_fill(count)
        self._inq.extend_fill(count)
        new_ids = np.arange(old_count, old_count + count, dtype=np.int64)
        self._push(new_ids, np.full(count, INF_DIST, np.int64))
        if eu.size == 0:
            return
        burned = game.burn.burned.data
        D = self.D.data
        eu64 = eu.astype(np.int64)
        ev64 = ev.astype(np.int64)
        seeds_v = []
        seeds_d = []
        for old_side, new_side in ((eu64, ev64), (ev64, eu64)):
            is_old = old_side < old_count
            if not is_old.any():
                continue
            o = old_side[is_old]
            w = new_side[is_old]
            ob = burned[o]
            if ob.any():
                seeds_v.append(w[ob])
                seeds_d.append(np.full(int(ob.sum()), self.sigma + 1, np.int64))
            finite = (~ob) & (D[o] < INF_DIST)
            if finite.any():
                seeds_v.append(w[finite])
                seeds_d.append(D[o[finite]].astype(np.int64) + 1)
        if seeds_v:
            self._relax(game, np.concatenate(seeds_v), np.concatenate(seeds_d))

    def observe_spread(self, game, newly):
        self.sigma += 1

    def observe_ignition(self, game, vertex):
        self._relax(
            game,
            np.array([vertex], np.int64),
            np.array([self.sigma], np.int64),
        )

    # -- the pick -------------------------------------------------------------------

    def choose(self, game):
        if game.all_burned():
            return None
        v, self._heap_size = _kernels.heap_pop_best(
            self._heap_buf, self._heap_size, self.D.data, game.burn.burned.data
        )
        if v < 0:
            raise StrategyError("farthest-point heap ran dry with unburned vertices left")
        return int(v)


class PhaseArsonist(ArsonistStrategy):
    """Burn the phase-start snapshot completely, then start the next phase.

    After a warmup of `warmup` turns spent on lowest-id unburned
    vertices, each phase k snapshots the graph as of turn N_k, plans a
    full burn of that snapshot, and plays the planned sources for
    rounds(plan) turns; N_{k+1} = N_k + rounds. A planned source that is
    already burning is substituted by the lowest-id unburned vertex
    (the snapshot is an id-prefix, so snapshot-first and overall-lowest
    coincide whenever the snapshot has any unburned vertex).

    Planner tiers by snapshot size: exact solver up to `exact_cap`,
    max-coverage greedy under the ceil(sqrt(2n)) budget up to
    `greedy_cap`, spanning-tree cover beyond that.
    """

    name = "phase"

    def __init__(self, warmup: int = 10, exact_cap: int = 64, greedy_cap: int = 2048):
        if warmup < 1:
            raise BadStrategy("phase arsonist needs warmup >= 1")
        self.warmup = warmup
        self.exact_cap = exact_cap
        self.greedy_cap = greedy_cap
        self.boundaries: list[dict] = []
        self._plan: list[int] | None = None
        self._rounds = 0
        self._cursor = 0
        self._low = 0  # lowest possibly-unburned id; monotone over the game

    def _lowest_unburned(self, game):
        total = game.graph.vertex_count
        low = int(_kernels.next_unburned(game.burn.burned.data, self._low, total))
        self._low = low
        return low if low < total else None

    def _begin_phase(self, game, boundary_turn):
        snap = game.graph.snapshot(boundary_turn)
        m = snap.vertex_count
        planner = "empty"
        violation = False
        if m == 0:
            plan = []
            rounds = 1
        elif m <= self.exact_cap:
            b, sched = exact_burning_number(snap, cap=self.exact_cap)
            plan, rounds, planner = sched.sources, b, "exact"
        elif m <= self.greedy_cap:
            budget = sqrt_2n_budget(m)
            sched = greedy_schedule(snap, budget)
            while sched is None:
                violation = True
                budget += 1
                log.warning(
                    "greedy cover infeasible at budget %d for %d vertices", budget - 1, m
                )
                sched = greedy_schedule(snap, budget)
            plan, rounds, planner = sched.sources, sched.rounds, "greedy"
        else:
            sched = spanning_tree_schedule(snap)
            plan, rounds, planner = sched.sources, sched.rounds, "tree"
        self._plan = plan
        self._rounds = rounds
        self._cursor = 0
        self.boundaries.append(
            {
                "turn": boundary_turn,
                "vertices": m,
                "rounds": rounds,
                "planner": planner,
                "budget_violation": violation,
            }
        )

    def choose(self, game):
        n = game.current_turn
        if n <= self.warmup:
            return self._lowest_unburned(game)
        if self._plan is None or self._cursor >= self._rounds:
            self._begin_phase(game, n - 1)
        i = self._cursor
        self._cursor += 1
        src = self._plan[i] if i < len(self._plan) else None
        if src is not None and not game.burn.is_burned(src):
            return src
        return self._lowest_unburned(game)


class HumanArsonist(ArsonistStrategy):
    name = "human"

    def choose(self, game):
        raise HumanMoveRequired("fire source must come from the human player")


# -- registry -------------------------------------------------------------------

BUILDERS = {
    "path": PathBuilder,
    "star": StarBuilder,
    "rrt": RandomRecursiveBuilder,
    "human": HumanBuilder,
}

ARSONISTS = {
    "phase": PhaseArsonist,
    "greedy": GreedyArsonist,
    "random": RandomArsonist,
    "human": HumanArsonist,
}


def _rng_for(seed_seq):
    return np.random.Generator(np.random.PCG64(seed_seq))


def make_builder(name: str, seed: int = 0, **params) -> BuilderStrategy:
    try:
        cls = BUILDERS[name]
    except KeyError:
        raise BadStrategy(f"unknown builder '{name}'") from None
    if cls is RandomRecursiveBuilder:
        return cls(_rng_for(np.random.SeedSequence([seed, 0xB])), **params)
    return cls(**params)


def make_arsonist(name: str, seed: int = 0, **params) -> ArsonistStrategy:
    try:
        cls = ARSONISTS[name]
    except KeyError:
        raise BadStrategy(f"unknown arsonist '{name}'") from None
    if cls is RandomArsonist:
        return cls(_rng_for(np.random.SeedSequence([seed, 0xA])), **params)
    return cls(**params)

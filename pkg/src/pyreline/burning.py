"""Burning-number solvers via the radius-covering characterization.

A graph burns in k rounds iff there are distinct sources x_1..x_k whose
balls B(x_i, k-i) cover every vertex; the process view (spread each
round, then ignite the next source) reaches exactly the same sets, and
`simulate_schedule` cross-checks that equivalence. Three planners:

* `exact_burning_number`: iterative-deepening DFS over source tuples
  with max-coverage ordering, sound coverage-budget pruning (per-radius
  max ball size) and zero-gain elimination. Bitset balls, so capped at
  64 vertices by default.
* `greedy_schedule`: max-coverage greedy under a fixed round budget.
* `spanning_tree_schedule`: linear-time cover on a BFS spanning tree by
  pruning the deepest uncovered subtree; each ball with radius r covers
  at least r+1 new vertices, so ceil(sqrt(2n)) rounds always suffice.
  This is the planner that scales to multi-million-vertex snapshots.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._util import ceil_sqrt
from .errors import EmptyGraph, GraphDisconnected, GraphTooLarge

log = logging.getLogger(__name__)

EXACT_CAP_DEFAULT = 64


@dataclass
class BurnSchedule:
    """Ordered fire sources with a round budget.

    Source i (0-based) is ignited in round i+1 and its fire reaches
    radius rounds-1-i by the end. `sources` may be shorter than
    `rounds` when the graph has fewer vertices than rounds.
    """

    sources: list[int] = field(default_factory=list)
    rounds: int = 0


def sqrt_2n_budget(n: int) -> int:
    """Standing round budget ceil(sqrt(2n)) for a full burn."""
    if n < 1:
        raise EmptyGraph("budget needs n >= 1")
    return ceil_sqrt(2 * n)


def _graph_shape(graph):
    n = graph.vertex_count
    eu, ev = graph.edge_arrays()
    return n, eu, ev


def _adjacency_lists(n, eu, ev):
    adj = [[] for _ in range(n)]
    for u, v in zip(eu.tolist(), ev.tolist()):
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _check_connected(n, adj):
    if n == 0:
        raise EmptyGraph("graph has no vertices")
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    if count != n:
        raise GraphDisconnected(f"only {count} of {n} vertices reachable")


def _pad_sources(sources, rounds, n):
    """Fill the schedule with unused lowest-id vertices while any exist."""
    used = set(sources)
    pad = 0
    while len(sources) < rounds and len(sources) < n:
        while pad in used:
            pad += 1
        sources.append(pad)
        used.add(pad)
    return sources


# -- exact solver --------------------------------------------------------------

def _ball_tables(n, adj, max_radius):
    """tables[r][v] = bitmask of vertices within distance r of v."""
    tables = [[1 << v for v in range(n)]]
    for _ in range(max_radius):
        prev = tables[-1]
        nxt = []
        for v in range(n):
            m = prev[v]
            for w in adj[v]:
                m |= prev[w]
            nxt.append(m)
        tables.append(nxt)
    return tables


def exact_burning_number(graph, cap: int = EXACT_CAP_DEFAULT):
    """Minimum rounds to burn the whole graph, plus a witness schedule."""
    n, eu, ev = _graph_shape(graph)
    if n == 0:
        raise EmptyGraph("cannot burn the empty graph")
    if n > cap:
        raise GraphTooLarge(f"{n} vertices exceeds the exact-solver cap {cap}")
    adj = _adjacency_lists(n, eu, ev)
    _check_connected(n, adj)

    full = (1 << n) - 1
    tables = _ball_tables(n, adj, 0)
    max_pop = [max(m.bit_count() for m in tables[0])]

    def ensure_radius(r):
        while len(tables) <= r:
            prev = tables[-1]
            nxt = []
            for v in range(n):
                m = prev[v]
                for w in adj[v]:
                    m |= prev[w]
                nxt.append(m)
            tables.append(nxt)
            max_pop.append(max(m.bit_count() for m in nxt))

    # smallest k whose total coverage budget can reach n at all
    k = 1
    while True:
        ensure_radius(k - 1)
        if sum(max_pop[:k]) >= n:
            break
        k += 1

    while True:
        ensure_radius(k - 1)
        # suffix[i] = max coverage of positions i..k-1 (radii k-1-i..0)
        suffix = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix[i] = suffix[i + 1] + max_pop[k - 1 - i]
        order = list(range(n))

        def dfs(i, covered, used, sources):
            if covered == full:
                return sources
            if i == k:
                return None
            uncovered = full & ~covered
            if uncovered.bit_count() > suffix[i]:
                return None
            balls = tables[k - 1 - i]
            ranked = sorted(
                (v for v in order if not (used >> v) & 1),
                key=lambda v: (-(balls[v] & uncovered).bit_count(), v),
            )
            for v in ranked:
                gain = (balls[v] & uncovered).bit_count()
                if gain == 0:
                    break  # sorted: all remaining are zero-gain
                res = dfs(i + 1, covered | balls[v], used | (1 << v), sources + [v])
                if res is not None:
                    return res
            return None

        found = dfs(0, 0, 0, [])
        if found is not None:
            return k, BurnSchedule(_pad_sources(found, k, n), k)
        k += 1


# -- path schedule --------------------------------------------------------------

def path_schedule(n: int) -> BurnSchedule:
    """Optimal schedule for the path 0-1-..-(n-1): ceil(sqrt(n)) rounds.

    Ball i (radius k-i) covers a contiguous interval of length
    min(2(k-i)+1, remaining); the interval lengths sum to k**2 >= n.
    """
    if n < 1:
        raise EmptyGraph("path needs n >= 1")
    k = ceil_sqrt(n)
    sources = []
    pos = 0
    for i in range(1, k + 1):
        if pos >= n:
            break
        r = k - i
        length = min(2 * r + 1, n - pos)
        sources.append(min(pos + r, n - 1))
        pos += length
    return BurnSchedule(_pad_sources(sources, k, n), k)


# -- greedy max-coverage under a budget ------------------------------------------

def _reach_stack(n, eu, ev, max_radius):
    """Bitset reachability rows per radius 0..max_radius (numpy uint64)."""
    words = (n + 63) // 64
    reach = np.zeros((n, words), np.uint64)
    ids = np.arange(n)
    reach[ids, ids >> 6] = np.uint64(1) << np.uint64(ids & 63)
    stack = [reach]
    if eu.size:
        indptr, indices = _kernels.build_csr(
            eu.astype(np.int32), ev.astype(np.int32), n
        )
        indptr = np.asarray(indptr)
        indices = np.asarray(indices)
        starts = indptr[:-1]
        has_nb = indptr[1:] > starts
        for _ in range(max_radius):
            prev = stack[-1]
            gathered = prev[indices]
            grouped = np.bitwise_or.reduceat(gathered, starts, axis=0)
            nxt = prev.copy()
            nxt[has_nb] |= grouped[has_nb]
            stack.append(nxt)
    else:
        for _ in range(max_radius):
            stack.append(stack[-1])
    return stack


def greedy_schedule(graph, budget: int):
    """Max-coverage greedy over balls of radii budget-1 .. 0.

    Ties go to the lowest id. Returns None when the picks fail to cover
    the graph (infeasible at this budget).
    """
    n, eu, ev = _graph_shape(graph)
    adj = _adjacency_lists(n, eu, ev)
    _check_connected(n, adj)
    if budget < 1:
        return None
    words = (n + 63) // 64
    stack = _reach_stack(n, eu, ev, budget - 1)
    uncovered = np.full(words, ~np.uint64(0))
    if n & 63:
        uncovered[-1] = (np.uint64(1) << np.uint64(n & 63)) - np.uint64(1)
    chosen = []
    chosen_mask = np.zeros(n, bool)
    for i in range(budget):
        if len(chosen) == n:
            break
        rows = stack[budget - 1 - i]
        gains = np.bitwise_count(rows & uncovered[None, :]).sum(axis=1).astype(np.int64)
        gains[chosen_mask] = -1
        v = int(np.argmax(gains))
        chosen.append(v)
        chosen_mask[v] = True
        uncovered &= ~rows[v]
    if uncovered.any():
        return None
    return BurnSchedule(chosen, budget)


# -- spanning-tree planner -------------------------------------------------------

def spanning_tree_schedule(graph, budget: int | None = None) -> BurnSchedule:
    """Cover via subtree pruning on a BFS spanning tree; scales linearly.

    Tree distances dominate graph distances, so the cover is valid for
    the host graph. Infeasibility at ceil(sqrt(2n)) is impossible by
    the subtree-size argument; the retry loop is a guard that logs if
    it ever fires.
    """
    n, eu, ev = _graph_shape(graph)
    if n == 0:
        raise EmptyGraph("cannot plan on the empty graph")
    if budget is None:
        budget = sqrt_2n_budget(n)
    indptr, indices = _kernels.build_csr(eu.astype(np.int32), ev.astype(np.int32), n)
    parent, depth, _, reached = _kernels.bfs_tree_csr(indptr, indices, n, 0)
    if reached != n:
        raise GraphDisconnected(f"only {reached} of {n} vertices reachable")
    desc_order = np.argsort(-depth.astype(np.int64), kind="stable").astype(np.int32)
    while True:
        sources, used, feasible = _kernels.tree_cover_plan(
            indptr, indices, parent, depth, desc_order, budget
        )
        if feasible:
            break
        log.warning("tree cover infeasible at budget %d; incrementing", budget)
        budget += 1
    picked = [int(s) for s in sources[:used]]
    return BurnSchedule(_pad_sources(picked, budget, n), budget)


# -- verification ----------------------------------------------------------------

def verify_schedule(graph, schedule: BurnSchedule) -> bool:
    """Independent feasibility check by expanding every ball."""
    n, eu, ev = _graph_shape(graph)
    adj = _adjacency_lists(n, eu, ev)
    if len(set(schedule.sources)) != len(schedule.sources):
        return False
    covered = [False] * n
    for i, src in enumerate(schedule.sources):
        radius = schedule.rounds - 1 - i
        if radius < 0 or not 0 <= src < n:
            return False
        dist = {src: 0}
        queue = deque([src])
        covered[src] = True
        while queue:
            u = queue.popleft()
            if dist[u] == radius:
                continue
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    covered[w] = True
                    queue.append(w)
    return all(covered)


def simulate_schedule(graph, schedule: BurnSchedule) -> int:
    """Burn count after running the schedule as an actual process."""
    n, eu, ev = _graph_shape(graph)
    indptr, indices = _kernels.build_csr(eu.astype(np.int32), ev.astype(np.int32), n)
    srcs = np.full(schedule.rounds, -1, np.int32)
    for i, s in enumerate(schedule.sources[: schedule.rounds]):
        srcs[i] = s
    return int(_kernels.simulate_schedule_csr(indptr, indices, n, srcs, schedule.rounds))

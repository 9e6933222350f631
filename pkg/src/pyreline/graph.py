"""Append-only growing graph with per-turn generation tags.

Vertices get dense ids in arrival order, so the graph as it stood after
turn m is exactly the prefix of the current arrays: the first
`vertex_count at m` vertices and the first `edge_count at m` edges.
Adjacency lives in flat numpy linked lists so a 10^7-vertex game stays
well under the memory budget.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._util import GrowableArray
from .errors import (
    DuplicateEdge,
    EdgeBetweenOldVertices,
    GraphError,
    SelfLoop,
    UnknownEndpoint,
    UnknownVertex,
)

_BATCH_ERRORS = {
    1: SelfLoop,
    2: UnknownEndpoint,
    3: EdgeBetweenOldVertices,
    4: DuplicateEdge,
}


def normalize_edges(edges):
    """Coerce an edge collection to a pair of int32 arrays."""
    if isinstance(edges, tuple) and len(edges) == 2 and isinstance(edges[0], np.ndarray):
        eu, ev = edges
        return np.ascontiguousarray(eu, dtype=np.int32), np.ascontiguousarray(ev, dtype=np.int32)
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return np.empty(0, np.int32), np.empty(0, np.int32)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphError(f"edge list must be m x 2, got shape {arr.shape}")
    return arr[:, 0].astype(np.int32), arr[:, 1].astype(np.int32)


@dataclass(frozen=True)
class GraphSnapshot:
    """Logical view of the graph prefix as it stood after `turn`."""

    graph: "GrowingGraph"
    turn: int
    vertex_count: int
    edge_count: int

    def edge_arrays(self):
        return (
            self.graph._eu.data[: self.edge_count],
            self.graph._ev.data[: self.edge_count],
        )

    def csr(self):
        eu, ev = self.edge_arrays()
        return _kernels.build_csr(eu, ev, self.vertex_count)


class GrowingGraph:
    """Undirected graph that only ever gains vertices and edges."""

    def __init__(self):
        self._eu = GrowableArray(np.int32)
        self._ev = GrowableArray(np.int32)
        self._head = GrowableArray(np.int32, fill=-1)
        self._nxt = GrowableArray(np.int32, fill=-1)
        self._eto = GrowableArray(np.int32, fill=-1)
        # one row per recorded turn: (turn, vertex prefix, edge prefix)
        self._turn_ids: list[int] = []
        self._turn_vertices: list[int] = []
        self._turn_edges: list[int] = []

    # -- basic queries ------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self._head.n

    @property
    def edge_count(self) -> int:
        return self._eu.n

    @property
    def last_turn(self) -> int:
        return self._turn_ids[-1] if self._turn_ids else 0

    def edge_arrays(self):
        return self._eu.view(), self._ev.view()

    def neighbors(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        out = []
        e = self._head.data[v]
        while e != -1:
            out.append(self._eto.data[e])
            e = self._nxt.data[e]
        return np.array(out, dtype=np.int32)

    def degree(self, v: int) -> int:
        return self.neighbors(v).size

    def generation_of(self, v: int) -> int:
        """Turn on which vertex v arrived."""
        self._check_vertex(v)
        idx = int(np.searchsorted(np.asarray(self._turn_vertices), v, side="right"))
        return self._turn_ids[idx]

    def edge_generation_of(self, edge_id: int) -> int:
        if not 0 <= edge_id < self.edge_count:
            raise GraphError(f"no edge {edge_id}")
        idx = int(np.searchsorted(np.asarray(self._turn_edges), edge_id, side="right"))
        return self._turn_ids[idx]

    def _check_vertex(self, v):
        if not 0 <= v < self.vertex_count:
            raise UnknownVertex(f"vertex {v} does not exist")

    # -- growth -------------------------------------------------------------

    def add_generation(self, turn: int, count: int, edges, _validated=False):
        """Append `count` vertices tagged `turn` plus edges incident to them.

        Every edge must touch at least one new vertex. Returns the new
        ids in order.
        """
        if self._turn_ids and turn <= self._turn_ids[-1]:
            raise GraphError(f"turn {turn} is not after {self._turn_ids[-1]}")
        if count < 0:
            raise GraphError("count must be nonnegative")
        eu, ev = normalize_edges(edges)
        old = self.vertex_count
        if not _validated:
            code, idx = _kernels.batch_move_check(eu, ev, old, count)
            if code in _BATCH_ERRORS:
                raise _BATCH_ERRORS[code](
                    f"edge ({int(eu[idx])}, {int(ev[idx])}) at position {idx}"
                )
            # code 5 (disconnected) is the engine's concern, not the graph's
        self._head.extend_fill(count)
        half = self._nxt.n
        self._nxt.extend_fill(2 * eu.size)
        self._eto.extend_fill(2 * eu.size)
        if eu.size:
            _kernels.append_adjacency(
                self._head.data, self._nxt.data, self._eto.data, eu, ev, half
            )
        self._eu.extend(eu)
        self._ev.extend(ev)
        self._turn_ids.append(turn)
        self._turn_vertices.append(self.vertex_count)
        self._turn_edges.append(self.edge_count)
        return list(range(old, old + count))

    # -- structure ----------------------------------------------------------

    def is_connected(self) -> bool:
        n = self.vertex_count
        if n == 0:
            return True
        reached = _kernels.count_reachable(
            self._head.data, self._nxt.data, self._eto.data, n, 0
        )
        return reached == n

    def bfs_distances(self, source: int, cap: int | None = None) -> dict[int, int]:
        """Exact hop distances from `source`; unreachable vertices absent."""
        self._check_vertex(source)
        dist = _kernels.bfs_distances_ll(
            self._head.data,
            self._nxt.data,
            self._eto.data,
            self.vertex_count,
            source,
            -1 if cap is None else cap,
        )
        reached = np.flatnonzero(dist >= 0)
        return {int(v): int(dist[v]) for v in reached}

    def snapshot(self, turn: int) -> GraphSnapshot:
        """Prefix view of the graph as it stood after `turn`."""
        ids = np.asarray(self._turn_ids)
        idx = int(np.searchsorted(ids, turn, side="right")) - 1
        if idx < 0:
            return GraphSnapshot(self, turn, 0, 0)
        return GraphSnapshot(
            self, turn, self._turn_vertices[idx], self._turn_edges[idx]
        )

    def csr(self):
        eu, ev = self.edge_arrays()
        return _kernels.build_csr(eu, ev, self.vertex_count)

    def turn_slices(self):
        """Per-turn (turn, vertex range, edge range) for replaying."""
        v0 = 0
        e0 = 0
        for t, v1, e1 in zip(self._turn_ids, self._turn_vertices, self._turn_edges):
            yield t, (v0, v1), (e0, e1)
            v0, e0 = v1, e1


# -- edge-list text format ----------------------------------------------------

def write_edgelist(graph, path):
    """`n m` header then one `u v` line per edge (0-based)."""
    eu, ev = graph.edge_arrays()
    with open(path, "w") as fh:
        fh.write(f"{graph.vertex_count} {eu.size}\n")
        for u, v in zip(eu.tolist(), ev.tolist()):
            fh.write(f"{u} {v}\n")


def read_edgelist(path) -> GrowingGraph:
    """Read the text format into a single-generation graph."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise GraphError("edge-list header must be 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = np.empty((m, 2), np.int64)
        for i in range(m):
            parts = fh.readline().split()
            if len(parts) != 2:
                raise GraphError(f"bad edge line {i + 2}")
            edges[i, 0] = int(parts[0])
            edges[i, 1] = int(parts[1])
    g = GrowingGraph()
    g.add_generation(1, n, edges)
    return g

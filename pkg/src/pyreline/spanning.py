"""Nested spanning trees of a legal construction, and burn dominance.

Any construction replayed with the same fire sources burns at least as
many vertices as its nested spanning-tree construction does, turn for
turn (a tree keeps a subset of the edges, so fire spreads no faster).
`dominance_check` replays both and raises if that ever fails, which
would mean an engine bug.
"""

from __future__ import annotations


import numpy as np

from .errors import DominanceViolated, InvalidSource, PrefixDisconnected
from .graph import GrowingGraph


class TreeSequence:
    """Kept-edge subset of a GrowingGraph forming a spanning tree at every prefix."""

    def __init__(self, graph: GrowingGraph, kept: np.ndarray):
        self.graph = graph
        self.kept = kept  # bool per edge id

    def kept_edges_through(self, edge_count: int) -> np.ndarray:
        return np.flatnonzero(self.kept[:edge_count])


def incremental_spanning_tree(graph: GrowingGraph) -> TreeSequence:
    """Choose one attaching edge per vertex, nested across turns.

    Each turn's new vertices are processed in BFS layers from the
    already-spanned set over that turn's edges; a vertex keeps the
    lowest-id edge that joins it to the previous layer. The kept sets
    are nested by construction, so every prefix is a spanning tree of
    the corresponding graph prefix.
    """
    eu, ev = graph.edge_arrays()
    kept = np.zeros(graph.edge_count, bool)
    for _turn, (v0, v1), (e0, e1) in graph.turn_slices():
        if v1 == v0 and e1 == e0:
            continue
        # adjacency over this turn's edges only
        adj: dict[int, list[tuple[int, int]]] = {}
        for eid in range(e0, e1):
            a, b = int(eu[eid]), int(ev[eid])
            adj.setdefault(a, []).append((eid, b))
            adj.setdefault(b, []).append((eid, a))
        if v0 == 0:
            # nothing spanned yet: the lowest new vertex roots the tree
            frontier = {v0}
            unattached = set(range(v0 + 1, v1))
        else:
            frontier = {v for v in adj if v < v0}
            unattached = set(range(v0, v1))
        # BFS layers; each new vertex keeps its lowest-id edge to the layer below
        while unattached and frontier:
            best: dict[int, int] = {}
            for u in frontier:
                for eid, w in adj.get(u, ()):
                    if w in unattached and (w not in best or eid < best[w]):
                        best[w] = eid
            frontier = set()
            for w, eid in best.items():
                kept[eid] = True
                unattached.discard(w)
                frontier.add(w)
        if unattached:
            raise PrefixDisconnected(
                f"vertices {sorted(unattached)[:5]} unattached after their turn"
            )
    return TreeSequence(graph, kept)


def _replay_spread(burned: np.ndarray, eu, ev):
    """One synchronous full-scan spread round; mutates and returns count."""
    if eu.size == 0:
        return 0
    bu = burned[eu]
    bv = burned[ev]
    newly = np.concatenate([ev[bu & ~bv], eu[bv & ~bu]])
    if newly.size:
        burned[newly] = True
    return int(burned.sum())


def dominance_check(graph: GrowingGraph, tree: TreeSequence, sources, turns: int):
    """Replay the same sources on G and its tree; return per-turn (|B_T|, |B_G|).

    Sources is one entry per turn (vertex id or None for no ignition);
    each non-None source must be unburned in G at its turn. A source
    already burning in T is skipped there (cannot happen while
    B_T <= B_G holds, but guarded anyway).
    """
    if len(sources) < turns:
        raise InvalidSource(f"need {turns} sources, got {len(sources)}")
    eu, ev = graph.edge_arrays()
    kept = tree.kept
    slices = list(graph.turn_slices())
    max_turn = slices[-1][0] if slices else 0
    if turns > max_turn:
        raise InvalidSource(f"construction has {max_turn} turns, asked for {turns}")
    burned_g = np.zeros(graph.vertex_count, bool)
    burned_t = np.zeros(graph.vertex_count, bool)
    pairs = []
    si = 0
    vcount = 0
    ecount = 0
    for turn in range(1, turns + 1):
        while si < len(slices) and slices[si][0] <= turn:
            vcount = slices[si][1][1]
            ecount = slices[si][2][1]
            si += 1
        g_eu = eu[:ecount]
        g_ev = ev[:ecount]
        t_mask = kept[:ecount]
        bg = _replay_spread(burned_g[:vcount], g_eu, g_ev)
        bt = _replay_spread(burned_t[:vcount], g_eu[t_mask], g_ev[t_mask])
        src = sources[turn - 1]
        if src is not None:
            src = int(src)
            if not 0 <= src < vcount:
                raise InvalidSource(f"turn {turn}: vertex {src} does not exist yet")
            if burned_g[src]:
                raise InvalidSource(f"turn {turn}: vertex {src} already burning in G")
            burned_g[src] = True
            bg += 1
            if not burned_t[src]:
                burned_t[src] = True
                bt += 1
        if bt > bg:
            raise DominanceViolated(f"turn {turn}: tree burned {bt} > graph {bg}")
        pairs.append((bt, bg))
    return pairs


def random_legal_construction(rng, turns: int, max_new: int = 4, extra_edge_p: float = 0.35):
    """A random legal construction: connected at every prefix, with cycles.

    Each new vertex attaches to a uniformly random prior vertex
    (possibly same-turn); extra incident edges are sprinkled in to make
    the graph strictly denser than a tree.
    """
    g = GrowingGraph()
    for turn in range(1, turns + 1):
        count = int(rng.integers(1, max_new + 1))
        base = g.vertex_count
        edges = set()
        for i in range(count):
            vid = base + i
            pool = base + i  # vertices existing when vid arrives
            if pool == 0:
                continue
            parent = int(rng.integers(pool))
            edges.add((parent, vid))
            while rng.random() < extra_edge_p and pool > 1:
                other = int(rng.integers(pool))
                if other != parent:
                    edges.add((other, vid))
        g.add_generation(turn, count, sorted(edges))
    return g


def random_source_sequence(graph: GrowingGraph, turns: int, rng):
    """Random unburned-in-G source per turn (None when all burned)."""
    eu, ev = graph.edge_arrays()
    slices = list(graph.turn_slices())
    burned = np.zeros(graph.vertex_count, bool)
    sources = []
    si = 0
    vcount = 0
    ecount = 0
    for turn in range(1, turns + 1):
        while si < len(slices) and slices[si][0] <= turn:
            vcount = slices[si][1][1]
            ecount = slices[si][2][1]
            si += 1
        _replay_spread(burned[:vcount], eu[:ecount], ev[:ecount])
        pool = np.flatnonzero(~burned[:vcount])
        if pool.size == 0:
            sources.append(None)
            continue
        src = int(pool[rng.integers(pool.size)])
        burned[src] = True
        sources.append(src)
    return sources

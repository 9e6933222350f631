"""numba kernels for the hot paths: adjacency, spread, BFS, planning.

All graph kernels operate on the flat array storage of GrowingGraph:
per-vertex linked lists (`head`, `nxt`, `eto`) over half-edges, plus
edge endpoint arrays for CSR builds. Everything is int32 indices.
"""

from __future__ import annotations

import numpy as np
from numba import njit

I32 = np.int32
I64 = np.int64

# Stored distances for the farthest-point tracker: true distance is
# D[v] - sigma, so D must stay well below 2**31 for key packing.
INF_DIST = 1 << 30


@njit(cache=True)
def append_adjacency(head, nxt, eto, eu, ev, half_base):
    for i in range(eu.size):
        u = eu[i]
        v = ev[i]
        h = half_base + 2 * i
        eto[h] = v
        nxt[h] = head[u]
        head[u] = h
        eto[h + 1] = u
        nxt[h + 1] = head[v]
        head[v] = h + 1


@njit(cache=True)
def batch_move_check(eu, ev, old_count, count):
    """Validate one turn's batch of edges.

    Returns (code, index): 0 ok, 1 self-loop, 2 unknown endpoint,
    3 edge between old vertices, 4 duplicate edge, 5 result disconnected.
    """
    m = eu.size
    total = old_count + count
    for i in range(m):
        u = eu[i]
        v = ev[i]
        if u < 0 or u >= total or v < 0 or v >= total:
            return 2, i
        if u == v:
            return 1, i
        if u < old_count and v < old_count:
            return 3, i
    if m > 1:
        keys = np.empty(m, I64)
        for i in range(m):
            u = eu[i]
            v = ev[i]
            if u > v:
                u, v = v, u
            keys[i] = I64(u) * I64(total) + I64(v)
        keys.sort()
        for i in range(1, m):
            if keys[i] == keys[i - 1]:
                return 4, i
    if count == 0:
        return 0, -1
    # connectivity of the grown graph, with the (connected) old graph
    # contracted to supernode 0
    if old_count > 0:
        nn = count + 1
    else:
        nn = count
    parent = np.empty(nn, I32)
    for i in range(nn):
        parent[i] = i
    for i in range(m):
        u = eu[i]
        v = ev[i]
        if old_count > 0:
            a = 0 if u < old_count else u - old_count + 1
            b = 0 if v < old_count else v - old_count + 1
        else:
            a = u
            b = v
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[b] = a
    r0 = 0
    while parent[r0] != r0:
        r0 = parent[r0]
    for i in range(nn):
        r = i
        while parent[r] != r:
            r = parent[r]
        if r != r0:
            return 5, i
    return 0, -1


@njit(cache=True)
def spread_step(head, nxt, eto, burned, burn_turn, frontier, pending, turn):
    """One synchronous spread round, incremental from the frontier.

    `pending` holds vertices attached this turn to an already-burning
    vertex that is no longer in the frontier. Returns the newly burned
    vertices and the number of adjacency examinations (for the
    amortized-cost assertion).
    """
    cap = 16
    newly = np.empty(cap, I32)
    cnt = 0
    examined = 0
    for idx in range(frontier.size):
        u = frontier[idx]
        e = head[u]
        while e != -1:
            w = eto[e]
            examined += 1
            if not burned[w]:
                burned[w] = True
                burn_turn[w] = turn
                if cnt == cap:
                    cap *= 2
                    tmp = np.empty(cap, I32)
                    tmp[:cnt] = newly[:cnt]
                    newly = tmp
                newly[cnt] = w
                cnt += 1
            e = nxt[e]
    for idx in range(pending.size):
        w = pending[idx]
        examined += 1
        if not burned[w]:
            burned[w] = True
            burn_turn[w] = turn
            if cnt == cap:
                cap *= 2
                tmp = np.empty(cap, I32)
                tmp[:cnt] = newly[:cnt]
                newly = tmp
            newly[cnt] = w
            cnt += 1
    return newly[:cnt], examined


@njit(cache=True)
def count_reachable(head, nxt, eto, n, src):
    seen = np.zeros(n, np.bool_)
    queue = np.empty(n, I32)
    seen[src] = True
    queue[0] = src
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        e = head[u]
        while e != -1:
            w = eto[e]
            if not seen[w]:
                seen[w] = True
                queue[qt] = w
                qt += 1
            e = nxt[e]
    return qt


@njit(cache=True)
def bfs_distances_ll(head, nxt, eto, n, src, cap):
    """BFS distances over the linked-list adjacency; -1 = unreached.

    cap < 0 means unbounded; otherwise vertices beyond cap stay -1.
    """
    dist = np.full(n, -1, I32)
    queue = np.empty(n, I32)
    dist[src] = 0
    queue[0] = src
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        du = dist[u]
        if cap >= 0 and du >= cap:
            continue
        e = head[u]
        while e != -1:
            w = eto[e]
            if dist[w] < 0:
                dist[w] = du + 1
                queue[qt] = w
                qt += 1
            e = nxt[e]
    return dist


@njit(cache=True)
def build_csr(eu, ev, n):
    deg = np.zeros(n + 1, I64)
    for i in range(eu.size):
        deg[eu[i] + 1] += 1
        deg[ev[i] + 1] += 1
    indptr = np.cumsum(deg)
    indices = np.empty(indptr[n], I32)
    fill = indptr[:n].copy()
    for i in range(eu.size):
        u = eu[i]
        v = ev[i]
        indices[fill[u]] = v
        fill[u] += 1
        indices[fill[v]] = u
        fill[v] += 1
    return indptr, indices


@njit(cache=True)
def bfs_tree_csr(indptr, indices, n, root):
    """BFS spanning tree: (parent, depth, order, reached)."""
    parent = np.full(n, -1, I32)
    depth = np.full(n, -1, I32)
    order = np.empty(n, I32)
    parent[root] = root
    depth[root] = 0
    order[0] = root
    qh = 0
    qt = 1
    while qh < qt:
        u = order[qh]
        qh += 1
        for j in range(indptr[u], indptr[u + 1]):
            w = indices[j]
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                order[qt] = w
                qt += 1
    return parent, depth, order, qt


@njit(cache=True)
def tree_cover_plan(indptr, indices, parent, depth, desc_order, budget):
    """Ball cover with radii budget-1 .. 0 via subtree pruning.

    Repeatedly takes the deepest uncovered vertex, walks up r steps to
    the center, and prunes the center's uncovered subtree. Each step
    covers at least r+1 vertices, so budget = ceil(sqrt(2n)) always
    suffices. Returns (sources, used, feasible).
    """
    n = parent.size
    covered = np.zeros(n, np.bool_)
    sources = np.full(budget, -1, I32)
    stack = np.empty(n, I32)
    ptr = 0
    used = 0
    for i in range(budget):
        r = budget - 1 - i
        while ptr < n and covered[desc_order[ptr]]:
            ptr += 1
        if ptr == n:
            break
        u = desc_order[ptr]
        steps = r if r < depth[u] else depth[u]
        c = u
        for _ in range(steps):
            c = parent[c]
        sources[i] = c
        used = i + 1
        covered[c] = True
        sp = 0
        stack[sp] = c
        sp += 1
        while sp > 0:
            sp -= 1
            x = stack[sp]
            for j in range(indptr[x], indptr[x + 1]):
                w = indices[j]
                if parent[w] == x and not covered[w]:
                    covered[w] = True
                    stack[sp] = w
                    sp += 1
    while ptr < n and covered[desc_order[ptr]]:
        ptr += 1
    return sources, used, ptr == n


@njit(cache=True)
def simulate_schedule_csr(indptr, indices, n, sources, rounds):
    """Run the burning process (spread, then ignite) for `rounds` rounds.

    Igniting an already-burning source is a no-op. Returns the number
    of burned vertices at the end.
    """
    burned = np.zeros(n, np.bool_)
    frontier = np.empty(n, I32)
    nxt_frontier = np.empty(n, I32)
    fs = 0
    total = 0
    for rnd in range(rounds):
        ns = 0
        for i in range(fs):
            u = frontier[i]
            for j in range(indptr[u], indptr[u + 1]):
                w = indices[j]
                if not burned[w]:
                    burned[w] = True
                    total += 1
                    nxt_frontier[ns] = w
                    ns += 1
        for i in range(ns):
            frontier[i] = nxt_frontier[i]
        fs = ns
        if rnd < sources.size:
            s = sources[rnd]
            if s >= 0 and not burned[s]:
                burned[s] = True
                total += 1
                frontier[fs] = s
                fs += 1
    return total


@njit(cache=True)
def next_unburned(burned, start, limit):
    """Lowest unburned id in [start, limit); returns limit if none."""
    i = start
    while i < limit and burned[i]:
        i += 1
    return i


@njit(cache=True)
def relax_unit(head, nxt, eto, burned, D, seed_v, seed_d, stamp, stamp_id, inq):
    """Decrease-only unit-edge relaxation (SPFA) from seeded values.

    Seeds may include burned vertices (a fresh fire source); burned
    vertices are expanded but never improved or reported. Returns the
    unburned vertices whose stored distance improved, with final values.
    """
    qcap = 256
    queue = np.empty(qcap, I32)
    qh = 0
    qt = 0
    tcap = 256
    touched = np.empty(tcap, I32)
    tcnt = 0
    for i in range(seed_v.size):
        s = seed_v[i]
        d = seed_d[i]
        if d < D[s]:
            D[s] = d
            if not burned[s] and stamp[s] != stamp_id:
                stamp[s] = stamp_id
                if tcnt == tcap:
                    tcap *= 2
                    tmp = np.empty(tcap, I32)
                    tmp[:tcnt] = touched[:tcnt]
                    touched = tmp
                touched[tcnt] = s
                tcnt += 1
            if inq[s] == 0:
                inq[s] = 1
                if qt == qcap:
                    qcap *= 2
                    tmp = np.empty(qcap, I32)
                    tmp[:qt] = queue[:qt]
                    queue = tmp
                queue[qt] = s
                qt += 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        inq[u] = 0
        du = D[u]
        e = head[u]
        while e != -1:
            w = eto[e]
            if not burned[w] and D[w] > du + 1:
                D[w] = du + 1
                if stamp[w] != stamp_id:
                    stamp[w] = stamp_id
                    if tcnt == tcap:
                        tcap *= 2
                        tmp = np.empty(tcap, I32)
                        tmp[:tcnt] = touched[:tcnt]
                        touched = tmp
                    touched[tcnt] = w
                    tcnt += 1
                if inq[w] == 0:
                    inq[w] = 1
                    if qt == qcap:
                        qcap *= 2
                        tmp = np.empty(qcap, I32)
                        tmp[:qt] = queue[:qt]
                        queue = tmp
                    queue[qt] = w
                    qt += 1
            e = nxt[e]
    out_v = touched[:tcnt].copy()
    out_d = np.empty(tcnt, I64)
    for i in range(tcnt):
        out_d[i] = D[out_v[i]]
    return out_v, out_d


@njit(cache=True)
def heap_push_bulk(heap, size, keys):
    """Push packed int64 keys onto a binary max-heap; returns new size."""
    for i in range(keys.size):
        k = keys[i]
        pos = size
        while pos > 0:
            par = (pos - 1) >> 1
            if heap[par] < k:
                heap[pos] = heap[par]
                pos = par
            else:
                break
        heap[pos] = k
        size += 1
    return size


@njit(cache=True)
def heap_pop_best(heap, size, D, burned):
    """Pop entries until one is live (unburned and distance current).

    Returns (vertex, new_size); vertex is -1 if the heap ran dry.
    Keys pack (distance << 32) | (2**32 - 1 - id), so the max key is
    the farthest vertex with lowest id.
    """
    mask = (1 << 32) - 1
    while size > 0:
        top = heap[0]
        size -= 1
        last = heap[size]
        pos = 0
        while True:
            c = 2 * pos + 1
            if c >= size:
                break
            if c + 1 < size and heap[c + 1] > heap[c]:
                c += 1
            if heap[c] > last:
                heap[pos] = heap[c]
                pos = c
            else:
                break
        heap[pos] = last
        d = top >> 32
        v = mask - (top & mask)
        if not burned[v] and D[v] == d:
            return v, size
    return -1, size

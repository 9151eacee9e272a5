"""Pure-Python kernels.

Same semantics as the compiled versions in ``maxcover._fastpath``; selection
order, tie-breaking and returned values are identical. These are the import
fallback and the reference the compiled code is tested against.
"""

from __future__ import annotations

import heapq
from collections import deque


def greedy_trace(graph, k):
    """Greedy selection trace: (selections, gains), both length min(k, n).

    Lazy re-evaluation on a min-heap keyed by (stale gain, node index): a
    popped node is re-scored and selected only if its cached gain is still
    current. Gains never increase, so the cached value is an upper bound and
    the first confirmed pop is the true argmax with ascending-index ties.
    """
    n = graph.n_left
    steps = min(k, n)
    selections: list[int] = []
    gains: list[int] = []
    if steps == 0:
        return selections, gains
    adj = graph.adjacency
    dmax = graph.max_degree()
    covered = bytearray(graph.m_right)
    # Packed key: (dmax - gain) << 32 | node. Min-heap order is then
    # (gain descending, index ascending).
    heap = [((dmax - len(adj[u])) << 32) | u for u in range(n)]
    heapq.heapify(heap)
    while len(selections) < steps:
        key = heapq.heappop(heap)
        u = key & 0xFFFFFFFF
        cached = dmax - (key >> 32)
        g = 0
        for v in adj[u]:
            if not covered[v]:
                g += 1
        if g == cached:
            for v in adj[u]:
                covered[v] = 1
            selections.append(u)
            gains.append(g)
        else:
            heapq.heappush(heap, ((dmax - g) << 32) | u)
    return selections, gains


def order_gains(graph, order):
    """Marginal gains of inserting ``order`` sequentially (left to right)."""
    covered = bytearray(graph.m_right)
    gains = []
    adj = graph.adjacency
    for u in order:
        g = 0
        for v in adj[u]:
            if not covered[v]:
                covered[v] = 1
                g += 1
        gains.append(g)
    return gains


def hybrid_sweep(graph, k):
    """coverage(Y^t) for every t in 0..k, where Y^t is greedy for t steps
    plus the k-t best residual nodes in one shot (ties by index)."""
    n = graph.n_left
    if k > n:
        raise ValueError(f"k={k} exceeds n_left={n}")
    adj = graph.adjacency
    selections, _ = greedy_trace(graph, k)
    covered = bytearray(graph.m_right)
    covered_count = 0
    in_prefix = bytearray(n)
    values = []
    for t in range(k + 1):
        take = k - t
        if take == 0:
            values.append(covered_count)
        else:
            ranked = []
            for u in range(n):
                if in_prefix[u]:
                    continue
                g = 0
                for v in adj[u]:
                    if not covered[v]:
                        g += 1
                ranked.append(((-g) << 32) | u)
            ranked.sort()
            new_right = set()
            for key in ranked[:take]:
                for v in adj[key & 0xFFFFFFFF]:
                    if not covered[v]:
                        new_right.add(v)
            values.append(covered_count + len(new_right))
        if t < len(selections):
            u = selections[t]
            in_prefix[u] = 1
            for v in adj[u]:
                if not covered[v]:
                    covered[v] = 1
                    covered_count += 1
    return values


def max_matching_adj(n: int, adj) -> list[int]:
    """Maximum cardinality matching on a general simple graph.

    Blossom contraction over a BFS alternating tree, with a greedy initial
    matching. Returns the mate array (-1 for unmatched). A root whose search
    fails stays unmatched in every maximum matching extension, so each free
    vertex is searched once.
    """
    mate = [-1] * n
    for v in range(n):
        if mate[v] == -1:
            for w in adj[v]:
                if mate[w] == -1:
                    mate[v] = w
                    mate[w] = v
                    break
    for root in range(n):
        if mate[root] == -1:
            _augment_from(n, adj, mate, root)
    return mate


def _augment_from(n, adj, mate, root):
    parent = [-1] * n
    base = list(range(n))
    in_queue = [False] * n
    in_queue[root] = True
    q = deque([root])
    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                # Both endpoints even: an odd cycle closes, contract it.
                cur_base = _blossom_lca(mate, base, parent, v, to)
                path_flag = [False] * n
                _mark_blossom_path(mate, base, parent, path_flag, v, cur_base, to)
                _mark_blossom_path(mate, base, parent, path_flag, to, cur_base, v)
                for i in range(n):
                    if path_flag[base[i]]:
                        base[i] = cur_base
                        if not in_queue[i]:
                            in_queue[i] = True
                            q.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    _flip_augmenting_path(mate, parent, to)
                    return True
                nxt = mate[to]
                if not in_queue[nxt]:
                    in_queue[nxt] = True
                    q.append(nxt)
    return False


def _blossom_lca(mate, base, parent, a, b):
    seen = set()
    v = base[a]
    while True:
        seen.add(v)
        if mate[v] == -1:
            break
        v = base[parent[mate[v]]]
    v = base[b]
    while v not in seen:
        v = base[parent[mate[v]]]
    return v


def _mark_blossom_path(mate, base, parent, path_flag, v, b, child):
    while base[v] != b:
        path_flag[base[v]] = True
        path_flag[base[mate[v]]] = True
        parent[v] = child
        child = mate[v]
        v = parent[mate[v]]


def _flip_augmenting_path(mate, parent, v):
    while v != -1:
        pv = parent[v]
        next_even = mate[pv]
        mate[v] = pv
        mate[pv] = v
        v = next_even

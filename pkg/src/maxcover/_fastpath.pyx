# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.

Each function mirrors its counterpart in ``maxcover._kernels.pure``
operation for operation: identical selection order, tie-breaking, bound
arithmetic and node accounting. The pure versions are the reference; the
test suite asserts agreement on random inputs.
"""

import numpy as np

from libc.stdlib cimport free, malloc, qsort, realloc
from libc.string cimport memset

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define _mc_popcountll(x) __builtin_popcountll(x)
    #else
    static int _mc_popcountll(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; ++c; }
        return c;
    }
    #endif
    """
    int _mc_popcountll(unsigned long long x) nogil


# ---------------------------------------------------------------- greedy

cdef inline void _u64heap_push(unsigned long long* h, int* size,
                               unsigned long long key) noexcept nogil:
    cdef int i = size[0]
    cdef int p
    cdef unsigned long long tmp
    h[i] = key
    size[0] = i + 1
    while i > 0:
        p = (i - 1) >> 1
        if h[p] <= h[i]:
            break
        tmp = h[p]; h[p] = h[i]; h[i] = tmp
        i = p


cdef inline unsigned long long _u64heap_pop(unsigned long long* h,
                                            int* size) noexcept nogil:
    cdef unsigned long long top = h[0]
    cdef unsigned long long tmp
    cdef int n = size[0] - 1
    cdef int i = 0
    cdef int c
    size[0] = n
    h[0] = h[n]
    while True:
        c = 2 * i + 1
        if c >= n:
            break
        if c + 1 < n and h[c + 1] < h[c]:
            c += 1
        if h[i] <= h[c]:
            break
        tmp = h[i]; h[i] = h[c]; h[c] = tmp
        i = c
    return top


def greedy_trace(long long[::1] indptr, int[::1] indices, int m_right, int k):
    """Lazy-heap greedy; same pop/re-push sequence as the pure kernel."""
    cdef int n = indptr.shape[0] - 1
    cdef int steps = min(k, n)
    sel_np = np.empty(steps, dtype=np.int32)
    gains_np = np.empty(steps, dtype=np.int32)
    if steps == 0:
        return sel_np, gains_np
    cdef int[::1] sel = sel_np
    cdef int[::1] gains = gains_np
    cdef int dmax = 0
    cdef int u, g, cached, nsel
    cdef long long j
    cdef unsigned long long key
    for u in range(n):
        if indptr[u + 1] - indptr[u] > dmax:
            dmax = <int>(indptr[u + 1] - indptr[u])
    cdef unsigned char* covered = <unsigned char*>malloc(
        m_right if m_right > 0 else 1)
    cdef unsigned long long* heap = <unsigned long long*>malloc(
        n * sizeof(unsigned long long))
    if covered == NULL or heap == NULL:
        free(covered); free(heap)
        raise MemoryError()
    memset(covered, 0, m_right if m_right > 0 else 1)
    cdef int hsize = 0
    for u in range(n):
        _u64heap_push(heap, &hsize,
                      (<unsigned long long>(dmax - (indptr[u + 1] - indptr[u]))
                       << 32) | <unsigned long long>u)
    nsel = 0
    while nsel < steps:
        key = _u64heap_pop(heap, &hsize)
        u = <int>(key & 0xFFFFFFFFULL)
        cached = dmax - <int>(key >> 32)
        g = 0
        for j in range(indptr[u], indptr[u + 1]):
            if not covered[indices[j]]:
                g += 1
        if g == cached:
            for j in range(indptr[u], indptr[u + 1]):
                covered[indices[j]] = 1
            sel[nsel] = u
            gains[nsel] = g
            nsel += 1
        else:
            _u64heap_push(heap, &hsize,
                          (<unsigned long long>(dmax - g) << 32)
                          | <unsigned long long>u)
    free(covered)
    free(heap)
    return sel_np, gains_np


def order_gains(long long[::1] indptr, int[::1] indices, int m_right,
                int[::1] order):
    cdef int length = order.shape[0]
    out_np = np.empty(length, dtype=np.int32)
    cdef int[::1] out = out_np
    cdef unsigned char* covered = <unsigned char*>malloc(
        m_right if m_right > 0 else 1)
    if covered == NULL:
        raise MemoryError()
    memset(covered, 0, m_right if m_right > 0 else 1)
    cdef int idx, u, g, v
    cdef long long j
    for idx in range(length):
        u = order[idx]
        g = 0
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if not covered[v]:
                covered[v] = 1
                g += 1
        out[idx] = g
    free(covered)
    return out_np


# ---------------------------------------------------------------- hybrid

cdef int _cmp_ll(const void* a, const void* b) noexcept nogil:
    cdef long long x = (<const long long*>a)[0]
    cdef long long y = (<const long long*>b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def hybrid_sweep(long long[::1] indptr, int[::1] indices, int m_right, int k):
    """coverage(Y^t) for t in 0..k; choice of one-shot nodes identical to
    the pure kernel (gain descending, index ascending)."""
    cdef int n = indptr.shape[0] - 1
    if k > n:
        raise ValueError(f"k={k} exceeds n_left={n}")
    sel_np, _ = greedy_trace(indptr, indices, m_right, k)
    cdef int[::1] selections = sel_np
    cdef int n_sel = selections.shape[0]
    values_np = np.empty(k + 1, dtype=np.int64)
    cdef long long[::1] values = values_np
    cdef unsigned char* covered = <unsigned char*>malloc(
        m_right if m_right > 0 else 1)
    cdef unsigned char* in_prefix = <unsigned char*>malloc(n if n > 0 else 1)
    cdef long long* stamp = <long long*>malloc(
        (m_right if m_right > 0 else 1) * sizeof(long long))
    cdef long long* ranked = <long long*>malloc(
        (n if n > 0 else 1) * sizeof(long long))
    if covered == NULL or in_prefix == NULL or stamp == NULL or ranked == NULL:
        free(covered); free(in_prefix); free(stamp); free(ranked)
        raise MemoryError()
    memset(covered, 0, m_right if m_right > 0 else 1)
    memset(in_prefix, 0, n if n > 0 else 1)
    cdef int t, take, u, g, v, nr, i
    cdef long long j, covered_count = 0, fresh
    cdef long long epoch = 0
    for v in range(m_right):
        stamp[v] = 0
    for t in range(k + 1):
        take = k - t
        if take == 0:
            values[t] = covered_count
        else:
            nr = 0
            for u in range(n):
                if in_prefix[u]:
                    continue
                g = 0
                for j in range(indptr[u], indptr[u + 1]):
                    if not covered[indices[j]]:
                        g += 1
                # equals ((-g) << 32) | u: the low 32 bits of -(g<<32) are 0
                ranked[nr] = (<long long>u) - ((<long long>g) << 32)
                nr += 1
            qsort(ranked, nr, sizeof(long long), _cmp_ll)
            if take > nr:
                take = nr
            epoch += 1
            fresh = 0
            for i in range(take):
                u = <int>(ranked[i] & 0xFFFFFFFFLL)
                for j in range(indptr[u], indptr[u + 1]):
                    v = indices[j]
                    if not covered[v] and stamp[v] != epoch:
                        stamp[v] = epoch
                        fresh += 1
            values[t] = covered_count + fresh
        if t < n_sel:
            u = selections[t]
            in_prefix[u] = 1
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if not covered[v]:
                    covered[v] = 1
                    covered_count += 1
    free(covered); free(in_prefix); free(stamp); free(ranked)
    return values_np


# ---------------------------------------------------------------- matching

cdef void _mark_blossom_path(int* mate, int* base, int* parent,
                             unsigned char* path_flag, int v, int b,
                             int child) noexcept nogil:
    while base[v] != b:
        path_flag[base[v]] = 1
        path_flag[base[mate[v]]] = 1
        parent[v] = child
        child = mate[v]
        v = parent[mate[v]]


cdef int _blossom_lca(int* mate, int* base, int* parent,
                      long long* seen, long long stamp, int a, int b) noexcept nogil:
    cdef int v = base[a]
    while True:
        seen[v] = stamp
        if mate[v] == -1:
            break
        v = base[parent[mate[v]]]
    v = base[b]
    while seen[v] != stamp:
        v = base[parent[mate[v]]]
    return v


cdef bint _augment_from(int n, long long* indptr, int* indices, int* mate,
                        int root, int* parent, int* base,
                        unsigned char* in_queue, int* queue,
                        unsigned char* path_flag, long long* lca_seen,
                        long long* lca_stamp) noexcept nogil:
    cdef int i, v, to, cur_base, nxt, qhead, qtail
    cdef long long j
    for i in range(n):
        parent[i] = -1
        base[i] = i
        in_queue[i] = 0
    in_queue[root] = 1
    queue[0] = root
    qhead = 0
    qtail = 1
    while qhead < qtail:
        v = queue[qhead]
        qhead += 1
        for j in range(indptr[v], indptr[v + 1]):
            to = indices[j]
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                lca_stamp[0] += 1
                cur_base = _blossom_lca(mate, base, parent, lca_seen,
                                        lca_stamp[0], v, to)
                memset(path_flag, 0, n)
                _mark_blossom_path(mate, base, parent, path_flag, v,
                                   cur_base, to)
                _mark_blossom_path(mate, base, parent, path_flag, to,
                                   cur_base, v)
                for i in range(n):
                    if path_flag[base[i]]:
                        base[i] = cur_base
                        if not in_queue[i]:
                            in_queue[i] = 1
                            queue[qtail] = i
                            qtail += 1
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    # flip the augmenting path ending at `to`
                    while to != -1:
                        v = parent[to]
                        nxt = mate[v]
                        mate[to] = v
                        mate[v] = to
                        to = nxt
                    return True
                nxt = mate[to]
                if not in_queue[nxt]:
                    in_queue[nxt] = 1
                    queue[qtail] = nxt
                    qtail += 1
    return False


def max_matching(int n, long long[::1] indptr, int[::1] indices):
    """Blossom maximum matching; returns the mate array (-1 = unmatched)."""
    mate_np = np.empty(n, dtype=np.int32)
    cdef int[::1] mate_view = mate_np
    if n == 0:
        return mate_np
    cdef int* mate = &mate_view[0]
    cdef int* parent = <int*>malloc(n * sizeof(int))
    cdef int* base = <int*>malloc(n * sizeof(int))
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef unsigned char* in_queue = <unsigned char*>malloc(n)
    cdef unsigned char* path_flag = <unsigned char*>malloc(n)
    cdef long long* lca_seen = <long long*>malloc(n * sizeof(long long))
    if (parent == NULL or base == NULL or queue == NULL or in_queue == NULL
            or path_flag == NULL or lca_seen == NULL):
        free(parent); free(base); free(queue)
        free(in_queue); free(path_flag); free(lca_seen)
        raise MemoryError()
    cdef long long lca_stamp = 0
    cdef int v, w
    cdef long long j
    for v in range(n):
        mate[v] = -1
        lca_seen[v] = 0
    for v in range(n):
        if mate[v] == -1:
            for j in range(indptr[v], indptr[v + 1]):
                w = indices[j]
                if mate[w] == -1:
                    mate[v] = w
                    mate[w] = v
                    break
    for v in range(n):
        if mate[v] == -1:
            _augment_from(n, &indptr[0], &indices[0] if indices.shape[0] > 0
                          else NULL, mate, v, parent, base, in_queue, queue,
                          path_flag, lca_seen, &lca_stamp)
    free(parent); free(base); free(queue)
    free(in_queue); free(path_flag); free(lca_seen)
    return mate_np


# ---------------------------------------------------------------- exact

cdef void _exh_rec(unsigned long long* masks, int n, int start, int remaining,
                   unsigned long long acc, unsigned long long chosen,
                   long long* best_value, unsigned long long* best_chosen,
                   long long* leaves) noexcept nogil:
    cdef int u
    cdef long long v
    if remaining == 0:
        leaves[0] += 1
        v = _mc_popcountll(acc)
        if v > best_value[0]:
            best_value[0] = v
            best_chosen[0] = chosen
        return
    for u in range(start, n - remaining + 1):
        _exh_rec(masks, n, u + 1, remaining - 1, acc | masks[u],
                 chosen | (<unsigned long long>1 << u),
                 best_value, best_chosen, leaves)


def exhaustive_u64(unsigned long long[::1] masks, int kk):
    """Best subset of size kk over uint64 masks: (value, witness_mask, leaves).

    Lexicographic enumeration with strict improvement, so the witness is the
    first maximizer in subset-lex order, matching the pure solver.
    """
    cdef int n = masks.shape[0]
    cdef long long best_value = -1
    cdef unsigned long long best_chosen = 0
    cdef long long leaves = 0
    _exh_rec(&masks[0] if n > 0 else NULL, n, 0, kk, 0, 0,
             &best_value, &best_chosen, &leaves)
    return int(best_value), int(best_chosen), int(leaves)


cdef struct BBNode:
    long long neg_bound
    long long depth
    long long next_index
    long long counter
    unsigned long long acc
    long long cnt
    unsigned long long chosen


cdef inline bint _bb_less(BBNode* a, BBNode* b) noexcept nogil:
    if a.neg_bound != b.neg_bound:
        return a.neg_bound < b.neg_bound
    if a.depth != b.depth:
        return a.depth < b.depth
    if a.next_index != b.next_index:
        return a.next_index < b.next_index
    return a.counter < b.counter


cdef long long _bb_bound(unsigned long long* masks,
                         unsigned long long* rem_or, int n, int k,
                         unsigned long long acc, long long cnt, int i,
                         int depth, long long* scratch) noexcept nogil:
    cdef int r = k - depth
    cdef int u, idx
    cdef long long top, residual
    if r <= 0 or i >= n:
        return cnt
    residual = _mc_popcountll(rem_or[i] & ~acc)
    idx = 0
    for u in range(i, n):
        scratch[idx] = _mc_popcountll(masks[u] & ~acc)
        idx += 1
    qsort(scratch, idx, sizeof(long long), _cmp_ll)
    top = 0
    if r > idx:
        r = idx
    for u in range(idx - r, idx):
        top += scratch[u]
    return cnt + (top if top < residual else residual)


def bb_u64(unsigned long long[::1] masks, int k, long long incumbent,
           long long node_budget):
    """Best-first branch-and-bound over uint64 masks.

    Returns (value, witness_mask, pops, truncated); witness_mask is 0 when
    the search never improved on the provided incumbent. Node ordering and
    the explored count replicate the pure solver exactly.
    """
    cdef int n = masks.shape[0]
    cdef long long best_value = incumbent
    cdef unsigned long long best_chosen = 0
    cdef long long explored = 0
    cdef bint truncated = 0
    cdef long long counter = 0
    cdef long long cap_nodes = 1024
    cdef BBNode* heap = <BBNode*>malloc(cap_nodes * sizeof(BBNode))
    cdef long long* scratch = <long long*>malloc(
        (n if n > 0 else 1) * sizeof(long long))
    cdef unsigned long long* rem_or = <unsigned long long*>malloc(
        (n + 1) * sizeof(unsigned long long))
    if heap == NULL or scratch == NULL or rem_or == NULL:
        free(heap); free(scratch); free(rem_or)
        raise MemoryError()
    cdef long long hsize = 0
    cdef BBNode node, tmp
    cdef BBNode* grown
    cdef long long i_h, p_h, c_h
    cdef int i, depth
    cdef unsigned long long acc2
    cdef long long cnt2, b2, b3
    cdef unsigned long long* pm = &masks[0] if n > 0 else NULL

    rem_or[n] = 0
    for i in range(n - 1, -1, -1):
        rem_or[i] = rem_or[i + 1] | masks[i]
    node.neg_bound = -_bb_bound(pm, rem_or, n, k, 0, 0, 0, 0, scratch)
    node.depth = 0
    node.next_index = 0
    node.counter = 0
    node.acc = 0
    node.cnt = 0
    node.chosen = 0
    heap[0] = node
    hsize = 1

    while hsize > 0:
        # pop-min
        node = heap[0]
        hsize -= 1
        heap[0] = heap[hsize]
        i_h = 0
        while True:
            c_h = 2 * i_h + 1
            if c_h >= hsize:
                break
            if c_h + 1 < hsize and _bb_less(&heap[c_h + 1], &heap[c_h]):
                c_h += 1
            if not _bb_less(&heap[c_h], &heap[i_h]):
                break
            tmp = heap[i_h]; heap[i_h] = heap[c_h]; heap[c_h] = tmp
            i_h = c_h
        explored += 1
        if node_budget >= 0 and explored > node_budget:
            truncated = 1
            break
        if -node.neg_bound <= best_value:
            continue
        depth = <int>node.depth
        i = <int>node.next_index
        if depth == k or i == n:
            if node.cnt > best_value:
                best_value = node.cnt
                best_chosen = node.chosen
            continue
        if hsize + 2 > cap_nodes:
            cap_nodes *= 2
            grown = <BBNode*>realloc(heap, cap_nodes * sizeof(BBNode))
            if grown == NULL:
                free(heap); free(scratch)
                raise MemoryError()
            heap = grown
        acc2 = node.acc | masks[i]
        cnt2 = _mc_popcountll(acc2)
        b2 = _bb_bound(pm, rem_or, n, k, acc2, cnt2, i + 1, depth + 1,
                       scratch)
        if b2 > best_value:
            counter += 1
            tmp.neg_bound = -b2
            tmp.depth = depth + 1
            tmp.next_index = i + 1
            tmp.counter = counter
            tmp.acc = acc2
            tmp.cnt = cnt2
            tmp.chosen = node.chosen | (<unsigned long long>1 << i)
            i_h = hsize
            heap[i_h] = tmp
            hsize += 1
            while i_h > 0:
                p_h = (i_h - 1) >> 1
                if not _bb_less(&heap[i_h], &heap[p_h]):
                    break
                tmp = heap[p_h]; heap[p_h] = heap[i_h]; heap[i_h] = tmp
                i_h = p_h
        b3 = _bb_bound(pm, rem_or, n, k, node.acc, node.cnt, i + 1, depth,
                       scratch)
        if b3 > best_value:
            counter += 1
            tmp.neg_bound = -b3
            tmp.depth = depth
            tmp.next_index = i + 1
            tmp.counter = counter
            tmp.acc = node.acc
            tmp.cnt = node.cnt
            tmp.chosen = node.chosen
            i_h = hsize
            heap[i_h] = tmp
            hsize += 1
            while i_h > 0:
                p_h = (i_h - 1) >> 1
                if not _bb_less(&heap[i_h], &heap[p_h]):
                    break
                tmp = heap[p_h]; heap[p_h] = heap[i_h]; heap[i_h] = tmp
                i_h = p_h
    free(heap)
    free(scratch)
    free(rem_or)
    return int(best_value), int(best_chosen), int(explored), bool(truncated)

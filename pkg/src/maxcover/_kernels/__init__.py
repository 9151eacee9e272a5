"""Kernel backend selection.

The compiled extension (``maxcover._fastpath``) is used when it imported
cleanly; otherwise the pure-Python kernels take over. Set
``MAXCOVER_BACKEND=pure`` or ``=compiled`` to force a choice (forcing
``compiled`` on a build without the extension raises at import).

Both backends implement the same contracts and tie-breaking, and the test
suite asserts they agree; only speed differs.
"""

from __future__ import annotations

import os

from . import pure

try:
    from .. import _fastpath as fast
except ImportError:
    fast = None

_forced = os.environ.get("MAXCOVER_BACKEND")
if _forced == "pure":
    _fast = None
elif _forced == "compiled":
    if fast is None:
        raise ImportError(
            "MAXCOVER_BACKEND=compiled but the maxcover._fastpath extension "
            "is not built")
    _fast = fast
elif _forced:
    raise ImportError(f"MAXCOVER_BACKEND must be 'pure' or 'compiled', "
                      f"got {_forced!r}")
else:
    _fast = fast

BACKEND = "compiled" if _fast is not None else "pure"


def greedy_trace(graph, k):
    if _fast is not None:
        indptr, indices = graph.csr()
        sel, gains = _fast.greedy_trace(indptr, indices, graph.m_right, k)
        return sel.tolist(), gains.tolist()
    return pure.greedy_trace(graph, k)


def order_gains(graph, order):
    if _fast is not None:
        import numpy as np

        indptr, indices = graph.csr()
        arr = np.asarray(order, dtype=np.int32)
        return _fast.order_gains(indptr, indices, graph.m_right, arr).tolist()
    return pure.order_gains(graph, order)


def hybrid_sweep(graph, k):
    if _fast is not None:
        indptr, indices = graph.csr()
        return _fast.hybrid_sweep(indptr, indices, graph.m_right, k).tolist()
    return pure.hybrid_sweep(graph, k)


def has_fast_masks(graph) -> bool:
    """True when the compiled subset solvers apply (uint64 mask regime)."""
    return _fast is not None and graph.n_left <= 64 and graph.m_right <= 64


def _masks_u64(graph):
    import numpy as np

    return np.array(graph.neighbor_masks(), dtype=np.uint64)


def exhaustive_u64(graph, kk):
    """(best_value, witness_bitmask, leaves) via the compiled enumerator."""
    return _fast.exhaustive_u64(_masks_u64(graph), kk)


def bb_u64(graph, k, incumbent, node_budget):
    """(value, witness_bitmask, pops, truncated) via the compiled search."""
    return _fast.bb_u64(_masks_u64(graph), k, incumbent, node_budget)


def max_matching_adj(n, adj):
    if _fast is not None:
        import numpy as np

        indptr = np.zeros(n + 1, dtype=np.int64)
        for i in range(n):
            indptr[i + 1] = indptr[i] + len(adj[i])
        indices = np.empty(int(indptr[-1]), dtype=np.int32)
        pos = 0
        for i in range(n):
            for w in adj[i]:
                indices[pos] = w
                pos += 1
        return _fast.max_matching(n, indptr, indices).tolist()
    return pure.max_matching_adj(n, adj)

"""Exact optimum computation: exhaustive search and branch-and-bound.

Both solvers work on neighbor bitmasks and share tie conventions: subsets
are explored in lexicographic node order and only strict improvements
replace the incumbent, so the reported witness is the lexicographically
first maximizer.  Branch-and-bound explores a best-first tree whose order
is fully determined by integer keys; the pure and compiled backends visit
exactly the same nodes in the same order.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass

from . import _kernels
from .algorithms import greedy
from .errors import CapacityError
from .graph import BipartiteGraph, coverage

EXHAUSTIVE_LEAF_BUDGET = 10 ** 7


@dataclass(frozen=True)
class OptResult:
    value: int
    witness: tuple[int, ...]
    nodes_explored: int
    method: str
    best_effort: bool
    elapsed_ms: float


def opt_exhaustive(graph: BipartiteGraph, k: int, *,
                   max_leaves: int = EXHAUSTIVE_LEAF_BUDGET) -> OptResult:
    """Evaluate every subset of size min(k, n) and return the best.

    Refuses instances with more than ``max_leaves`` subsets.
    """
    if not 0 <= k:
        raise ValueError("k must be non-negative")
    n = graph.n_left
    kk = min(k, n)
    leaves = math.comb(n, kk)
    if leaves > max_leaves:
        raise CapacityError(
            f"C({n}, {kk}) = {leaves} subsets exceeds the {max_leaves} budget")
    t0 = time.perf_counter()
    if _kernels.has_fast_masks(graph):
        value, witness_mask, explored = _kernels.exhaustive_u64(graph, kk)
        witness = tuple(u for u in range(n) if (witness_mask >> u) & 1)
    else:
        value, witness, explored = _exhaustive_pure(graph, kk)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return OptResult(value=value, witness=tuple(witness),
                     nodes_explored=explored, method="exhaustive",
                     best_effort=False, elapsed_ms=elapsed)


def _exhaustive_pure(graph: BipartiteGraph, kk: int):
    masks = graph.neighbor_masks()
    n = graph.n_left
    best_value = -1
    best: tuple[int, ...] = ()
    explored = 0
    chosen: list[int] = []

    def rec(start: int, remaining: int, acc: int) -> None:
        nonlocal best_value, best, explored
        if remaining == 0:
            explored += 1
            v = acc.bit_count()
            if v > best_value:
                best_value = v
                best = tuple(chosen)
            return
        for u in range(start, n - remaining + 1):
            chosen.append(u)
            rec(u + 1, remaining - 1, acc | masks[u])
            chosen.pop()

    rec(0, kk, 0)
    return best_value, best, explored


def opt_branch_bound(graph: BipartiteGraph, k: int, *,
                     warm_start=None, node_budget: int | None = None,
                     time_budget_s: float | None = None) -> OptResult:
    """Best-first branch-and-bound for the coverage optimum.

    The bound of a partial state is its count plus the sum of the largest
    k-|S| residual gains among the not-yet-considered nodes, capped by the
    total reachable mass.  With a node or time budget the search may stop
    early and return the incumbent flagged best_effort.
    """
    n = graph.n_left
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range [0, {n}]")
    t0 = time.perf_counter()
    g = greedy(graph, k)
    best_value = g.value
    best_witness = tuple(sorted(g.selections))
    if warm_start is not None:
        ws = tuple(sorted(set(warm_start)))
        if len(ws) > k:
            raise ValueError("warm start larger than the budget")
        wv = coverage(graph, ws)
        if wv > best_value:
            best_value, best_witness = wv, ws
    if _kernels.has_fast_masks(graph) and time_budget_s is None:
        value, witness_mask, explored, truncated = _kernels.bb_u64(
            graph, k, best_value, -1 if node_budget is None else node_budget)
        if value > best_value:
            best_value = value
            best_witness = tuple(u for u in range(n)
                                 if (witness_mask >> u) & 1)
        best_effort = bool(truncated)
    else:
        best_value, best_witness, explored, best_effort = _bb_pure(
            graph, k, best_value, best_witness, node_budget,
            time_budget_s, t0)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return OptResult(value=best_value, witness=best_witness,
                     nodes_explored=explored, method="branch_bound",
                     best_effort=best_effort, elapsed_ms=elapsed)


def _bb_pure(graph: BipartiteGraph, k: int, best_value: int,
             best_witness: tuple[int, ...], node_budget, time_budget_s, t0):
    masks = graph.neighbor_masks()
    n = graph.n_left
    # rem_or[i]: right mass reachable from nodes i..n-1; caps the bound far
    # tighter than the sum of individual gains once the suffix saturates
    rem_or = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        rem_or[i] = rem_or[i + 1] | masks[i]

    def bound(acc: int, cnt: int, i: int, depth: int) -> int:
        r = k - depth
        if r <= 0 or i >= n:
            return cnt
        residual = (rem_or[i] & ~acc).bit_count()
        gains = sorted((masks[u] & ~acc).bit_count() for u in range(i, n))
        top = sum(gains[-r:] if r < len(gains) else gains)
        return cnt + (top if top < residual else residual)

    # entries: (neg_bound, depth, next_index, counter, acc, cnt, chosen)
    counter = 0
    heap = [(-bound(0, 0, 0, 0), 0, 0, counter, 0, 0, ())]
    explored = 0
    best_effort = False
    while heap:
        neg_b, depth, i, _, acc, cnt, chosen = heapq.heappop(heap)
        explored += 1
        if node_budget is not None and explored > node_budget:
            best_effort = True
            break
        if time_budget_s is not None \
                and time.perf_counter() - t0 > time_budget_s:
            best_effort = True
            break
        if -neg_b <= best_value:
            continue  # stale: incumbent moved past this bound
        if depth == k or i == n:
            if cnt > best_value:
                best_value = cnt
                best_witness = chosen
            continue
        if depth < k:
            acc2 = acc | masks[i]
            cnt2 = acc2.bit_count()
            b2 = bound(acc2, cnt2, i + 1, depth + 1)
            if b2 > best_value:
                counter += 1
                heapq.heappush(heap, (-b2, depth + 1, i + 1, counter,
                                      acc2, cnt2, chosen + (i,)))
        b3 = bound(acc, cnt, i + 1, depth)
        if b3 > best_value:
            counter += 1
            heapq.heappush(heap, (-b3, depth, i + 1, counter,
                                  acc, cnt, chosen))
    return best_value, best_witness, explored, best_effort


def solve_opt(graph: BipartiteGraph, k: int, method: str,
              **kwargs) -> OptResult:
    if method == "exhaustive":
        return opt_exhaustive(graph, k, **kwargs)
    if method == "branch_bound":
        return opt_branch_bound(graph, k, **kwargs)
    raise ValueError(f"unknown exact method {method!r}")

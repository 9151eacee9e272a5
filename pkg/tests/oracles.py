"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written over plain Python sets, Fractions,
and itertools rather than the library's CSR arrays, bitmasks, or heaps, so
a shared bug between the implementation and its check is unlikely.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def adj_sets(graph) -> list[set[int]]:
    """Neighbor sets of a BipartiteGraph, one set per left node."""
    return [set(row) for row in graph.adjacency]


def cover_value(adj: list[set[int]], nodes) -> int:
    covered: set[int] = set()
    for u in nodes:
        covered |= adj[u]
    return len(covered)


def greedy_select(adj: list[set[int]], k: int) -> tuple[list[int], list[int]]:
    """Plain argmax-scan greedy; ties go to the lowest index.

    Returns (selections, gains).  Selects min(k, n) nodes, zero-gain
    steps included.
    """
    n = len(adj)
    covered: set[int] = set()
    chosen: set[int] = set()
    sels, gains = [], []
    for _ in range(min(k, n)):
        best_u, best_g = -1, -1
        for u in range(n):
            if u in chosen:
                continue
            g = len(adj[u] - covered)
            if g > best_g:
                best_u, best_g = u, g
        sels.append(best_u)
        gains.append(best_g)
        chosen.add(best_u)
        covered |= adj[best_u]
    return sels, gains


def exhaustive_opt(adj: list[set[int]], k: int) -> tuple[int, tuple[int, ...]]:
    """Best value over all subsets of size min(k, n); lex-first witness."""
    n = len(adj)
    kk = min(k, n)
    best_v, best_s = -1, None
    for combo in itertools.combinations(range(n), kk):
        v = cover_value(adj, combo)
        if v > best_v:
            best_v, best_s = v, combo
    return best_v, best_s


def top_residual(adj: list[set[int]], base: list[int], t: int) -> list[int]:
    """The t nodes with the largest residual gain over base, full sort."""
    covered: set[int] = set()
    for u in base:
        covered |= adj[u]
    pool = [u for u in range(len(adj)) if u not in set(base)]
    ranked = sorted(pool, key=lambda u: (-len(adj[u] - covered), u))
    return ranked[:t]


def max_matching_size(n: int, edges: list[tuple[int, int]]) -> int:
    """Exhaustive maximum matching on a small simple graph.

    Memoized recursion on the set of still-free vertices; fine for
    n <= 16 or so.
    """
    edges = sorted(set((min(a, b), max(a, b)) for a, b in edges))
    memo: dict[tuple[int, int], int] = {}

    def rec(i: int, used: int) -> int:
        if i >= len(edges):
            return 0
        key = (i, used)
        if key in memo:
            return memo[key]
        a, b = edges[i]
        best = rec(i + 1, used)
        if not (used >> a) & 1 and not (used >> b) & 1:
            best = max(best, 1 + rec(i + 1, used | (1 << a) | (1 << b)))
        memo[key] = best
        return best

    return rec(0, 0)


def disjoint_subset_max(adj: list[set[int]]) -> int:
    """Largest family of left nodes with pairwise disjoint neighborhoods."""
    n = len(adj)
    best = 0
    for mask in range(1 << n):
        seen: set[int] = set()
        size = 0
        ok = True
        for u in range(n):
            if (mask >> u) & 1:
                if adj[u] & seen:
                    ok = False
                    break
                seen |= adj[u]
                size += 1
        if ok:
            best = max(best, size)
    return best


def hypergeom_miss(m: int, d: int, r: int) -> Fraction:
    """P(a uniform d-subset of [m] avoids a fixed r-subset), exact."""
    return Fraction(math.comb(r, d), math.comb(m, d))


def gamma_fixed_point(tol: float = 1e-14, max_iter: int = 10000) -> float:
    """Solve x = 2 exp(-2 exp(-x)) by damped fixed-point iteration."""
    x = 1.0
    for _ in range(max_iter):
        nxt = 2.0 * math.exp(-2.0 * math.exp(-x))
        if abs(nxt - x) <= tol:
            return nxt
        x = 0.5 * x + 0.5 * nxt
    raise RuntimeError("fixed point did not converge")


def t_star_direct(n: int, m: int, d: int) -> float:
    """Direct-power evaluation of the first-phase length prediction."""
    base = 1.0 + n * d * (d - 1) / m
    return (1.0 - base ** (-1.0 / (d - 1))) * m / d


def fixed_coverage_product(m: int, degrees) -> Fraction:
    """Exact expected coverage of a fresh uniform-neighborhood node set."""
    miss = Fraction(1)
    for d in degrees:
        miss *= Fraction(m - d, m)
    return (1 - miss) * m

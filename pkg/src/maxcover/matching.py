"""Degree-2 reduction to maximum matching.

When every left node has exactly two neighbors, each left node is an edge
between its two right endpoints (or a self-pair, dropped).  A matching of
size lambda in that incidence graph yields lambda left nodes covering 2 new
right nodes each, so the optimum at budget k is at least 2*min(k, lambda).
The matching itself is found with a blossom-contraction search, exact on
general (non-bipartite) graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .errors import GraphFormatError
from .graph import BipartiteGraph


class SimpleGraph:
    """Undirected simple graph on vertices 0..n-1.

    Edges are deduplicated, stored with u < v, sorted.  Self-loops are
    rejected at construction.
    """

    __slots__ = ("n_vertices", "edges", "_adj")

    def __init__(self, n_vertices: int, edges):
        if n_vertices < 0:
            raise ValueError("vertex count must be non-negative")
        canon = set()
        for u, v in edges:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            canon.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "n_vertices", n_vertices)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "_adj", None)

    def __setattr__(self, name, value):
        raise AttributeError("SimpleGraph is immutable")

    def __eq__(self, other):
        return (isinstance(other, SimpleGraph)
                and self.n_vertices == other.n_vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.n_vertices, self.edges))

    def __repr__(self):
        return f"SimpleGraph(n_vertices={self.n_vertices}, edges={len(self.edges)})"

    def adjacency(self) -> list[list[int]]:
        if self._adj is None:
            adj = [[] for _ in range(self.n_vertices)]
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            object.__setattr__(self, "_adj", adj)
        return self._adj


@dataclass(frozen=True)
class MatchingResult:
    size: int
    pairs: tuple[tuple[int, int], ...]


def build_incidence_graph(graph: BipartiteGraph) -> SimpleGraph:
    """Incidence graph of a 2-left-regular bipartite graph: one vertex per
    right node, one edge per left node.  Parallel left nodes collapse."""
    if graph.regular_degree() != 2:
        raise ValueError("incidence reduction requires left degree exactly 2")
    edges = []
    for row in graph.adjacency:
        a, b = row
        edges.append((a, b))
    return SimpleGraph(graph.m_right, edges)


def max_matching(graph: SimpleGraph) -> MatchingResult:
    """Maximum-cardinality matching via blossom contraction."""
    mate = _kernels.max_matching_adj(graph.n_vertices, graph.adjacency())
    pairs = []
    for u, v in enumerate(mate):
        if v > u:
            pairs.append((u, v))
    return MatchingResult(size=len(pairs), pairs=tuple(sorted(pairs)))


def lambda_value(graph: BipartiteGraph) -> int:
    """Maximum number of pairwise right-disjoint left nodes (d=2 case)."""
    return max_matching(build_incidence_graph(graph)).size


def opt_lower_bound_d2(graph: BipartiteGraph, k: int) -> int:
    """Coverage achievable at budget k from disjoint pairs: 2*min(k, lambda)."""
    if not 0 <= k <= graph.n_left:
        raise ValueError(f"k={k} out of range [0, {graph.n_left}]")
    return 2 * min(k, lambda_value(graph))


def save_simple_graph(graph: SimpleGraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{graph.n_vertices} {len(graph.edges)}\n")
        for u, v in graph.edges:
            fh.write(f"{u} {v}\n")


def load_simple_graph(path) -> SimpleGraph:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise GraphFormatError("header must be '<n_vertices> <n_edges>'")
        try:
            n, e = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"bad header: {header!r}") from exc
        edges = []
        for i in range(e):
            line = fh.readline()
            if line == "":
                raise GraphFormatError(f"expected {e} edges, got {i}")
            ab = line.split()
            if len(ab) != 2:
                raise GraphFormatError(f"edge line {i + 1}: {line!r}")
            try:
                edges.append((int(ab[0]), int(ab[1])))
            except ValueError as exc:
                raise GraphFormatError(f"edge line {i + 1}: {line!r}") from exc
        trailing = fh.read()
        if trailing.strip():
            raise GraphFormatError("trailing content after edge list")
    try:
        return SimpleGraph(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc

"""Bipartite-graph representation, coverage evaluation, and marginal gains.

A :class:`BipartiteGraph` stores the instance as a per-left-node adjacency
list over right-node indices. Left nodes are the covering sets, right nodes
the universe; ``coverage(S)`` is the size of the neighborhood union ``N(S)``.

Ties between left nodes are broken by ascending index everywhere in this
package; the node index order is the fixed consistent order.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import GraphFormatError


class BipartiteGraph:
    """Immutable bipartite instance with ``n_left`` set nodes over a universe
    of ``m_right`` elements.

    ``adjacency[i]`` is the strictly increasing tuple of right-node indices
    adjacent to left node ``i``. Degree-0 rows are legal (they can appear in
    hand-written files); the random generators never emit them.
    """

    __slots__ = ("n_left", "m_right", "adjacency", "_csr_cache", "_masks_cache",
                 "_coverage_all_cache")

    def __init__(self, n_left: int, m_right: int,
                 adjacency: Sequence[Sequence[int]], *, validate: bool = True):
        if m_right < 1:
            raise ValueError(f"m_right must be >= 1, got {m_right}")
        if n_left < 0:
            raise ValueError(f"n_left must be >= 0, got {n_left}")
        if len(adjacency) != n_left:
            raise ValueError(
                f"adjacency has {len(adjacency)} rows, expected n_left={n_left}")
        rows = tuple(tuple(row) for row in adjacency)
        if validate:
            for i, row in enumerate(rows):
                prev = -1
                for v in row:
                    if not isinstance(v, int):
                        raise ValueError(f"node {i}: neighbor {v!r} is not an int")
                    if v <= prev:
                        raise ValueError(
                            f"node {i}: neighbors must be strictly increasing, "
                            f"got {v} after {prev}")
                    prev = v
                if prev >= m_right:
                    raise ValueError(
                        f"node {i}: neighbor {prev} out of range [0, {m_right})")
                if row and row[0] < 0:
                    raise ValueError(f"node {i}: negative neighbor {row[0]}")
        object.__setattr__(self, "n_left", n_left)
        object.__setattr__(self, "m_right", m_right)
        object.__setattr__(self, "adjacency", rows)
        object.__setattr__(self, "_csr_cache", None)
        object.__setattr__(self, "_masks_cache", None)
        object.__setattr__(self, "_coverage_all_cache", None)

    def __setattr__(self, name, value):
        raise AttributeError("BipartiteGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.n_left == other.n_left and self.m_right == other.m_right
                and self.adjacency == other.adjacency)

    def __hash__(self):
        return hash((self.n_left, self.m_right, self.adjacency))

    def __repr__(self):
        return (f"BipartiteGraph(n_left={self.n_left}, m_right={self.m_right}, "
                f"edges={sum(len(r) for r in self.adjacency)})")

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def degrees(self) -> list[int]:
        return [len(r) for r in self.adjacency]

    def max_degree(self) -> int:
        return max((len(r) for r in self.adjacency), default=0)

    def regular_degree(self) -> int | None:
        """The common left degree, or None if the graph is not left-regular."""
        if self.n_left == 0:
            return None
        d = len(self.adjacency[0])
        for row in self.adjacency:
            if len(row) != d:
                return None
        return d

    def csr(self):
        """Flattened (indptr, indices) numpy arrays for the compiled kernels."""
        if self._csr_cache is None:
            import itertools

            import numpy as np

            indptr = np.zeros(self.n_left + 1, dtype=np.int64)
            for i, row in enumerate(self.adjacency):
                indptr[i + 1] = indptr[i] + len(row)
            indices = np.fromiter(
                itertools.chain.from_iterable(self.adjacency),
                dtype=np.int32, count=int(indptr[-1]))
            object.__setattr__(self, "_csr_cache", (indptr, indices))
        return self._csr_cache

    def neighbor_masks(self) -> list[int]:
        """Per-left-node neighborhood bitmasks over R (for the exact solvers)."""
        if self._masks_cache is None:
            masks = []
            for row in self.adjacency:
                mask = 0
                for v in row:
                    mask |= 1 << v
                masks.append(mask)
            object.__setattr__(self, "_masks_cache", masks)
        return self._masks_cache

    def coverage_all(self) -> int:
        """coverage(L): number of right nodes with at least one neighbor."""
        if self._coverage_all_cache is None:
            seen = bytearray(self.m_right)
            count = 0
            for row in self.adjacency:
                for v in row:
                    if not seen[v]:
                        seen[v] = 1
                        count += 1
            object.__setattr__(self, "_coverage_all_cache", count)
        return self._coverage_all_cache


class CoverState:
    """Reusable incremental cover state over R.

    Marks use an epoch stamp so reset() is O(1); adding a node costs O(degree).
    One instance per thread; graphs themselves are safely shareable.
    """

    __slots__ = ("graph", "_stamp", "_epoch", "covered_count")

    def __init__(self, graph: BipartiteGraph):
        self.graph = graph
        self._stamp = [0] * graph.m_right
        self._epoch = 1
        self.covered_count = 0

    def reset(self) -> None:
        self._epoch += 1
        self.covered_count = 0

    def is_covered(self, v: int) -> bool:
        return self._stamp[v] == self._epoch

    def add(self, u: int) -> int:
        """Mark N(u) covered; returns the marginal gain."""
        stamp = self._stamp
        epoch = self._epoch
        gain = 0
        for v in self.graph.adjacency[u]:
            if stamp[v] != epoch:
                stamp[v] = epoch
                gain += 1
        self.covered_count += gain
        return gain

    def gain(self, u: int) -> int:
        """Marginal gain of u without mutating the state."""
        stamp = self._stamp
        epoch = self._epoch
        g = 0
        for v in self.graph.adjacency[u]:
            if stamp[v] != epoch:
                g += 1
        return g


def _check_nodes(graph: BipartiteGraph, nodes: Iterable[int]) -> list[int]:
    out = []
    seen = set()
    for u in nodes:
        if not 0 <= u < graph.n_left:
            raise ValueError(f"left index {u} out of range [0, {graph.n_left})")
        if u in seen:
            raise ValueError(f"duplicate left index {u}")
        seen.add(u)
        out.append(u)
    return out


def coverage(graph: BipartiteGraph, nodes: Iterable[int]) -> int:
    """|N(S)| for the left-node set S."""
    state = CoverState(graph)
    for u in _check_nodes(graph, nodes):
        state.add(u)
    return state.covered_count


def marginal_gain(graph: BipartiteGraph, nodes: Iterable[int], u: int) -> int:
    """|N(u) \\ N(S)|, the number of new right nodes u would add to S.

    u may already lie in S; its gain is then 0.
    """
    if not 0 <= u < graph.n_left:
        raise ValueError(f"left index {u} out of range [0, {graph.n_left})")
    state = CoverState(graph)
    for w in _check_nodes(graph, nodes):
        state.add(w)
    return state.gain(u)


def top_residual_set(graph: BipartiteGraph, nodes: Sequence[int], t: int) -> list[int]:
    """The t left nodes outside S with the largest marginal gains to S.

    Gains are all evaluated against S itself (one shot, not sequentially);
    ties break by ascending node index. Returned in that selection order.
    """
    chosen = _check_nodes(graph, nodes)
    if t < 0 or t > graph.n_left - len(chosen):
        raise ValueError(
            f"t={t} out of range [0, {graph.n_left - len(chosen)}]")
    if t == 0:
        return []
    state = CoverState(graph)
    for u in chosen:
        state.add(u)
    in_s = set(chosen)
    ranked = sorted(
        ((-state.gain(u), u) for u in range(graph.n_left) if u not in in_s))
    return [u for _, u in ranked[:t]]


def save_graph(graph: BipartiteGraph, path) -> None:
    """Write the text format: header "n m", then one sorted neighbor line per
    left node (empty line for degree 0). UTF-8, LF newlines."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{graph.n_left} {graph.m_right}\n")
        for row in graph.adjacency:
            fh.write(" ".join(map(str, row)))
            fh.write("\n")


def load_graph(path) -> BipartiteGraph:
    """Parse the text format written by :func:`save_graph`."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise GraphFormatError(f"bad header line {header!r}, expected 'n m'")
        try:
            n_left, m_right = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"non-integer header {header!r}") from exc
        adjacency = []
        for i in range(n_left):
            line = fh.readline()
            if line == "":
                raise GraphFormatError(
                    f"expected {n_left} adjacency lines, file ended at {i}")
            try:
                row = [int(tok) for tok in line.split()]
            except ValueError as exc:
                raise GraphFormatError(f"line {i + 2}: non-integer token") from exc
            adjacency.append(row)
        trailer = fh.read().strip()
        if trailer:
            raise GraphFormatError("trailing content after adjacency lines")
    try:
        return BipartiteGraph(n_left, m_right, adjacency)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc

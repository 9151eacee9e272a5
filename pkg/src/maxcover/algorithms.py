"""Greedy, AcceptReject, the hybrid algorithm, and the fixed-set baseline.

Greedy adds, at every step, the left node of maximum marginal contribution,
breaking ties by ascending node index. AcceptReject sweeps phases p from the
maximum degree down to and including 0 and accepts, in index order, every
node whose current marginal contribution is at least p (while capacity
remains). The two produce identical selection sequences on every input; the
test suite asserts this exhaustively and ``t_d_count`` relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .graph import BipartiteGraph, CoverState, top_residual_set


@dataclass(frozen=True)
class GreedyTrace:
    """Full greedy execution record.

    ``coverage_prefix[t]`` is the coverage after t+1 selections; the final
    entry equals the solution value. Gains are non-increasing and sum to the
    final coverage.
    """

    k: int
    selections: tuple[int, ...]
    gains: tuple[int, ...]
    coverage_prefix: tuple[int, ...]

    @property
    def value(self) -> int:
        return self.coverage_prefix[-1] if self.coverage_prefix else 0

    def gains_equal_to(self, d: int) -> int:
        """Number of steps whose marginal gain is exactly d."""
        return sum(1 for g in self.gains if g == d)


@dataclass(frozen=True)
class AcceptRejectTrace:
    """AcceptReject execution record.

    ``events`` lists every (phase, node, accepted) consideration in algorithm
    order when event recording is on; ``accepted`` is the selection sequence,
    ``accept_phases[i]`` the phase at which ``accepted[i]`` was taken.
    """

    k: int
    accepted: tuple[int, ...]
    accept_phases: tuple[int, ...]
    events: tuple[tuple[int, int, bool], ...] = field(default=())

    @property
    def first_phase_accepts(self) -> int:
        if not self.accept_phases:
            return 0
        top = self.accept_phases[0]
        return sum(1 for p in self.accept_phases if p == top)


def _check_k(graph: BipartiteGraph, k: int) -> None:
    if not 0 <= k <= graph.n_left:
        raise ValueError(f"k={k} out of range [0, {graph.n_left}]")


def greedy(graph: BipartiteGraph, k: int) -> GreedyTrace:
    """Greedy trace for budget k (lazy re-evaluation kernel)."""
    _check_k(graph, k)
    selections, gains = _kernels.greedy_trace(graph, k)
    prefix = []
    total = 0
    for g in gains:
        total += g
        prefix.append(total)
    return GreedyTrace(k=k, selections=tuple(selections), gains=tuple(gains),
                       coverage_prefix=tuple(prefix))


def greedy_naive(graph: BipartiteGraph, k: int) -> GreedyTrace:
    """Reference greedy: full argmax scan per step. Oracle for the kernel."""
    _check_k(graph, k)
    state = CoverState(graph)
    chosen = bytearray(graph.n_left)
    selections, gains, prefix = [], [], []
    for _ in range(k):
        best_gain = -1
        best_u = -1
        for u in range(graph.n_left):
            if chosen[u]:
                continue
            g = state.gain(u)
            if g > best_gain:
                best_gain = g
                best_u = u
        chosen[best_u] = 1
        state.add(best_u)
        selections.append(best_u)
        gains.append(best_gain)
        prefix.append(state.covered_count)
    return GreedyTrace(k=k, selections=tuple(selections), gains=tuple(gains),
                       coverage_prefix=tuple(prefix))


def accept_reject(graph: BipartiteGraph, k: int, *,
                  record_events: bool = True) -> AcceptRejectTrace:
    """AcceptReject trace for budget k.

    With ``record_events`` the phase loop runs verbatim (every consideration
    recorded, cost O(n * max_degree)); without it an equivalent lazy sweep
    runs in O(n * d) amortized. Accepted sequences are identical either way.
    """
    _check_k(graph, k)
    if record_events:
        return _accept_reject_verbatim(graph, k)
    accepted, phases = _accept_reject_lazy(graph, k)
    return AcceptRejectTrace(k=k, accepted=tuple(accepted),
                             accept_phases=tuple(phases))


def _accept_reject_verbatim(graph: BipartiteGraph, k: int) -> AcceptRejectTrace:
    n = graph.n_left
    dmax = graph.max_degree()
    state = CoverState(graph)
    taken = bytearray(n)
    accepted, phases, events = [], [], []
    for p in range(dmax, -1, -1):
        for i in range(n):
            ok = False
            if not taken[i] and len(accepted) < k and state.gain(i) >= p:
                state.add(i)
                taken[i] = 1
                accepted.append(i)
                phases.append(p)
                ok = True
            events.append((p, i, ok))
    return AcceptRejectTrace(k=k, accepted=tuple(accepted),
                             accept_phases=tuple(phases),
                             events=tuple(events))


def _accept_reject_lazy(graph: BipartiteGraph, k: int):
    # Bucket nodes by a cached gain upper bound. At phase p every unaccepted
    # node has cached gain <= p, so only bucket p needs a scan; a node whose
    # recomputed gain fell below p drops to its new bucket and is revisited
    # at exactly the phase where the verbatim loop would next accept it.
    n = graph.n_left
    dmax = graph.max_degree()
    state = CoverState(graph)
    accepted: list[int] = []
    phases: list[int] = []
    if n == 0 or k == 0:
        return accepted, phases
    pend: list[list[int]] = [[] for _ in range(dmax + 1)]
    for u in range(n):
        pend[len(graph.adjacency[u])].append(u)
    for p in range(dmax, -1, -1):
        bucket = pend[p]
        bucket.sort()
        for u in bucket:
            if len(accepted) >= k:
                return accepted, phases
            g = state.gain(u)
            if g >= p:
                state.add(u)
                accepted.append(u)
                phases.append(p)
            else:
                pend[g].append(u)
        pend[p] = []
    return accepted, phases


def t_d_count(graph: BipartiteGraph) -> int:
    """t_d: number of greedy steps (run to exhaustion) that gain the full
    degree d, on a left-regular graph.

    Computed both from the greedy gain sequence and as the first-phase accept
    count of AcceptReject; the two routes must agree.
    """
    d = graph.regular_degree()
    if d is None:
        raise ValueError("t_d is defined for left-regular graphs only")
    trace = greedy(graph, graph.n_left)
    from_gains = trace.gains_equal_to(d)
    accepted, phases = _accept_reject_lazy(graph, graph.n_left)
    from_phases = sum(1 for p in phases if p == d)
    if from_gains != from_phases:
        raise RuntimeError(
            f"t_d mismatch: {from_gains} full-gain greedy steps vs "
            f"{from_phases} first-phase accepts")
    return from_gains


def hybrid(graph: BipartiteGraph, k: int, t: int) -> list[int]:
    """Y^t: greedy for t steps, then the k-t largest residual contributors
    in one shot. Y^k is the greedy solution, Y^0 the fixed set."""
    _check_k(graph, k)
    if not 0 <= t <= k:
        raise ValueError(f"t={t} out of range [0, {k}]")
    prefix = list(greedy(graph, t).selections)
    return prefix + top_residual_set(graph, prefix, k - t)


def hybrid_sweep_values(graph: BipartiteGraph, k: int) -> list[int]:
    """coverage(Y^t) for every t in 0..k (kernel-accelerated)."""
    _check_k(graph, k)
    return _kernels.hybrid_sweep(graph, k)


def fixed_set_nodes(graph: BipartiteGraph, k: int) -> list[int]:
    """H_k: the first k nodes on a left-regular graph, otherwise the k
    largest-degree nodes (ties by ascending index)."""
    if not 0 <= k <= graph.n_left:
        raise ValueError(f"k={k} out of range [0, {graph.n_left}]")
    if graph.regular_degree() is not None:
        return list(range(k))
    ranked = sorted(range(graph.n_left),
                    key=lambda u: (-len(graph.adjacency[u]), u))
    return ranked[:k]


def fixed_set_value(graph: BipartiteGraph, k: int) -> int:
    """coverage(H_k)."""
    state = CoverState(graph)
    for u in fixed_set_nodes(graph, k):
        state.add(u)
    return state.covered_count


def sequential_gains(graph: BipartiteGraph, order) -> list[int]:
    """Marginal gain of each node of ``order`` when inserted left to right.

    With ``order = range(n)`` on a regular graph this is the fixed-set gain
    sequence |N(H_t) \\ N(H_{t-1})|.
    """
    checked = list(order)
    for u in checked:
        if not 0 <= u < graph.n_left:
            raise ValueError(f"left index {u} out of range")
    return _kernels.order_gains(graph, checked)


def trace_to_csv(trace: GreedyTrace, fh) -> None:
    """Dump a greedy trace: columns step, node, gain, coverage."""
    fh.write("step,node,gain,coverage\n")
    for i, (u, g, c) in enumerate(
            zip(trace.selections, trace.gains, trace.coverage_prefix), 1):
        fh.write(f"{i},{u},{g},{c}\n")

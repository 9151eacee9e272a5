import io
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import random_bipartite
from maxcover import algorithms as alg
from maxcover.generators import gen_bad_instance, gen_lrr, gen_ulrr
from maxcover.graph import BipartiteGraph, coverage


def test_greedy_matches_scan_oracle():
    rng = random.Random(21)
    for _ in range(200):
        g = random_bipartite(rng, n_max=15, m_max=18)
        k = rng.randrange(1, g.n_left + 1)
        trace = alg.greedy(g, k)
        sels, gains = oracles.greedy_select(oracles.adj_sets(g), k)
        assert list(trace.selections) == sels
        assert list(trace.gains) == gains


def test_greedy_matches_inlibrary_naive():
    rng = random.Random(22)
    for _ in range(100):
        g = random_bipartite(rng, n_max=40, m_max=40)
        k = rng.randrange(1, g.n_left + 1)
        fast = alg.greedy(g, k)
        naive = alg.greedy_naive(g, k)
        assert fast.selections == naive.selections
        assert fast.gains == naive.gains
        assert fast.coverage_prefix == naive.coverage_prefix


def test_greedy_trace_invariants():
    g = gen_ulrr(30, 25, 3, 7)
    trace = alg.greedy(g, 30)
    assert list(trace.gains) == sorted(trace.gains, reverse=True)
    # coverage_prefix[t] is the coverage after t+1 selections
    assert trace.coverage_prefix[0] == trace.gains[0]
    for i in range(1, len(trace.gains)):
        assert trace.coverage_prefix[i] - trace.coverage_prefix[i - 1] == \
            trace.gains[i]
    assert trace.value == coverage(g, trace.selections)
    assert trace.gains_equal_to(3) == sum(1 for x in trace.gains if x == 3)


def test_greedy_k_edges():
    g = BipartiteGraph(3, 4, [[0], [0, 1], [2, 3]])
    assert alg.greedy(g, 0).selections == ()
    assert alg.greedy(g, 0).value == 0
    full = alg.greedy(g, 3)
    assert len(full.selections) == 3  # zero-gain steps still selected
    assert full.gains == (2, 2, 0)
    with pytest.raises(ValueError):
        alg.greedy(g, 4)
    with pytest.raises(ValueError):
        alg.greedy(g, -1)


def test_accept_reject_equals_greedy_small():
    rng = random.Random(23)
    for _ in range(300):
        g = random_bipartite(rng, n_max=14, m_max=16)
        k = rng.randrange(1, g.n_left + 1)
        tr = alg.greedy(g, k)
        ar = alg.accept_reject(g, k)
        assert list(ar.accepted) == list(tr.selections)
        assert [p for p in ar.accept_phases] == list(tr.gains)


def test_accept_reject_event_log():
    g = BipartiteGraph(3, 6, [[0, 1, 2], [0, 1], [3, 4]])
    ar = alg.accept_reject(g, 2, record_events=True)
    assert ar.accepted == (0, 2)
    # phases descend; within a phase candidates appear in index order
    phases = [p for p, _, _ in ar.events]
    assert phases == sorted(phases, reverse=True)
    accepted_events = [(p, u) for p, u, acc in ar.events if acc]
    assert accepted_events == [(3, 0), (2, 2)]


def test_accept_reject_lazy_no_events_matches():
    rng = random.Random(24)
    for _ in range(50):
        g = random_bipartite(rng, n_max=30, m_max=30)
        k = rng.randrange(1, g.n_left + 1)
        a = alg.accept_reject(g, k, record_events=True)
        b = alg.accept_reject(g, k, record_events=False)
        assert a.accepted == b.accepted
        assert a.accept_phases == b.accept_phases
        assert b.events == ()


def test_t_d_count_dual_route():
    g = gen_lrr(500, 3, 31)
    t3 = alg.t_d_count(g)
    assert t3 == alg.greedy(g, 500).gains_equal_to(3)
    assert t3 == alg.accept_reject(g, 500).first_phase_accepts


def test_t_d_count_requires_regular():
    g = BipartiteGraph(2, 4, [[0, 1], [2]])
    with pytest.raises(ValueError):
        alg.t_d_count(g)


def test_hybrid_composition():
    rng = random.Random(25)
    for _ in range(100):
        g = random_bipartite(rng, n_max=14, m_max=16)
        k = rng.randrange(1, g.n_left + 1)
        t = rng.randrange(0, k + 1)
        nodes = alg.hybrid(g, k, t)
        assert len(nodes) == min(k, g.n_left)
        adj = oracles.adj_sets(g)
        greedy_part = list(alg.greedy(g, t).selections)
        assert nodes[:len(greedy_part)] == greedy_part
        rest = oracles.top_residual(adj, greedy_part,
                                    min(k, g.n_left) - len(greedy_part))
        assert nodes[len(greedy_part):] == rest


def test_hybrid_sweep_values_endpoints():
    rng = random.Random(26)
    for _ in range(60):
        g = random_bipartite(rng, n_max=16, m_max=18)
        k = rng.randrange(1, g.n_left + 1)
        vals = alg.hybrid_sweep_values(g, k)
        assert len(vals) == k + 1
        for t in range(k + 1):
            assert vals[t] == coverage(g, alg.hybrid(g, k, t))
        assert vals[0] == alg.fixed_set_value(g, k)
        assert vals[k] == alg.greedy(g, k).value
    with pytest.raises(ValueError):
        alg.hybrid_sweep_values(g, g.n_left + 1)


def test_fixed_set_nodes_regular_is_prefix():
    g = gen_lrr(20, 2, 3)
    assert alg.fixed_set_nodes(g, 7) == list(range(7))


def test_fixed_set_nodes_irregular_picks_top_degrees():
    g = BipartiteGraph(4, 6, [[0], [0, 1, 2], [3, 4], [5]])
    assert alg.fixed_set_nodes(g, 2) == [1, 2]
    assert alg.fixed_set_nodes(g, 3) == [1, 2, 0]  # degree tie: lower index


def test_sequential_gains():
    g = BipartiteGraph(3, 5, [[0, 1], [1, 2], [3, 4]])
    assert alg.sequential_gains(g, [0, 1, 2]) == [2, 1, 2]
    assert alg.sequential_gains(g, [1, 0, 2]) == [2, 1, 2]
    assert alg.sequential_gains(g, [0, 0, 1]) == [2, 0, 1]  # repeat gains 0
    with pytest.raises(ValueError):
        alg.sequential_gains(g, [0, 5])


def test_bad_instance_greedy_vs_opt_values():
    graph, _ = gen_bad_instance(3)
    assert alg.greedy(graph, 3).value == 19
    assert coverage(graph, [2, 3, 4]) == 27


def test_trace_to_csv_format():
    g = BipartiteGraph(2, 3, [[0, 1], [2]])
    buf = io.StringIO()
    alg.trace_to_csv(alg.greedy(g, 2), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "step,node,gain,coverage"
    assert lines[1] == "1,0,2,2"
    assert lines[2] == "2,1,1,3"


@st.composite
def small_graphs(draw):
    m = draw(st.integers(1, 9))
    rows = draw(st.lists(
        st.frozensets(st.integers(0, m - 1), max_size=m),
        min_size=1, max_size=9))
    return BipartiteGraph(len(rows), m, [sorted(r) for r in rows])


@given(small_graphs(), st.integers(1, 12))
@settings(max_examples=120, deadline=None)
def test_property_greedy_equals_accept_reject(g, k):
    k = min(k, g.n_left)
    tr = alg.greedy(g, k)
    ar = alg.accept_reject(g, k)
    assert list(ar.accepted) == list(tr.selections)


@given(small_graphs(), st.integers(1, 12))
@settings(max_examples=100, deadline=None)
def test_property_hybrid_contains_greedy_value(g, k):
    vals = alg.hybrid_sweep_values(g, min(k, g.n_left))
    assert vals[-1] == alg.greedy(g, min(k, g.n_left)).value
    assert all(v <= g.coverage_all() for v in vals)

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from maxcover.errors import CapacityError
from maxcover import generators as g


def test_same_seed_same_graph():
    assert g.gen_lrr(50, 3, 9) == g.gen_lrr(50, 3, 9)
    assert g.gen_ulrr(20, 35, 4, 1) == g.gen_ulrr(20, 35, 4, 1)
    assert g.gen_lrr(50, 3, 9) != g.gen_lrr(50, 3, 10)


def test_substreams_decorrelate_trials():
    seeds = {g.substream_seed(0, i) for i in range(1000)}
    assert len(seeds) == 1000
    assert g.substream_seed(0, 1) != g.substream_seed(1, 0)


def test_lrr_shape():
    graph = g.gen_lrr(40, 5, 2)
    assert graph.n_left == graph.m_right == 40
    assert graph.regular_degree() == 5
    for row in graph.adjacency:
        assert len(set(row)) == 5


def test_ulrr_shape():
    graph = g.gen_ulrr(30, 55, 7, 3)
    assert (graph.n_left, graph.m_right) == (30, 55)
    assert graph.regular_degree() == 7


def test_genr_exact_degrees():
    degrees = [3, 1, 4, 1, 5]
    graph = g.gen_genr(5, 9, degrees, 4)
    assert graph.degrees() == degrees


def test_genr_rejects_bad_degrees():
    with pytest.raises(ValueError):
        g.gen_genr(2, 5, [0, 1], 0)
    with pytest.raises(ValueError):
        g.gen_genr(2, 5, [1, 6], 0)


def test_sample_distinct_both_paths():
    rng = random.Random(5)
    small = g.sample_distinct(rng, 1000, 3)  # rejection path
    assert small == sorted(set(small)) and len(small) == 3
    dense = g.sample_distinct(rng, 10, 9)  # shuffle path
    assert dense == sorted(set(dense)) and len(dense) == 9
    assert all(0 <= v < 10 for v in dense)


def test_powerlaw_degrees_sorted_and_clamped():
    degrees = g.gen_powerlaw_degrees(500, 50, 1.5, 8)
    assert degrees == sorted(degrees, reverse=True)
    assert all(1 <= d <= 50 for d in degrees)
    with pytest.raises(ValueError):
        g.gen_powerlaw_degrees(10, 10, 1.0, 0)


def test_powerlaw_tail_tracks_ccdf():
    # P(deg >= x) = x^(-a) for the unclamped Pareto floor at integer x.
    a, n, m = 2.0, 20000, 10 ** 6
    degrees = g.gen_powerlaw_degrees(n, m, a, 123)
    for x in (2, 4, 8):
        emp = sum(1 for d in degrees if d >= x) / n
        want = x ** -a
        sigma = math.sqrt(want * (1 - want) / n)
        assert abs(emp - want) <= 5 * sigma + 1e-3


def test_bad_instance_structure():
    for k in (2, 3, 4):
        graph, note = g.gen_bad_instance(k)
        assert graph.n_left == 2 * k - 1
        assert graph.m_right == k ** k
        assert graph.regular_degree() == k ** (k - 1)
        assert note
    with pytest.raises(CapacityError):
        g.gen_bad_instance(8)


def test_degree_spec_realize():
    rng = random.Random(1)
    assert g.UniformDegrees(4).realize(3, 10, rng) == [4, 4, 4]
    assert g.ExplicitDegrees((2, 5)).realize(2, 10, rng) == [2, 5]
    with pytest.raises(ValueError):
        g.ExplicitDegrees((2, 5)).realize(3, 10, rng)
    mix = g.MixtureDegrees((1, 7), (0.5, 0.5)).realize(200, 10, rng)
    assert set(mix) <= {1, 7} and len(mix) == 200
    pl = g.PowerLawDegrees(1.5).realize(50, 20, rng)
    assert all(1 <= d <= 20 for d in pl)


def test_degree_spec_json_round_trip():
    specs = [g.UniformDegrees(3), g.ExplicitDegrees((1, 2, 3)),
             g.MixtureDegrees((1, 4), (0.25, 0.75)), g.PowerLawDegrees(2.0)]
    for spec in specs:
        assert g.degree_spec_from_json(g.degree_spec_to_json(spec)) == spec
    with pytest.raises(ValueError):
        g.degree_spec_from_json({"kind": "nope"})


def test_gen_from_spec_validation():
    with pytest.raises(ValueError):
        g.gen_from_spec("lrr", 10, 12, g.UniformDegrees(2), 0)  # unbalanced
    with pytest.raises(ValueError):
        g.gen_from_spec("lrr", 10, 10, g.PowerLawDegrees(2.0), 0)
    with pytest.raises(ValueError):
        g.gen_from_spec("martian", 10, 10, g.UniformDegrees(2), 0)
    graph = g.gen_from_spec("powerlaw", 20, 20, g.PowerLawDegrees(1.5), 3)
    assert graph.n_left == 20


def test_gen_from_spec_matches_direct_generators():
    assert g.gen_from_spec("lrr", 25, 25, g.UniformDegrees(3), 6) == \
        g.gen_lrr(25, 3, 6)
    assert g.gen_from_spec("ulrr", 25, 40, g.UniformDegrees(3), 6) == \
        g.gen_ulrr(25, 40, 3, 6)


@given(st.integers(1, 60), st.integers(0, 60), st.integers(0, 2 ** 32))
@settings(max_examples=100, deadline=None)
def test_sample_distinct_always_valid(m, d, seed):
    d = min(d, m)
    out = g.sample_distinct(random.Random(seed), m, d)
    assert len(out) == d
    assert out == sorted(set(out))
    assert all(0 <= v < m for v in out)

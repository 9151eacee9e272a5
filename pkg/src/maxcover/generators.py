"""Seeded random-instance generators and the deterministic bad instance.

Models:

* ``gen_lrr(n, d, seed)``: n left and n right nodes, every left node picks d
  distinct right neighbors uniformly at random.
* ``gen_ulrr(n, m, d, seed)``: unbalanced variant with m right nodes.
* ``gen_genr(n, m, degrees, seed)``: per-node degrees d_i.
* ``gen_powerlaw_degrees(n, m, a, seed)``: heavy-tailed degree sequence,
  floors of Pareto(a, x_min=1) samples, clamped into [1, m].
* ``gen_bad_instance(k)``: the deterministic instance on which greedy with
  index tie-breaking lands exactly on its worst-case factor.

All generators are pure functions of (params, seed): same inputs, same graph,
regardless of thread count. Trial-level parallelism derives one substream per
trial via :func:`substream_seed`.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from .errors import CapacityError
from .graph import BipartiteGraph

log = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Memory guard for gen_bad_instance: (2k-1) * k^(k-1) adjacency entries.
_BAD_INSTANCE_MAX_K = 7


def mix64(x: int) -> int:
    """SplitMix64 finalizer; bijective scramble of a 64-bit word."""
    z = x & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def substream_seed(master: int, stream_index: int) -> int:
    """Seed for substream ``stream_index`` of ``master``.

    Streams are decorrelated by the golden-ratio multiple before the mix;
    index 0 is already distinct from the master itself.
    """
    if stream_index < 0:
        raise ValueError("stream_index must be >= 0")
    return mix64((master ^ (_GOLDEN * (stream_index + 1))) & _MASK64)


def make_rng(seed: int) -> random.Random:
    """PRNG for the given 64-bit seed (same seed, same stream)."""
    return random.Random(mix64(seed))


def sample_distinct(rng: random.Random, m: int, d: int) -> list[int]:
    """A uniform d-subset of [0, m), sorted ascending.

    Dense draws (d > m/64) run a partial Fisher-Yates over a scratch array,
    sparse draws use rejection sampling into a set; both are uniform and the
    switch keeps the expected cost at O(d) on either extreme.
    """
    if not 0 <= d <= m:
        raise ValueError(f"cannot draw {d} distinct values from [0, {m})")
    if d > m // 64:
        pool = list(range(m))
        for j in range(d):
            i = rng.randrange(j, m)
            pool[j], pool[i] = pool[i], pool[j]
        return sorted(pool[:d])
    picked: set[int] = set()
    while len(picked) < d:
        picked.add(rng.randrange(m))
    return sorted(picked)


def gen_lrr(n: int, d: int, seed: int) -> BipartiteGraph:
    """Left-regular random graph on n left and n right nodes, degree d."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    return gen_ulrr(n, n, d, seed)


def gen_ulrr(n: int, m: int, d: int, seed: int) -> BipartiteGraph:
    """Left-regular random graph with n left nodes over m right nodes."""
    if not 1 <= d <= m:
        raise ValueError(f"need 1 <= d <= m, got d={d}, m={m}")
    rng = make_rng(seed)
    adjacency = [sample_distinct(rng, m, d) for _ in range(n)]
    return BipartiteGraph(n, m, adjacency, validate=False)


def gen_genr(n: int, m: int, degrees, seed: int) -> BipartiteGraph:
    """Random graph with prescribed left degrees d_i."""
    degrees = list(degrees)
    if len(degrees) != n:
        raise ValueError(f"expected {n} degrees, got {len(degrees)}")
    for i, d in enumerate(degrees):
        if not 1 <= d <= m:
            raise ValueError(f"degree d_{i}={d} out of range [1, {m}]")
    rng = make_rng(seed)
    adjacency = [sample_distinct(rng, m, d) for d in degrees]
    return BipartiteGraph(n, m, adjacency, validate=False)


def gen_powerlaw_degrees(n: int, m: int, a: float, seed: int) -> list[int]:
    """Degree sequence: floors of n i.i.d. Pareto(a, x_min=1) samples,
    clamped into [1, m], sorted descending (order statistics first)."""
    if a <= 1:
        raise ValueError(f"Pareto shape must be > 1, got {a}")
    rng = make_rng(seed)
    clamped = 0
    out = []
    for _ in range(n):
        u = 1.0 - rng.random()  # in (0, 1]; inversion X = u^(-1/a)
        x = int(u ** (-1.0 / a))
        if x > m:
            x = m
            clamped += 1
        elif x < 1:
            x = 1
        out.append(x)
    if clamped:
        log.info("power-law degrees: clamped %d of %d samples to m=%d",
                 clamped, n, m)
    out.sort(reverse=True)
    return out


def gen_bad_instance(k: int) -> tuple[BipartiteGraph, str]:
    """The worst-case instance for budget k.

    R is {1..k}^k in lexicographic order; left nodes, in index order, are
    a_1..a_{k-1} then b_1..b_k with N(a_i) = {x : x_i = 1} and
    N(b_i) = {x : x_k = i}. Every left degree is k^(k-1). With index
    tie-breaking greedy selects (a_1, .., a_{k-1}, b_1) and covers
    k^k - (k-1)^k right nodes; {b_1..b_k} covers all k^k.

    Returns the graph and a note stating the tie order the construction
    relies on.
    """
    if k < 2:
        raise ValueError(f"bad instance needs k >= 2, got {k}")
    if k > _BAD_INSTANCE_MAX_K:
        raise CapacityError(
            f"bad instance for k={k} needs {(2 * k - 1) * k ** (k - 1)} "
            f"adjacency entries; capped at k <= {_BAD_INSTANCE_MAX_K}")
    m = k ** k
    adjacency = []
    # a_i, 1-based digit position i: all x with digit i equal to 1. With the
    # lexicographic index, digit i has stride k^(k-i).
    for i in range(1, k):
        stride = k ** (k - i)
        high_block = stride * k
        row = []
        for base in range(0, m, high_block):
            row.extend(range(base, base + stride))
        adjacency.append(row)
    # b_i: all x whose last digit equals i, i.e. index = i-1 (mod k).
    for i in range(1, k + 1):
        adjacency.append(list(range(i - 1, m, k)))
    graph = BipartiteGraph(2 * k - 1, m, adjacency, validate=False)
    note = ("left order (a_1..a_{k-1}, b_1..b_k); ties must break by "
            "ascending index for greedy to select a_1..a_{k-1}, b_1")
    return graph, note


# ---------------------------------------------------------------------------
# Degree specifications (used by gen_genr callers and the experiment configs)

@dataclass(frozen=True)
class UniformDegrees:
    d: int

    def realize(self, n: int, m: int, rng: random.Random) -> list[int]:
        if not 1 <= self.d <= m:
            raise ValueError(f"degree {self.d} out of range [1, {m}]")
        return [self.d] * n


@dataclass(frozen=True)
class ExplicitDegrees:
    values: tuple[int, ...]

    def realize(self, n: int, m: int, rng: random.Random) -> list[int]:
        if len(self.values) != n:
            raise ValueError(f"expected {n} degrees, got {len(self.values)}")
        for d in self.values:
            if not 1 <= d <= m:
                raise ValueError(f"degree {d} out of range [1, {m}]")
        return list(self.values)


@dataclass(frozen=True)
class MixtureDegrees:
    values: tuple[int, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.probs):
            raise ValueError("values and probs must have equal length")
        if any(p < 0 for p in self.probs):
            raise ValueError("mixture probabilities must be >= 0")
        if abs(sum(self.probs) - 1.0) > 1e-12:
            raise ValueError(
                f"mixture probabilities sum to {sum(self.probs)!r}, not 1")

    def realize(self, n: int, m: int, rng: random.Random) -> list[int]:
        for d in self.values:
            if not 1 <= d <= m:
                raise ValueError(f"degree {d} out of range [1, {m}]")
        return rng.choices(self.values, weights=self.probs, k=n)


@dataclass(frozen=True)
class PowerLawDegrees:
    a: float

    def realize(self, n: int, m: int, rng: random.Random) -> list[int]:
        # Same sampling as gen_powerlaw_degrees, on the caller's stream.
        if self.a <= 1:
            raise ValueError(f"Pareto shape must be > 1, got {self.a}")
        out = []
        clamped = 0
        for _ in range(n):
            u = 1.0 - rng.random()
            x = int(u ** (-1.0 / self.a))
            if x > m:
                x = m
                clamped += 1
            elif x < 1:
                x = 1
            out.append(x)
        if clamped:
            log.info("power-law degrees: clamped %d of %d samples to m=%d",
                     clamped, n, m)
        out.sort(reverse=True)
        return out


DegreeSpec = UniformDegrees | ExplicitDegrees | MixtureDegrees | PowerLawDegrees


def degree_spec_to_json(spec: DegreeSpec) -> dict:
    if isinstance(spec, UniformDegrees):
        return {"kind": "uniform", "d": spec.d}
    if isinstance(spec, ExplicitDegrees):
        return {"kind": "explicit", "values": list(spec.values)}
    if isinstance(spec, MixtureDegrees):
        return {"kind": "mixture", "values": list(spec.values),
                "probs": list(spec.probs)}
    if isinstance(spec, PowerLawDegrees):
        return {"kind": "powerlaw", "a": spec.a}
    raise TypeError(f"not a DegreeSpec: {spec!r}")


def degree_spec_from_json(obj: dict) -> DegreeSpec:
    kind = obj.get("kind")
    if kind == "uniform":
        return UniformDegrees(d=int(obj["d"]))
    if kind == "explicit":
        return ExplicitDegrees(values=tuple(int(v) for v in obj["values"]))
    if kind == "mixture":
        return MixtureDegrees(values=tuple(int(v) for v in obj["values"]),
                              probs=tuple(float(p) for p in obj["probs"]))
    if kind == "powerlaw":
        return PowerLawDegrees(a=float(obj["a"]))
    raise ValueError(f"unknown degree spec kind {kind!r}")


def gen_from_spec(model: str, n: int, m: int, spec: DegreeSpec | None,
                  seed: int) -> BipartiteGraph:
    """Build a graph for an experiment trial; shared by harness and CLI."""
    if model == "lrr":
        if not isinstance(spec, UniformDegrees):
            raise ValueError("lrr requires a uniform degree spec")
        if n != m:
            raise ValueError("lrr is balanced; use ulrr for n != m")
        return gen_lrr(n, spec.d, seed)
    if model == "ulrr":
        if not isinstance(spec, UniformDegrees):
            raise ValueError("ulrr requires a uniform degree spec")
        return gen_ulrr(n, m, spec.d, seed)
    if model == "genr":
        rng = make_rng(substream_seed(seed, 0))
        degrees = spec.realize(n, m, rng)
        return gen_genr(n, m, degrees, substream_seed(seed, 1))
    if model == "powerlaw":
        if not isinstance(spec, PowerLawDegrees):
            raise ValueError("powerlaw model requires a powerlaw degree spec")
        degrees = gen_powerlaw_degrees(n, m, spec.a, substream_seed(seed, 0))
        return gen_genr(n, m, degrees, substream_seed(seed, 1))
    raise ValueError(f"unknown model {model!r}")

"""Closed-form predictions for greedy coverage on random bipartite graphs.

Everything here is deterministic arithmetic: the fluid-limit ODE and its
closed form, the predicted count of full-gain greedy steps, the
concentration radius, the fixed-point constants behind the d=2 matching
argument, worst-case factors, and the degree-regime classifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

_INV_E = math.exp(-1.0)


def predict_t_star(n: int, m: int, d: int) -> float:
    """Predicted number of greedy steps with marginal gain exactly d.

    t*_d = (1 - (1 + n*d*(d-1)/m)^(-1/(d-1))) * m/d.  Defined for d >= 2;
    the d=1 case has no full-gain phase transition to predict.
    """
    if d < 2:
        raise ValueError("t* is defined for d >= 2")
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    x = n * d * (d - 1) / m
    # (1+x)^(-1/(d-1)) in log space; -expm1 keeps precision when x is tiny
    return -math.expm1(-math.log1p(x) / (d - 1)) * m / d


def de_error_bound(n: int, m: int, d: int) -> float:
    """Concentration radius for t_d around t*_d: 3*e^(n*d^2/m)*sqrt(8n*log(2n)).

    Valid only when m >= 2*d^2 (the hypergeometric approximation regime).
    Returns inf when the exponential overflows; the bound is then vacuous
    anyway.
    """
    if m < 2 * d * d:
        raise ValueError(f"bound requires m >= 2*d^2 (m={m}, d={d})")
    if n < 1:
        raise ValueError("n must be positive")
    try:
        scale = math.exp(n * d * d / m)
    except OverflowError:
        return math.inf
    return 3.0 * scale * math.sqrt(8.0 * n * math.log(2.0 * n))


def ode_rhs(t: float, y: float, n: int, m: int, d: int) -> float:
    """Right-hand side of the greedy fluid limit: y' = (1 - (n*d/m)*y)^d."""
    return (1.0 - (n * d / m) * y) ** d


def ode_solution(t: float, n: int, m: int, d: int) -> float:
    """Closed-form solution of the fluid ODE with y(0) = 0.

    y(t) = (m/(n*d)) * (1 - (1 + n*d*(d-1)*t/m)^(-1/(d-1))) for d >= 2;
    d = 1 degenerates to the exponential limit.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return (m / n) * -math.expm1(-n * t / m)
    x = n * d * (d - 1) * t / m
    return (m / (n * d)) * -math.expm1(-math.log1p(x) / (d - 1))


def rk4(f, y0: float, t0: float, t1: float, step: float) -> float:
    """Classic fixed-step RK4 from t0 to t1.

    The step count is rounded so the grid lands exactly on t1.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    span = t1 - t0
    if span == 0:
        return y0
    steps = max(1, round(abs(span) / step))
    h = span / steps
    t, y = t0, y0
    for _ in range(steps):
        k1 = f(t, y)
        k2 = f(t + h / 2, y + h / 2 * k1)
        k3 = f(t + h / 2, y + h / 2 * k2)
        k4 = f(t + h, y + h * k3)
        y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y


def expected_fixed_coverage(m: int, degrees) -> float:
    """Expected coverage of a fixed node set with the given degrees:
    (1 - prod(1 - d_i/m)) * m.

    Degrees must be the chosen set's, largest first (matching how the fixed
    set is defined); exact under independent uniform neighbor sampling.
    """
    ds = list(degrees)
    for i in range(1, len(ds)):
        if ds[i] > ds[i - 1]:
            raise ValueError("degrees must be non-increasing")
    prod = 1.0
    for di in ds:
        if not 0 <= di <= m:
            raise ValueError(f"degree {di} out of range [0, {m}]")
        prod *= 1.0 - di / m
    return (1.0 - prod) * m


@dataclass(frozen=True)
class HypergeomCheck:
    m: int
    d: int
    max_abs_err: float
    bound: float
    ok: bool


def hypergeom_approx_check(m: int, d: int) -> HypergeomCheck:
    """Check |C(r,d)/C(m,d) - (r/m)^d| <= 2*d^2/m over all r in 0..m.

    The comparison is the workhorse behind the drift estimates; the bound
    needs m >= 2*d^2.
    """
    if m < 2 * d * d:
        raise ValueError(f"check requires m >= 2*d^2 (m={m}, d={d})")
    denom = math.comb(m, d)
    worst = 0.0
    for r in range(m + 1):
        exact = math.comb(r, d) / denom
        err = abs(exact - (r / m) ** d)
        if err > worst:
            worst = err
    bound = 2.0 * d * d / m
    return HypergeomCheck(m=m, d=d, max_abs_err=worst, bound=bound,
                          ok=worst <= bound)


@dataclass(frozen=True)
class GammaConstants:
    gamma_star_low: float
    gamma_star_high: float
    matching_fraction: float
    limit_ratio: float


def _double_map_residual(x: float) -> float:
    return x - 2.0 * math.exp(-2.0 * math.exp(-x))


@lru_cache(maxsize=1)
def gamma_constants() -> GammaConstants:
    """Fixed-point constants of x -> 2*exp(-2*exp(-x)).

    gamma_star_low is the smallest positive root, found by a coarse bracket
    scan and bisection to 1e-12 residual; gamma_star_high = 2*exp(-gamma_low).
    matching_fraction is the limiting maximum-matching density of the
    incidence graph, limit_ratio the resulting asymptotic greedy/opt ratio
    at the matching-sized budget.
    """
    lo = hi = None
    prev_x, prev_f = 0.0, _double_map_residual(0.0)
    step = 1e-3
    x = step
    while x <= 2.0 + step / 2:
        f = _double_map_residual(x)
        if prev_f <= 0.0 <= f or f <= 0.0 <= prev_f:
            lo, hi = prev_x, x
            break
        prev_x, prev_f = x, f
        x += step
    if lo is None:
        raise RuntimeError("no sign change for the fixed point in [0, 2]")
    flo = _double_map_residual(lo)
    for _ in range(80):
        mid = (lo + hi) / 2
        fmid = _double_map_residual(mid)
        if (flo <= 0.0) == (fmid <= 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    g_low = (lo + hi) / 2
    g_high = 2.0 * math.exp(-g_low)
    s = g_high + g_low + g_high * g_low
    matching_fraction = 1.0 - s / 4.0
    limit_ratio = 0.5 + (1.0 / 3.0) / (2.0 - s / 2.0)
    return GammaConstants(gamma_star_low=g_low, gamma_star_high=g_high,
                          matching_fraction=matching_fraction,
                          limit_ratio=limit_ratio)


def theorem3_k(n: int) -> int:
    """Budget at which the d=2 matching lower bound is provably near-tight:
    floor((matching_fraction - n^(-1/9)) * n), clamped at 0."""
    if n < 1:
        raise ValueError("n must be positive")
    frac = gamma_constants().matching_fraction - n ** (-1.0 / 9.0)
    return max(0, math.floor(frac * n))


def worst_case_factor(k: int) -> float:
    """Greedy guarantee at budget k: 1 - (1 - 1/k)^k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return -math.expm1(k * math.log1p(-1.0 / k)) if k > 1 else 1.0


def augmented_factor(n: int, d: int, t_d: int) -> float:
    """Improved greedy guarantee on left-regular graphs:
    1 - 1/e + (t_d/(n/d))^3 / e.  Requires t_d <= n/d."""
    if d < 1 or n < 1:
        raise ValueError("n and d must be positive")
    if t_d < 0 or t_d * d > n:
        raise ValueError(f"requires 0 <= t_d <= n/d (t_d={t_d}, n/d={n / d})")
    frac = t_d * d / n
    return 1.0 - _INV_E + frac ** 3 * _INV_E


NEAR_LINEAR = "near_linear"
CRITICAL = "critical"
SATURATED = "saturated"

GUARANTEE_ONE_MINUS_EPS = "1-eps"
GUARANTEE_CRITICAL = "1-1/e+Omega(eps^24)"


@dataclass(frozen=True)
class RegionInfo:
    region: str
    large_degree: bool
    guarantee: str
    topk_degree_sum: int


def classify_region_degrees(n: int, m: int, degrees, k: int,
                            eps: float) -> RegionInfo:
    """Classify an instance by the mass of its k largest degrees.

    near_linear when that mass is at most (eps/2)*m, saturated when it is at
    least (2/eps)*m, critical otherwise.  Inside critical, the large-degree
    flag fires when the average of the top k degrees reaches
    20^4 * max(1, (n/m)^2) / eps^8; that case keeps the 1-eps guarantee,
    the rest of critical gets the additive-improvement form.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must be in (0, 1)")
    ds = sorted(degrees, reverse=True)
    if len(ds) != n:
        raise ValueError("need one degree per left node")
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range [0, {n}]")
    top_sum = sum(ds[:k])
    if top_sum <= (eps / 2.0) * m:
        return RegionInfo(region=NEAR_LINEAR, large_degree=False,
                          guarantee=GUARANTEE_ONE_MINUS_EPS,
                          topk_degree_sum=top_sum)
    if top_sum >= (2.0 / eps) * m:
        return RegionInfo(region=SATURATED, large_degree=False,
                          guarantee=GUARANTEE_ONE_MINUS_EPS,
                          topk_degree_sum=top_sum)
    avg = top_sum / k  # k >= 1 here: k = 0 lands in near_linear above
    threshold = 20.0 ** 4 * max(1.0, (n / m) ** 2) / eps ** 8
    large = avg >= threshold
    guarantee = GUARANTEE_ONE_MINUS_EPS if large else GUARANTEE_CRITICAL
    return RegionInfo(region=CRITICAL, large_degree=large,
                      guarantee=guarantee, topk_degree_sum=top_sum)


def classify_region(graph, k: int, eps: float) -> RegionInfo:
    return classify_region_degrees(graph.n_left, graph.m_right,
                                   graph.degrees(), k, eps)


def trivial_opt_ub(graph, k: int) -> int:
    """min(reachable right mass, sum of the k largest degrees)."""
    if not 0 <= k <= graph.n_left:
        raise ValueError(f"k={k} out of range [0, {graph.n_left}]")
    ds = sorted(graph.degrees(), reverse=True)
    return min(graph.coverage_all(), sum(ds[:k]))


@dataclass(frozen=True)
class ClaimCheckReport:
    claim1_ok: bool
    claim1_min_margin: float
    claim2_ok: bool
    claim2_min_margin: float

    @property
    def ok(self) -> bool:
        return self.claim1_ok and self.claim2_ok


def claim_checks() -> ClaimCheckReport:
    """Numerically sweep the two inequalities the factor bounds lean on.

    Claim 1: (1 - e^-eps)/eps >= 1 - eps on a 1e-4 grid over (0, 1].
    Claim 2: (1 - 1/k)^k <= 1/e - 1/(4ek) for k = 1..1000 and a log grid
    up to 1e6.
    """
    m1 = math.inf
    for i in range(1, 10001):
        eps = i / 10000.0
        margin = -math.expm1(-eps) / eps - (1.0 - eps)
        if margin < m1:
            m1 = margin
    ks = set(range(1, 1001))
    g = 1000.0
    while g < 1e6:
        g *= 1.1
        ks.add(min(1000000, round(g)))
    m2 = math.inf
    for k in sorted(ks):
        lhs = (1.0 - 1.0 / k) ** k if k > 1 else 0.0
        margin = (_INV_E - _INV_E / (4.0 * k)) - lhs
        if margin < m2:
            m2 = margin
    return ClaimCheckReport(claim1_ok=m1 >= 0.0, claim1_min_margin=m1,
                            claim2_ok=m2 >= 0.0, claim2_min_margin=m2)


@dataclass(frozen=True)
class PredictionSet:
    """Everything the theory predicts about one parameterization."""

    n: int
    m: int
    d: int
    t_star: float
    delta: float | None
    delta_vacuous: bool
    k: int | None = None
    region: RegionInfo | None = None
    opt_ub: int | None = None
    greedy_lb_factor: float | None = None


def prediction_set(n: int, m: int, d: int, *, eps: float = 0.1,
                   k: int | None = None, degrees=None) -> PredictionSet:
    """Bundle the closed-form predictions for an (n, m, d) family.

    Budget-dependent fields stay None without k.  ``degrees`` overrides the
    regular degree sequence for the region and opt-bound computations.
    """
    t_star = predict_t_star(n, m, d)
    if m >= 2 * d * d:
        delta = de_error_bound(n, m, d)
        vacuous = delta >= n / d
    else:
        delta = None
        vacuous = True
    region = opt_ub = factor = None
    if k is not None:
        ds = sorted(degrees, reverse=True) if degrees is not None \
            else [d] * n
        region = classify_region_degrees(n, m, ds, k, eps)
        opt_ub = min(m, sum(ds[:k]))
        if region.guarantee == GUARANTEE_ONE_MINUS_EPS:
            factor = max(1.0 - _INV_E, 1.0 - eps)
        else:
            factor = 1.0 - _INV_E
    return PredictionSet(n=n, m=m, d=d, t_star=t_star, delta=delta,
                         delta_vacuous=vacuous, k=k, region=region,
                         opt_ub=opt_ub, greedy_lb_factor=factor)

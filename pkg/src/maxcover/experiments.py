"""Monte Carlo harness: ratio estimation, sweeps, and scripted reproductions.

Determinism contract: trial i always draws from substream i of the master
seed, and results are reduced in trial order no matter how many worker
threads ran them.  A rerun with the same config therefore produces the same
CSV body byte for byte; only the timestamp comment line differs, and
comparisons must skip '#' lines.

Every reported ratio is a ratio of means (mean algorithm value over mean
optimum value), never a mean of per-trial ratios.
"""

from __future__ import annotations

import datetime
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .algorithms import greedy, hybrid_sweep_values, t_d_count
from .errors import BudgetExceededError
from .exact import opt_branch_bound, opt_exhaustive
from .generators import DegreeSpec, ExplicitDegrees, MixtureDegrees, \
    UniformDegrees, degree_spec_from_json, degree_spec_to_json, \
    gen_bad_instance, gen_from_spec, gen_lrr, make_rng, sample_distinct, \
    substream_seed
from .graph import BipartiteGraph
from .matching import build_incidence_graph, max_matching
from .theory import de_error_bound, expected_fixed_coverage, predict_t_star, \
    trivial_opt_ub

MODELS = ("lrr", "ulrr", "genr", "powerlaw", "bad_instance")
OPT_METHODS = ("exhaustive", "branch_bound", "matching_lb", "trivial_ub",
               "none")
EXPERIMENTS = ("ratio", "sweep_k", "degree_mix", "marginals", "theorem3",
               "t_d", "chernoff", "equivalence", "hybrid_grid")


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment run, JSON-serializable for the CLI."""

    experiment: str = "ratio"
    model: str = "lrr"
    n: int = 0
    m: int | None = None
    degrees: DegreeSpec | None = None
    k: int | None = None
    k_grid: tuple[int, ...] | None = None
    n_grid: tuple[int, ...] | None = None
    a_grid: tuple[float, ...] | None = None
    k_fraction: float = 0.38
    delta: float | None = None
    trials: int = 1
    seed: int = 0
    opt_method: str = "none"
    node_budget: int | None = None
    time_budget_s: float | None = None
    threads: int = 1

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.opt_method not in OPT_METHODS:
            raise ValueError(f"unknown opt_method {self.opt_method!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.model == "bad_instance":
            if self.k is None:
                raise ValueError("bad_instance needs k")
        elif self.experiment in ("ratio", "sweep_k") and self.n < 1:
            raise ValueError("n must be >= 1")
        if self.k is not None and self.model != "bad_instance" \
                and self.n and self.k > self.n:
            raise ValueError(f"k={self.k} exceeds n={self.n}")
        if self.k_grid is not None and self.n \
                and any(k > self.n for k in self.k_grid):
            raise ValueError("k_grid entries must be <= n")

    @property
    def m_eff(self) -> int:
        return self.n if self.m is None else self.m

    def to_json_dict(self) -> dict:
        out = {"experiment": self.experiment, "model": self.model,
               "n": self.n, "m": self.m, "k": self.k,
               "k_grid": list(self.k_grid) if self.k_grid else None,
               "n_grid": list(self.n_grid) if self.n_grid else None,
               "a_grid": list(self.a_grid) if self.a_grid else None,
               "k_fraction": self.k_fraction, "delta": self.delta,
               "trials": self.trials, "seed": self.seed,
               "opt_method": self.opt_method,
               "node_budget": self.node_budget,
               "time_budget_s": self.time_budget_s, "threads": self.threads}
        if self.degrees is not None:
            out["degrees"] = degree_spec_to_json(self.degrees)
        return out

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ExperimentConfig":
        kw = dict(obj)
        deg = kw.pop("degrees", None)
        if deg is not None:
            kw["degrees"] = degree_spec_from_json(deg)
        for key in ("k_grid", "n_grid", "a_grid"):
            if kw.get(key) is not None:
                kw[key] = tuple(kw[key])
        unknown = set(kw) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**kw)


@dataclass(frozen=True)
class RatioEstimate:
    """Ratio-of-means estimate with per-mean standard errors."""

    trials: int
    mean_alg: float
    se_alg: float
    mean_opt: float | None
    se_opt: float | None
    ratio_of_means: float | None
    opt_method: str
    best_effort: bool = False
    alg_values: tuple[int, ...] | None = None
    opt_values: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.mean_opt is None:
            if self.ratio_of_means is not None:
                raise ValueError("ratio without an optimum mean")
        elif self.mean_opt > 0:
            expect = self.mean_alg / self.mean_opt
            if abs(self.ratio_of_means - expect) > 1e-12 * max(1.0, expect):
                raise ValueError("ratio_of_means must equal mean_alg/mean_opt")

    @property
    def ratio_se(self) -> float | None:
        """First-order (delta method) standard error of the ratio."""
        if self.ratio_of_means is None or self.mean_opt == 0 \
                or self.mean_alg == 0:
            return None
        rel = (self.se_alg / self.mean_alg) ** 2 \
            + (self.se_opt / self.mean_opt) ** 2
        return abs(self.ratio_of_means) * math.sqrt(rel)


def _mean_se(values) -> tuple[float, float]:
    t = len(values)
    mean = sum(values) / t
    if t < 2:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (t - 1)
    return mean, math.sqrt(var / t)


def _make_graph(config: ExperimentConfig, trial: int) -> BipartiteGraph:
    if config.model == "bad_instance":
        graph, _ = gen_bad_instance(config.k)
        return graph
    return gen_from_spec(config.model, config.n, config.m_eff,
                         config.degrees, substream_seed(config.seed, trial))


def _opt_value(graph: BipartiteGraph, k: int, method: str,
               node_budget, time_budget_s, warm_start=None):
    """(value, best_effort) under the named opt method or proxy bound."""
    if method == "exhaustive":
        return opt_exhaustive(graph, k).value, False
    if method == "branch_bound":
        r = opt_branch_bound(graph, k, warm_start=warm_start,
                             node_budget=node_budget,
                             time_budget_s=time_budget_s)
        return r.value, r.best_effort
    if method == "matching_lb":
        from .matching import opt_lower_bound_d2

        return opt_lower_bound_d2(graph, k), False
    if method == "trivial_ub":
        return trivial_opt_ub(graph, k), False
    if method == "none":
        return None, False
    raise ValueError(f"unknown opt_method {method!r}")


def _run_trials(trials: int, threads: int, fn):
    """Run fn(trial) for each index, reducing in index order."""
    if threads <= 1:
        return [fn(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def estimate_ratio(config: ExperimentConfig, *,
                   keep_values: bool = False) -> RatioEstimate:
    """Greedy value vs the configured optimum over config.trials graphs."""
    if config.k is None:
        raise ValueError("estimate_ratio needs config.k")
    k = config.k

    def one(trial: int):
        graph = _make_graph(config, trial)
        kk = min(k, graph.n_left)
        alg = greedy(graph, kk).value
        opt, be = _opt_value(graph, kk, config.opt_method,
                             config.node_budget, config.time_budget_s)
        return alg, opt, be

    rows = _run_trials(config.trials, config.threads, one)
    alg_values = tuple(r[0] for r in rows)
    mean_alg, se_alg = _mean_se(alg_values)
    if config.opt_method == "none":
        return RatioEstimate(trials=config.trials, mean_alg=mean_alg,
                             se_alg=se_alg, mean_opt=None, se_opt=None,
                             ratio_of_means=None, opt_method="none",
                             alg_values=alg_values if keep_values else None)
    opt_values = tuple(r[1] for r in rows)
    mean_opt, se_opt = _mean_se(opt_values)
    ratio = mean_alg / mean_opt if mean_opt else None
    return RatioEstimate(trials=config.trials, mean_alg=mean_alg,
                         se_alg=se_alg, mean_opt=mean_opt, se_opt=se_opt,
                         ratio_of_means=ratio, opt_method=config.opt_method,
                         best_effort=any(r[2] for r in rows),
                         alg_values=alg_values if keep_values else None,
                         opt_values=opt_values if keep_values else None)


@dataclass(frozen=True)
class SweepResult:
    k_grid: tuple[int, ...]
    estimates: tuple[RatioEstimate, ...]
    argmin_k: int | None

    def min_ratio(self) -> float | None:
        ratios = [e.ratio_of_means for e in self.estimates
                  if e.ratio_of_means is not None]
        return min(ratios) if ratios else None


def sweep_k(config: ExperimentConfig) -> SweepResult:
    """estimate_ratio across a k grid with shared graphs per trial.

    Greedy prefix values come from a single run at max(k); branch-and-bound
    warm-starts each k from the previous witness.  Once an exact optimum
    saturates at the graph's reachable mass, larger budgets reuse it.
    """
    if not config.k_grid:
        raise ValueError("sweep_k needs config.k_grid")
    grid = tuple(sorted(set(config.k_grid)))
    kmax = grid[-1]

    def one(trial: int):
        graph = _make_graph(config, trial)
        kmax_eff = min(kmax, graph.n_left)
        trace = greedy(graph, kmax_eff)
        cap = graph.coverage_all()
        out = []
        warm = None
        saturated_opt = None
        be_any = False
        for k in grid:
            kk = min(k, graph.n_left)
            alg = trace.coverage_prefix[kk - 1] if kk else 0
            if config.opt_method in ("exhaustive", "branch_bound") \
                    and saturated_opt is not None:
                opt, be = saturated_opt, False
            elif config.opt_method == "branch_bound":
                r = opt_branch_bound(graph, kk, warm_start=warm,
                                     node_budget=config.node_budget,
                                     time_budget_s=config.time_budget_s)
                warm = r.witness
                opt, be = r.value, r.best_effort
                if not be and opt == cap:
                    saturated_opt = opt
            else:
                opt, be = _opt_value(graph, kk, config.opt_method,
                                     config.node_budget,
                                     config.time_budget_s)
                if config.opt_method == "exhaustive" and opt == cap:
                    saturated_opt = opt
            be_any = be_any or be
            out.append((alg, opt, be))
        return out

    per_trial = _run_trials(config.trials, config.threads, one)
    estimates = []
    for j, k in enumerate(grid):
        alg_values = tuple(row[j][0] for row in per_trial)
        mean_alg, se_alg = _mean_se(alg_values)
        if config.opt_method == "none":
            estimates.append(RatioEstimate(
                trials=config.trials, mean_alg=mean_alg, se_alg=se_alg,
                mean_opt=None, se_opt=None, ratio_of_means=None,
                opt_method="none"))
            continue
        opt_values = tuple(row[j][1] for row in per_trial)
        mean_opt, se_opt = _mean_se(opt_values)
        estimates.append(RatioEstimate(
            trials=config.trials, mean_alg=mean_alg, se_alg=se_alg,
            mean_opt=mean_opt, se_opt=se_opt,
            ratio_of_means=mean_alg / mean_opt if mean_opt else None,
            opt_method=config.opt_method,
            best_effort=any(row[j][2] for row in per_trial)))
    argmin = None
    best = None
    for k, est in zip(grid, estimates):
        r = est.ratio_of_means
        if r is not None and (best is None or r < best):
            best, argmin = r, k
    return SweepResult(k_grid=grid, estimates=tuple(estimates),
                       argmin_k=argmin)


# ------------------------------------------------------------------ CSV

def _fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(path, experiment: str, header, rows, *, config=None) -> None:
    """Write an experiment CSV.

    The first line is a '#' comment carrying the experiment name, config and
    timestamp; reruns differ only there, so byte comparisons must strip
    comment lines.
    """
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    desc = ""
    if config is not None:
        desc = " config=" + json.dumps(config.to_json_dict(),
                                       separators=(",", ":"), sort_keys=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {experiment}{desc} timestamp={stamp}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def read_csv_body(path) -> str:
    """CSV content minus comment lines; the unit of byte comparison."""
    with open(path, encoding="utf-8") as fh:
        return "".join(line for line in fh if not line.startswith("#"))


# ------------------------------------------------- figure reproductions

DEGREE_MIX_VALUES = (1, 4, 7)


def degree_mix_spec(a: float) -> MixtureDegrees:
    """Degrees from {1, 4, 7} with probabilities a/2, 1-a, a/2 (mean 4)."""
    if not 0.0 <= a <= 1.0:
        raise ValueError("a must be in [0, 1]")
    return MixtureDegrees(values=DEGREE_MIX_VALUES,
                          probs=(a / 2.0, 1.0 - a, a / 2.0))


@dataclass(frozen=True)
class DegreeMixRow:
    a: float
    min_ratio: float
    se: float
    argmin_k: int
    best_effort: bool


def reproduce_degree_mix(n: int = 100, m: int = 100,
                         a_grid=(0.0, 0.25, 0.5, 0.75, 1.0),
                         trials: int = 50, seed: int = 0, *,
                         k_grid=None, node_budget: int | None = 2_000_000,
                         threads: int = 1,
                         csv_path=None) -> list[DegreeMixRow]:
    """Min-over-k ratio for the 1/4/7 degree mixture, one row per a.

    Budget overruns surface in the best_effort column; the optimum is never
    silently replaced by a weaker proxy.
    """
    grid = tuple(k_grid) if k_grid is not None else tuple(range(1, n + 1))
    rows = []
    for idx, a in enumerate(a_grid):
        config = ExperimentConfig(
            experiment="sweep_k", model="genr", n=n, m=m,
            degrees=degree_mix_spec(a), k_grid=grid, trials=trials,
            seed=substream_seed(seed, idx), opt_method="branch_bound",
            node_budget=node_budget, threads=threads)
        sweep = sweep_k(config)
        best_k, best_est = None, None
        for k, est in zip(sweep.k_grid, sweep.estimates):
            if best_est is None \
                    or est.ratio_of_means < best_est.ratio_of_means:
                best_k, best_est = k, est
        rows.append(DegreeMixRow(
            a=a, min_ratio=best_est.ratio_of_means,
            se=best_est.ratio_se or 0.0, argmin_k=best_k,
            best_effort=any(e.best_effort for e in sweep.estimates)))
    if csv_path is not None:
        write_csv(csv_path, "degree_mix",
                  ("a", "min_ratio", "se", "argmin_k", "best_effort"),
                  [(r.a, r.min_ratio, r.se, r.argmin_k, r.best_effort)
                   for r in rows])
    return rows


@dataclass(frozen=True)
class MarginalsResult:
    n: int
    d: int
    trials: int
    greedy_mean: tuple[float, ...]     # index t-1: mean gain of step t
    fixed_mean: tuple[float, ...]
    cum_diff_se: tuple[float, ...]     # SE of cumulative greedy-fixed gap
    crossover_t: int | None

    def cumulative_gap(self, t: int) -> float:
        return sum(self.greedy_mean[:t]) - sum(self.fixed_mean[:t])


def reproduce_marginals(n: int = 100, m: int = 100, d: int = 6,
                        trials: int = 200, seed: int = 0, *,
                        threads: int = 1,
                        csv_path=None) -> MarginalsResult:
    """Mean per-step gains of greedy vs the fixed prefix, t = 1..n.

    The crossover is the first step where the fixed set's mean gain exceeds
    greedy's.  Both start at exactly d.
    """
    from .algorithms import sequential_gains

    def one(trial: int):
        graph = gen_from_spec("lrr", n, m, UniformDegrees(d),
                              substream_seed(seed, trial))
        g_gains = greedy(graph, n).gains
        f_gains = sequential_gains(graph, range(n))
        return g_gains, f_gains

    per_trial = _run_trials(trials, threads, one)
    greedy_mean, fixed_mean, cum_se = [], [], []
    cum_diffs = [0.0] * trials
    for t in range(n):
        g_col = [row[0][t] for row in per_trial]
        f_col = [row[1][t] for row in per_trial]
        greedy_mean.append(sum(g_col) / trials)
        fixed_mean.append(sum(f_col) / trials)
        for i in range(trials):
            cum_diffs[i] += per_trial[i][0][t] - per_trial[i][1][t]
        _, se = _mean_se(cum_diffs)
        cum_se.append(se)
    crossover = None
    for t in range(n):
        if fixed_mean[t] > greedy_mean[t]:
            crossover = t + 1
            break
    result = MarginalsResult(n=n, d=d, trials=trials,
                             greedy_mean=tuple(greedy_mean),
                             fixed_mean=tuple(fixed_mean),
                             cum_diff_se=tuple(cum_se),
                             crossover_t=crossover)
    if csv_path is not None:
        write_csv(csv_path, "marginals",
                  ("t", "greedy_mean_gain", "fixed_mean_gain"),
                  [(t + 1, greedy_mean[t], fixed_mean[t])
                   for t in range(n)])
    return result


@dataclass(frozen=True)
class Theorem3Row:
    n: int
    k: int
    mean_greedy: float
    mean_matching_lb: float    # mean of 2*min(k, lambda)
    mean_t2: float
    mean_lambda: float
    frac_lambda_ge_k: float
    ratio_ub: float            # mean_greedy / mean_matching_lb


def theorem3_experiment(n_grid, k_fraction: float = 0.38, trials: int = 10,
                        seed: int = 0, *, threads: int = 1,
                        csv_path=None) -> list[Theorem3Row]:
    """d=2 budget-at-the-matching-size experiment, one row per n.

    Greedy is compared against the disjoint-pair lower bound 2*min(k,
    lambda), an optimum proxy that upper-bounds the true ratio.
    """
    rows = []
    for idx, n in enumerate(n_grid):
        k = math.floor(k_fraction * n)
        master = substream_seed(seed, idx)

        def one(trial: int, n=n, k=k, master=master):
            graph = gen_lrr(n, 2, substream_seed(master, trial))
            gval = greedy(graph, k).value
            lam = max_matching(build_incidence_graph(graph)).size
            t2 = sum(1 for g in greedy(graph, n).gains if g == 2)
            return gval, lam, t2

        per_trial = _run_trials(trials, threads, one)
        mean_greedy = sum(r[0] for r in per_trial) / trials
        mean_lb = sum(2 * min(k, r[1]) for r in per_trial) / trials
        mean_lambda = sum(r[1] for r in per_trial) / trials
        mean_t2 = sum(r[2] for r in per_trial) / trials
        frac = sum(1 for r in per_trial if r[1] >= k) / trials
        rows.append(Theorem3Row(
            n=n, k=k, mean_greedy=mean_greedy, mean_matching_lb=mean_lb,
            mean_t2=mean_t2, mean_lambda=mean_lambda, frac_lambda_ge_k=frac,
            ratio_ub=mean_greedy / mean_lb))
    if csv_path is not None:
        write_csv(csv_path, "theorem3",
                  ("n", "k", "mean_greedy", "mean_matching_lb", "mean_t2",
                   "mean_lambda", "frac_lambda_ge_k", "ratio_ub"),
                  [(r.n, r.k, r.mean_greedy, r.mean_matching_lb, r.mean_t2,
                    r.mean_lambda, r.frac_lambda_ge_k, r.ratio_ub)
                   for r in rows])
    return rows


@dataclass(frozen=True)
class TdSummary:
    n: int
    d: int
    trials: int
    values: tuple[int, ...]
    mean: float
    sd: float
    t_star: float
    max_abs_dev: float
    delta: float
    all_within_delta: bool


def t_d_concentration(n: int, d: int, trials: int, seed: int, *,
                      threads: int = 1, csv_path=None) -> TdSummary:
    """Empirical distribution of t_d on balanced left-regular graphs.

    Each trial computes t_d by both its definitions (greedy gain count and
    first-phase accept count); a disagreement raises.
    """
    if d * d * 2 > n:
        raise ValueError(f"requires d <= sqrt(n/2) (n={n}, d={d})")

    def one(trial: int) -> int:
        graph = gen_lrr(n, d, substream_seed(seed, trial))
        return t_d_count(graph)

    values = tuple(_run_trials(trials, threads, one))
    mean, se = _mean_se(values)
    sd = se * math.sqrt(trials)
    t_star = predict_t_star(n, n, d)
    max_dev = max(abs(v - t_star) for v in values)
    delta = de_error_bound(n, n, d)
    summary = TdSummary(n=n, d=d, trials=trials, values=values, mean=mean,
                        sd=sd, t_star=t_star, max_abs_dev=max_dev,
                        delta=delta, all_within_delta=max_dev <= delta)
    if csv_path is not None:
        write_csv(csv_path, "t_d", ("trial", "t_d"),
                  list(enumerate(values)))
    return summary


@dataclass(frozen=True)
class ChernoffReport:
    n: int
    d: int
    k: int
    delta: float
    trials: int
    analytic_mean: float
    empirical_mean: float
    exceed_freq: float
    bound: float
    slack_sigma: float
    ok: bool


def chernoff_check(n: int, d: int, k: int, delta: float, trials: int,
                   seed: int, *, threads: int = 1) -> ChernoffReport:
    """Tail check for the fixed-set coverage against the Chernoff form
    Pr[Y >= (1+delta)E[Y]] <= exp(-(delta^2/3) E[Y]).

    Only the k fixed rows are sampled per trial; the draw is exactly the
    first-k-rows prefix of the full graph generator on the same substream.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must be in (0, 1)")
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range [1, {n}]")
    analytic = expected_fixed_coverage(n, [d] * k)
    threshold = (1.0 + delta) * analytic

    def one(trial: int) -> int:
        rng = make_rng(substream_seed(seed, trial))
        covered = set()
        for _ in range(k):
            covered.update(sample_distinct(rng, n, d))
        return len(covered)

    values = _run_trials(trials, threads, one)
    empirical = sum(values) / trials
    exceed = sum(1 for v in values if v >= threshold) / trials
    bound = math.exp(-(delta * delta / 3.0) * analytic)
    sigma = math.sqrt(max(bound * (1.0 - bound), 1e-300) / trials)
    return ChernoffReport(n=n, d=d, k=k, delta=delta, trials=trials,
                          analytic_mean=analytic, empirical_mean=empirical,
                          exceed_freq=exceed, bound=bound, slack_sigma=sigma,
                          ok=exceed <= bound + 3.0 * sigma)


# ----------------------------------------- full-scale harnesses

@dataclass(frozen=True)
class EquivalenceReport:
    trials: int
    mismatches: int


def equivalence_scan(trials: int = 1000, seed: int = 0, *, max_n: int = 200,
                     threads: int = 1, csv_path=None) -> EquivalenceReport:
    """Greedy vs AcceptReject selection sequences over a model mix.

    Models rotate lrr/ulrr/genr; every trial graph is checked at each
    budget in {1, n/4, n} (deduplicated for tiny n).  Every tenth trial
    also runs the event-recording AcceptReject path and cross-checks it
    against the lazy one.
    """
    from .algorithms import accept_reject

    def one(trial: int):
        rng = make_rng(substream_seed(seed, trial))
        model = ("lrr", "ulrr", "genr")[trial % 3]
        n = rng.randrange(2, max_n + 1)
        if model == "lrr":
            m = n
        else:
            m = rng.randrange(1, 2 * n + 1)
        if model == "genr":
            degrees = tuple(rng.randrange(1, min(m, 10) + 1)
                            for _ in range(n))
            graph = gen_from_spec("genr", n, m, ExplicitDegrees(degrees),
                                  substream_seed(seed, trial) ^ 1)
        else:
            d = rng.randrange(1, min(m, 8) + 1)
            graph = gen_from_spec(model, n, m, UniformDegrees(d),
                                  substream_seed(seed, trial) ^ 1)
        out = []
        for k in dict.fromkeys((1, max(1, n // 4), n)):
            tr = greedy(graph, k)
            ar = accept_reject(graph, k, record_events=False)
            equal = tr.selections == ar.accepted
            if trial % 10 == 0:
                ev = accept_reject(graph, k, record_events=True)
                equal = equal and ev.accepted == ar.accepted
            out.append((model, n, m, k, tr.value, equal))
        return out

    per_trial = _run_trials(trials, threads, one)
    mismatches = sum(1 for rows in per_trial for r in rows if not r[5])
    if csv_path is not None:
        write_csv(csv_path, "equivalence",
                  ("trial", "model", "n", "m", "k", "greedy_value", "equal"),
                  [(i, r[0], r[1], r[2], r[3], r[4], r[5])
                   for i, rows in enumerate(per_trial) for r in rows])
    return EquivalenceReport(trials=trials, mismatches=mismatches)


@dataclass(frozen=True)
class HybridCell:
    n: int
    d: int
    k: int
    trials: int
    mean_by_t: tuple[float, ...]       # coverage(Y^t), t = 0..k
    se_by_t: tuple[float, ...]
    step_diff_mean: tuple[float, ...]  # Y^{t+1} - Y^t, paired over trials
    step_diff_se: tuple[float, ...]
    mean_fixed: float                  # = mean_by_t[0]
    mean_greedy: float                 # = mean_by_t[k]
    expected_fixed: float              # product-formula prediction
    mean_opt_ub: float                 # mean trivial upper bound
    ratio_vs_ub: float


def hybrid_grid_cell(n: int, d: int, k: int, trials: int, seed: int, *,
                     threads: int = 1) -> HybridCell:
    """One (n, d, k) cell of the hybrid interpolation experiment."""

    def one(trial: int):
        graph = gen_lrr(n, d, substream_seed(seed, trial))
        values = hybrid_sweep_values(graph, k)
        return values, trivial_opt_ub(graph, k)

    per_trial = _run_trials(trials, threads, one)
    means, ses, dmeans, dses = [], [], [], []
    for t in range(k + 1):
        col = [row[0][t] for row in per_trial]
        mean, se = _mean_se(col)
        means.append(mean)
        ses.append(se)
        if t < k:
            diffs = [row[0][t + 1] - row[0][t] for row in per_trial]
            dm, dse = _mean_se(diffs)
            dmeans.append(dm)
            dses.append(dse)
    mean_ub, _ = _mean_se([row[1] for row in per_trial])
    return HybridCell(n=n, d=d, k=k, trials=trials,
                      mean_by_t=tuple(means), se_by_t=tuple(ses),
                      step_diff_mean=tuple(dmeans),
                      step_diff_se=tuple(dses),
                      mean_fixed=means[0], mean_greedy=means[k],
                      expected_fixed=expected_fixed_coverage(n, [d] * k),
                      mean_opt_ub=mean_ub,
                      ratio_vs_ub=means[k] / mean_ub)


def hybrid_grid(n_values=(50, 100), d_values=(3, 6),
                k_factors=(0.5, 1.0, 2.0), trials: int = 2000,
                seed: int = 0, *, threads: int = 1,
                csv_path=None) -> list[HybridCell]:
    """Hybrid interpolation over a small (n, d, k) grid of balanced
    left-regular instances; k values are n/(2d), n/d, 2n/d."""
    cells = []
    idx = 0
    for n in n_values:
        for d in d_values:
            for f in k_factors:
                k = int(f * n / d)
                if not 1 <= k <= n:
                    raise ValueError(f"k factor {f} gives k={k} outside "
                                     f"[1, {n}]")
                cells.append((n, d, k, substream_seed(seed, idx)))
                idx += 1
    out = [hybrid_grid_cell(n, d, k, trials, s, threads=threads)
           for n, d, k, s in cells]
    if csv_path is not None:
        rows = []
        for c in out:
            for t in range(c.k + 1):
                rows.append((c.n, c.d, c.k, t, c.mean_by_t[t], c.se_by_t[t]))
        write_csv(csv_path, "hybrid_grid",
                  ("n", "d", "k", "t", "mean_coverage", "se"), rows)
    return out


# ------------------------------------------------------------ dispatch

def run_experiment(config: ExperimentConfig, csv_path) -> bool:
    """Run the configured experiment, writing its CSV.

    Returns True when every solver call completed within budget, False if
    any cell is best-effort.
    """
    ex = config.experiment
    if ex == "ratio":
        est = estimate_ratio(config)
        write_csv(csv_path, "ratio",
                  ("trials", "mean_alg", "se_alg", "mean_opt", "se_opt",
                   "ratio_of_means", "opt_method", "best_effort"),
                  [(est.trials, est.mean_alg, est.se_alg,
                    "" if est.mean_opt is None else est.mean_opt,
                    "" if est.se_opt is None else est.se_opt,
                    "" if est.ratio_of_means is None else est.ratio_of_means,
                    est.opt_method, est.best_effort)], config=config)
        return not est.best_effort
    if ex == "sweep_k":
        sweep = sweep_k(config)
        rows = [(k, e.trials, e.mean_alg, e.se_alg,
                 "" if e.mean_opt is None else e.mean_opt,
                 "" if e.se_opt is None else e.se_opt,
                 "" if e.ratio_of_means is None else e.ratio_of_means,
                 e.opt_method, e.best_effort)
                for k, e in zip(sweep.k_grid, sweep.estimates)]
        write_csv(csv_path, "sweep_k",
                  ("k", "trials", "mean_alg", "se_alg", "mean_opt", "se_opt",
                   "ratio_of_means", "opt_method", "best_effort"),
                  rows, config=config)
        return not any(e.best_effort for e in sweep.estimates)
    if ex == "degree_mix":
        rows = reproduce_degree_mix(
            n=config.n or 100, m=config.m_eff or 100,
            a_grid=config.a_grid or (0.0, 0.25, 0.5, 0.75, 1.0),
            trials=config.trials, seed=config.seed, k_grid=config.k_grid,
            node_budget=config.node_budget, threads=config.threads,
            csv_path=csv_path)
        return not any(r.best_effort for r in rows)
    if ex == "marginals":
        spec = config.degrees
        d = spec.d if isinstance(spec, UniformDegrees) else 6
        reproduce_marginals(n=config.n or 100, m=config.m_eff or 100, d=d,
                            trials=config.trials, seed=config.seed,
                            threads=config.threads, csv_path=csv_path)
        return True
    if ex == "theorem3":
        if not config.n_grid:
            raise ValueError("theorem3 needs n_grid")
        theorem3_experiment(config.n_grid, config.k_fraction,
                            config.trials, config.seed,
                            threads=config.threads, csv_path=csv_path)
        return True
    if ex == "t_d":
        spec = config.degrees
        if not isinstance(spec, UniformDegrees):
            raise ValueError("t_d needs a uniform degree spec")
        t_d_concentration(config.n, spec.d, config.trials, config.seed,
                          threads=config.threads, csv_path=csv_path)
        return True
    if ex == "chernoff":
        spec = config.degrees
        if not isinstance(spec, UniformDegrees) or config.k is None \
                or config.delta is None:
            raise ValueError("chernoff needs a uniform degree spec, k, delta")
        rep = chernoff_check(config.n, spec.d, config.k, config.delta,
                             config.trials, config.seed,
                             threads=config.threads)
        write_csv(csv_path, "chernoff",
                  ("n", "d", "k", "delta", "trials", "analytic_mean",
                   "empirical_mean", "exceed_freq", "bound", "ok"),
                  [(rep.n, rep.d, rep.k, rep.delta, rep.trials,
                    rep.analytic_mean, rep.empirical_mean, rep.exceed_freq,
                    rep.bound, rep.ok)], config=config)
        return True
    if ex == "equivalence":
        rep = equivalence_scan(trials=config.trials, seed=config.seed,
                               max_n=config.n or 200,
                               threads=config.threads, csv_path=csv_path)
        if rep.mismatches:
            raise BudgetExceededError(
                f"{rep.mismatches} greedy/accept-reject mismatches")
        return True
    if ex == "hybrid_grid":
        hybrid_grid(trials=config.trials, seed=config.seed,
                    threads=config.threads, csv_path=csv_path)
        return True
    raise ValueError(f"unknown experiment {ex!r}")

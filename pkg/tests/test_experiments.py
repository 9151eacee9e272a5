import json
import math
import statistics

import pytest

from maxcover import experiments as ex
from maxcover.errors import BudgetExceededError
from maxcover.generators import UniformDegrees


def cfg(**kw):
    base = dict(experiment="ratio", model="lrr", n=20, m=20,
                degrees=UniformDegrees(3), k=5, trials=4, seed=0,
                opt_method="exhaustive")
    base.update(kw)
    return ex.ExperimentConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        cfg(experiment="warp_drive")
    with pytest.raises(ValueError):
        cfg(trials=0)
    with pytest.raises(ValueError):
        cfg(opt_method="oracle")
    with pytest.raises(ValueError):
        cfg(model="tripartite")


def test_config_json_round_trip():
    c = cfg(k_grid=(1, 2, 5), opt_method="branch_bound", node_budget=100)
    back = ex.ExperimentConfig.from_json_dict(c.to_json_dict())
    assert back == c
    # through an actual JSON string too
    again = ex.ExperimentConfig.from_json_dict(
        json.loads(json.dumps(c.to_json_dict())))
    assert again == c


def test_mean_se_matches_statistics_module():
    values = [3, 1, 4, 1, 5, 9, 2, 6]
    mean, se = ex._mean_se(values)
    assert mean == pytest.approx(statistics.fmean(values))
    assert se == pytest.approx(
        statistics.stdev(values) / math.sqrt(len(values)))
    mean1, se1 = ex._mean_se([7])
    assert (mean1, se1) == (7.0, 0.0)


def test_ratio_estimate_is_ratio_of_means():
    est = ex.RatioEstimate(trials=2, mean_alg=3.0, se_alg=0.0, mean_opt=4.0,
                           se_opt=0.0, ratio_of_means=0.75,
                           opt_method="exhaustive")
    assert est.ratio_of_means == 0.75
    with pytest.raises(ValueError):
        ex.RatioEstimate(trials=2, mean_alg=3.0, se_alg=0.0, mean_opt=4.0,
                         se_opt=0.0, ratio_of_means=0.8,
                         opt_method="exhaustive")


def test_estimate_ratio_bad_instance_exact():
    c = ex.ExperimentConfig(experiment="ratio", model="bad_instance", k=3,
                            trials=1, seed=0, opt_method="exhaustive")
    est = ex.estimate_ratio(c)
    assert est.mean_alg == 19.0
    assert est.mean_opt == 27.0
    assert est.ratio_of_means == pytest.approx(19 / 27, abs=0)
    assert est.se_alg == 0.0


def test_estimate_ratio_deterministic():
    c = cfg(trials=6, opt_method="branch_bound")
    assert ex.estimate_ratio(c) == ex.estimate_ratio(c)


def test_estimate_ratio_threads_do_not_change_result():
    a = ex.estimate_ratio(cfg(trials=8))
    b = ex.estimate_ratio(cfg(trials=8, threads=4))
    assert (a.mean_alg, a.mean_opt, a.ratio_of_means) == \
        (b.mean_alg, b.mean_opt, b.ratio_of_means)


def test_estimate_ratio_in_guarantee_band():
    c = ex.ExperimentConfig(experiment="ratio", model="lrr", n=30, m=30,
                            degrees=UniformDegrees(3), k=10, trials=5,
                            seed=2, opt_method="branch_bound")
    est = ex.estimate_ratio(c)
    assert 1 - 1 / math.e <= est.ratio_of_means <= 1.0


def test_estimate_ratio_matching_lb_gives_upper_ratio():
    c = ex.ExperimentConfig(experiment="ratio", model="lrr", n=24, m=24,
                            degrees=UniformDegrees(2), k=9, trials=4,
                            seed=3, opt_method="matching_lb")
    est = ex.estimate_ratio(c)
    # the denominator is only a lower bound on opt here
    assert est.ratio_of_means is not None
    assert est.opt_method == "matching_lb"


def test_estimate_ratio_none_method():
    est = ex.estimate_ratio(cfg(opt_method="none"))
    assert est.mean_opt is None
    assert est.ratio_of_means is None


def test_sweep_k_endpoints_are_exact():
    c = cfg(model="lrr", n=12, m=12, degrees=UniformDegrees(3),
            k=None, k_grid=tuple(range(1, 13)), trials=3,
            opt_method="exhaustive", experiment="sweep_k")
    sweep = ex.sweep_k(c)
    assert sweep.estimates[0].ratio_of_means == pytest.approx(1.0)
    assert sweep.estimates[-1].ratio_of_means == pytest.approx(1.0)
    assert min(e.ratio_of_means for e in sweep.estimates) == \
        sweep.estimates[sweep.k_grid.index(sweep.argmin_k)].ratio_of_means


def test_write_and_read_csv(tmp_path):
    p = tmp_path / "out.csv"
    ex.write_csv(p, "demo", ("x", "y"), [(1, 2.5), (3, 0.1)])
    text = p.read_text()
    assert text.startswith("# demo timestamp=")
    assert ex.read_csv_body(p) == "x,y\n1,2.5\n3,0.1\n"
    q = tmp_path / "cfg.csv"
    ex.write_csv(q, "demo", ("x",), [(1,)], config=cfg())
    head = q.read_text().splitlines()[0]
    assert head.startswith("# demo config={")
    assert "timestamp=" in head


def test_csv_floats_round_trip_exactly(tmp_path):
    p = tmp_path / "f.csv"
    v = 1 / 3
    ex.write_csv(p, "demo", ("v",), [(v,)])
    body = ex.read_csv_body(p)
    assert float(body.splitlines()[1]) == v


def test_degree_mix_spec():
    assert ex.DEGREE_MIX_VALUES == (1, 4, 7)
    lo = ex.degree_mix_spec(0.0)
    assert lo.probs == (0.0, 1.0, 0.0)  # a=0 concentrates on degree 4
    hi = ex.degree_mix_spec(1.0)
    assert hi.probs == (0.5, 0.0, 0.5)
    mid = ex.degree_mix_spec(0.5)
    assert sum(mid.probs) == pytest.approx(1.0)
    assert mid.probs[0] == pytest.approx(0.25)


def test_reproduce_marginals_shape(tmp_path):
    p = tmp_path / "marg.csv"
    res = ex.reproduce_marginals(n=40, m=40, d=4, trials=30, seed=1,
                                 csv_path=p)
    assert len(res.greedy_mean) == 40
    assert res.greedy_mean[0] == pytest.approx(4.0)
    assert res.fixed_mean[0] == pytest.approx(4.0)
    body = ex.read_csv_body(p).splitlines()
    assert body[0] == "t,greedy_mean_gain,fixed_mean_gain"
    assert len(body) == 41
    # greedy dominates in the cumulative sense at every prefix
    # (1e-9 absorbs float dust in the 40-term mean sums)
    for t in range(1, 41):
        assert res.cumulative_gap(t) >= -2 * res.cum_diff_se[t - 1] - 1e-9


def test_equivalence_scan_clean(tmp_path):
    p = tmp_path / "eq.csv"
    rep = ex.equivalence_scan(trials=30, seed=4, max_n=60, csv_path=p)
    assert rep.trials == 30
    assert rep.mismatches == 0
    body = ex.read_csv_body(p).splitlines()
    assert body[0] == "trial,model,n,m,k,greedy_value,equal"
    rows = [line.split(",") for line in body[1:]]
    assert {int(r[0]) for r in rows} == set(range(30))
    assert all(r[-1] == "1" for r in rows)
    # each graph is probed at every distinct budget in {1, n/4, n}
    ks = {}
    for r in rows:
        ks.setdefault(int(r[0]), set()).add(int(r[4]))
    for trial, kset in ks.items():
        n = int(rows[[int(r[0]) for r in rows].index(trial)][2])
        assert kset == {1, max(1, n // 4), n}


def test_chernoff_preconditions():
    with pytest.raises(ValueError):
        ex.chernoff_check(50, 3, 5, 0.0, 10, 0)
    with pytest.raises(ValueError):
        ex.chernoff_check(50, 3, 5, 1.0, 10, 0)


def test_chernoff_small_run():
    rep = ex.chernoff_check(60, 4, 10, 0.3, 200, 5)
    assert rep.ok
    assert 0.0 <= rep.exceed_freq <= 1.0
    assert rep.bound == pytest.approx(
        math.exp(-rep.delta ** 2 * rep.analytic_mean / 3.0), rel=1e-12)


def test_hybrid_grid_cell_consistency():
    cell = ex.hybrid_grid_cell(30, 3, 10, 200, 7)
    assert len(cell.mean_by_t) == 11
    assert cell.mean_fixed == cell.mean_by_t[0]
    assert cell.mean_greedy == cell.mean_by_t[10]
    assert cell.mean_greedy >= cell.mean_fixed
    assert cell.ratio_vs_ub <= 1.0
    assert cell.expected_fixed == pytest.approx(
        ex.expected_fixed_coverage(30, [3] * 10), rel=1e-12)


def test_run_experiment_ratio_csv(tmp_path):
    p = tmp_path / "r.csv"
    ok = ex.run_experiment(cfg(trials=3), p)
    assert ok
    body = ex.read_csv_body(p).splitlines()
    assert body[0].startswith("trials,mean_alg")
    assert len(body) == 2


def test_run_experiment_rejects_unknown():
    with pytest.raises(ValueError):
        ex.ExperimentConfig(experiment="nope")


def test_run_experiment_best_effort_flag(tmp_path):
    c = ex.ExperimentConfig(experiment="ratio", model="lrr", n=40, m=40,
                            degrees=UniformDegrees(4), k=13, trials=2,
                            seed=6, opt_method="branch_bound",
                            node_budget=2)
    ok = ex.run_experiment(c, tmp_path / "b.csv")
    assert not ok
    body = ex.read_csv_body(tmp_path / "b.csv").splitlines()
    assert body[1].endswith(",1")  # best_effort column set

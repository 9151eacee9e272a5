"""Timing comparison of the compiled and pure kernel backends.

Runs each workload in a fresh subprocess per backend (the backend is
frozen at import time), then prints one table with the speedups.  The
workloads go through the public entry points, so dispatch overhead is
included.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def workloads():
    from maxcover.algorithms import greedy, hybrid_sweep_values
    from maxcover.exact import opt_branch_bound, opt_exhaustive
    from maxcover.generators import gen_lrr, gen_ulrr
    from maxcover.matching import lambda_value

    big = gen_lrr(1200, 6, 11)
    pairs = gen_lrr(4000, 2, 7)
    boxed = gen_lrr(22, 5, 3)        # inside the 64x64 mask regime
    deep = gen_ulrr(48, 30, 3, 19)   # ~450k search nodes at k=12

    return [
        ("greedy n=1200 d=6 k=n", lambda: greedy(big, 1200).value),
        ("hybrid_sweep n=1200 k=400",
         lambda: hybrid_sweep_values(big, 400)[-1]),
        ("matching lambda n=4000 d=2", lambda: lambda_value(pairs)),
        ("exhaustive n=22 k=11", lambda: opt_exhaustive(boxed, 11).value),
        ("branch_bound n=48 k=12", lambda: opt_branch_bound(deep, 12).value),
    ]


def run_worker(repeats):
    import maxcover

    results = {"backend": maxcover.BACKEND, "times": {}, "values": {}}
    for name, fn in workloads():
        best = min(_timed(fn) for _ in range(repeats))
        results["times"][name] = best
        results["values"][name] = fn()
    print(json.dumps(results))


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def run_backend(backend, repeats):
    env = dict(os.environ, MAXCOVER_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker",
         "--repeats", str(repeats)],
        env=env, capture_output=True, text=True)
    if proc.returncode != 0:
        sys.stderr.write(proc.stderr)
        return None
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--worker", action="store_true")
    args = ap.parse_args()
    if args.worker:
        run_worker(args.repeats)
        return

    pure = run_backend("pure", args.repeats)
    comp = run_backend("compiled", args.repeats)
    if pure is None:
        sys.exit("pure backend failed to run")
    if comp is None:
        print("compiled extension not built; showing pure timings only\n")

    width = max(len(name) for name, _ in _names(pure))
    header = f"{'workload':<{width}}  {'pure':>9}"
    if comp:
        header += f"  {'compiled':>9}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, t_pure in _names(pure):
        line = f"{name:<{width}}  {t_pure:>8.4f}s"
        if comp:
            t_comp = comp["times"][name]
            if comp["values"][name] != pure["values"][name]:
                sys.exit(f"backend disagreement on {name!r}: "
                         f"{comp['values'][name]} != {pure['values'][name]}")
            line += f"  {t_comp:>8.4f}s  {t_pure / t_comp:>7.1f}x"
        print(line)


def _names(result):
    return list(result["times"].items())


if __name__ == "__main__":
    main()

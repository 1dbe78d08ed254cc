"""Benchmark the compiled kernel against the pure-Python fallback.

Both backends are bit-identical by construction; this script times full runs
on a spread of problem shapes, verifies the traces really are identical, and
prints the speedup table.

    python benchmarks/compare_backends.py [--max-fe 20000] [--repeats 3]
"""

import argparse
import time

import numpy as np

from tansearch import TsaConfig, build_problem, compiled_available, run

CASES = [
    ("fc01", "sphere, 30D"),
    ("fc08", "rastrigin, 30D"),
    ("fc09", "ackley, 30D"),
    ("h05", "sine envelope, 30D"),
    ("fc16", "branin, 2D"),
    ("h02", "damavandi, 2D"),
]


def time_backend(fid, config, seed, backend, repeats):
    best = None
    elapsed = []
    trace = None
    for _ in range(repeats):
        problem = build_problem(fid)
        start = time.perf_counter()
        summary, trace = run(problem, config, seed, backend=backend)
        elapsed.append(time.perf_counter() - start)
        best = summary.best_fitness
    return min(elapsed), best, trace


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-fe", type=int, default=20_000)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    if not compiled_available():
        raise SystemExit("compiled kernel not built; nothing to compare")

    config = TsaConfig(max_fe=args.max_fe)
    print(f"{args.max_fe} evaluations per run, best of {args.repeats} repeats\n")
    print(f"{'function':<22}{'python':>10}{'compiled':>10}{'speedup':>9}  identical")
    total_py = 0.0
    total_cy = 0.0
    for fid, label in CASES:
        t_py, best_py, trace_py = time_backend(fid, config, args.seed, "python", args.repeats)
        t_cy, best_cy, trace_cy = time_backend(fid, config, args.seed, "compiled", args.repeats)
        same = best_py == best_cy and np.array_equal(trace_py.best, trace_cy.best)
        total_py += t_py
        total_cy += t_cy
        print(f"{label:<22}{t_py:>9.3f}s{t_cy:>9.3f}s{t_py / t_cy:>8.1f}x  {same}")
        if not same:
            raise SystemExit(f"backend mismatch on {fid}")
    print(f"\n{'total':<22}{total_py:>9.3f}s{total_cy:>9.3f}s{total_py / total_cy:>8.1f}x")


if __name__ == "__main__":
    main()

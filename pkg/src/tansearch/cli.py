"""Experiment harness: seeded batch runs, result comparison, scatter data.

Subcommands
-----------
run      execute seeded batches over a suite, write traces/summary/results
compare  nonparametric comparison of two or more results files
scatter  tangent-flight sample data (raw or with the decaying step)
list     the registered benchmark corpus

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field, fields, replace
from multiprocessing import Pool
from typing import Optional

from .engine import TsaConfig, run
from .functions import all_functions, build_problem, classical_suite, get_function, hard_suite
from .rng import RngStream
from .stats import SampleSet, kruskal_wallis, normalize_scores, summarize, wilcoxon_signed_rank

SUITES = ("classical30", "fixed", "hard", "custom")
_FIXED_DIM_IDS = tuple(f"fc{i:02d}" for i in range(13, 21))
_DEFAULT_FE_FIXED = 10_000
_DEFAULT_FE_SCALABLE = 50_000
# the per-run noise stream (noisy quartic) is decorrelated from the search
# stream by a fixed xor mask on the seed
_NOISE_SEED_MASK = 0x5DEECE66D


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class ReportRow:
    """One summary-table line: per-function statistics over a batch."""

    function_id: str
    mean: float
    std: float
    best: float
    runs: int
    max_fe: int
    wall_time: float

    def as_csv(self) -> str:
        return (
            f"{self.function_id},{self.mean!r},{self.std!r},{self.best!r},"
            f"{self.runs},{self.max_fe},{self.wall_time:.3f}"
        )


@dataclass
class ExperimentConfig:
    suite: str = ""
    function_ids: Optional[list[str]] = None
    runs: int = 30
    max_fe: Optional[int] = None
    max_fe_overrides: dict = field(default_factory=dict)
    tsa: TsaConfig = field(default_factory=TsaConfig)
    base_seed: int = 1000
    output_dir: str = "results"
    trace_stride: int = 10
    jobs: Optional[int] = None
    label: str = "tsa"
    backend: str = "auto"

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        data = dict(data)
        if "tsa" in data:
            tsa_known = {f.name for f in fields(TsaConfig)}
            tsa_unknown = set(data["tsa"]) - tsa_known
            if tsa_unknown:
                raise ConfigError(f"unknown tsa config keys: {sorted(tsa_unknown)}")
            data["tsa"] = TsaConfig(**data["tsa"])
        return cls(**data)

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise ConfigError(f"suite must be one of {SUITES}, got {self.suite!r}")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.trace_stride < 1:
            raise ConfigError("trace_stride must be >= 1")
        if self.suite == "custom" and not self.function_ids:
            raise ConfigError("custom suite needs function_ids")
        if self.backend not in ("auto", "compiled", "python"):
            raise ConfigError(f"unknown backend {self.backend!r}")
        try:
            self.tsa.validate()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def _suite_ids(config: ExperimentConfig) -> list[str]:
    if config.suite == "classical30":
        ids = [f.id for f in classical_suite()[:12]]
    elif config.suite == "fixed":
        ids = [f.id for f in classical_suite()[12:]]
    elif config.suite == "hard":
        ids = [f.id for f in hard_suite()]
    else:
        ids = list(config.function_ids or [])
    known = {f.id for f in all_functions()}
    bad = [i for i in ids if i not in known]
    if bad:
        raise ConfigError(f"unknown function ids: {bad}")
    return ids


def _budget_for(config: ExperimentConfig, fid: str) -> int:
    if fid in config.max_fe_overrides:
        return int(config.max_fe_overrides[fid])
    if config.max_fe is not None:
        return config.max_fe
    return _DEFAULT_FE_FIXED if fid in _FIXED_DIM_IDS else _DEFAULT_FE_SCALABLE


def run_seed_for(base_seed: int, run_index: int) -> int:
    """Per-run seeds are a pure function of (base_seed, run_index)."""
    return base_seed + run_index


def _execute_one(task):
    fid, seed, max_fe, tsa_dict, stride, backend = task
    fn = get_function(fid)
    noise = RngStream(seed ^ _NOISE_SEED_MASK) if fn.noisy else None
    problem = build_problem(fn, noise_rng=noise)
    config = replace(TsaConfig(**tsa_dict), max_fe=max_fe)
    start = time.perf_counter()
    summary, trace = run(problem, config, seed, backend=backend)
    wall = time.perf_counter() - start
    rows = _thin_trace(trace.fe.tolist(), trace.best.tolist(), stride)
    return {
        "function": fid,
        "seed": seed,
        "best": summary.best_fitness,
        "used_fe": summary.used_fe,
        "wall_time": wall,
        "best_position": [float(v) for v in summary.best_position],
        "trace": rows,
    }


def _thin_trace(fe, best, stride):
    rows = [(f, b) for f, b in zip(fe, best) if f % stride == 0]
    if fe and fe[-1] % stride != 0:
        rows.append((fe[-1], best[-1]))
    return rows


def _check_monotone(rows, where: str) -> None:
    prev = math.inf
    for _, b in rows:
        if b > prev:
            raise RuntimeError(f"non-monotone best-fitness trace in {where}")
        prev = b


def cmd_run(config: ExperimentConfig) -> int:
    config.validate()
    ids = _suite_ids(config)
    os.makedirs(config.output_dir, exist_ok=True)

    tsa_dict = {f.name: getattr(config.tsa, f.name) for f in fields(TsaConfig)}
    tasks = []
    for fid in ids:
        budget = _budget_for(config, fid)
        for r in range(config.runs):
            seed = run_seed_for(config.base_seed, r)
            tasks.append((fid, seed, budget, tsa_dict, config.trace_stride, config.backend))

    jobs = config.jobs or os.cpu_count() or 1
    if jobs > 1 and len(tasks) > 1:
        with Pool(jobs) as pool:
            results = pool.map(_execute_one, tasks)
    else:
        results = [_execute_one(t) for t in tasks]

    by_function: dict[str, list[dict]] = {fid: [] for fid in ids}
    for task, res in zip(tasks, results):
        by_function[res["function"]].append(res)

    # per-run traces
    for fid in ids:
        for r, res in enumerate(by_function[fid]):
            rows = res.pop("trace")
            _check_monotone(rows, f"{fid} run {r}")
            path = os.path.join(config.output_dir, f"trace_{fid}_{r:03d}.csv")
            with open(path, "w") as fh:
                fh.write("fe,best\n")
                for fe, best in rows:
                    fh.write(f"{fe},{best!r}\n")

    # summary table (mean/std/best of the per-run bests)
    summary_path = os.path.join(config.output_dir, "summary.csv")
    with open(summary_path, "w") as fh:
        fh.write("function_id,mean,std,best,runs,max_fe,wall_time\n")
        for fid in ids:
            bests = [res["best"] for res in by_function[fid]]
            mean, std, best = summarize(bests)
            row = ReportRow(
                function_id=fid, mean=mean, std=std, best=best,
                runs=config.runs, max_fe=_budget_for(config, fid),
                wall_time=sum(res["wall_time"] for res in by_function[fid]),
            )
            fh.write(row.as_csv() + "\n")

    # machine-readable full results
    doc = {
        "label": config.label,
        "base_seed": config.base_seed,
        "runs": config.runs,
        "tsa": tsa_dict,
        "functions": {
            fid: {
                "dimension": get_function(fid).default_dimension,
                "max_fe": _budget_for(config, fid),
                "runs": [
                    {k: res[k] for k in ("seed", "best", "used_fe", "wall_time", "best_position")}
                    for res in by_function[fid]
                ],
            }
            for fid in ids
        },
    }
    with open(os.path.join(config.output_dir, "results.json"), "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")

    print(f"wrote {len(tasks)} runs over {len(ids)} functions to {config.output_dir}")
    return 0


def _load_results(path: str) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    if "functions" not in doc or "label" not in doc:
        raise ConfigError(f"{path} is not a results file")
    return doc


def cmd_compare(paths: list[str], alpha: float, out: str) -> int:
    if len(paths) < 2:
        raise ConfigError("compare needs at least two results files")
    docs = [_load_results(p) for p in paths]
    labels = []
    for i, doc in enumerate(docs):
        label = doc["label"]
        labels.append(label if label not in labels else f"{label}#{i}")

    sets = [set(doc["functions"]) for doc in docs]
    common = set.intersection(*sets)
    union = set.union(*sets)
    if common != union:
        raise ConfigError(
            f"function sets differ; not shared by all: {sorted(union - common)}"
        )
    ids = sorted(common)
    if len(ids) < 5:
        raise ConfigError("need at least 5 common functions for the paired test")

    means = []
    for fid in ids:
        row = []
        for doc in docs:
            bests = [r["best"] for r in doc["functions"][fid]["runs"]]
            row.append(sum(bests) / len(bests))
        means.append(row)
    scores = normalize_scores(means)

    base = SampleSet(labels[0], tuple(scores[:, 0]))
    wilcoxon = {}
    for j in range(1, len(docs)):
        other = SampleSet(labels[j], tuple(scores[:, j]))
        res = wilcoxon_signed_rank(base, other, alpha)
        wilcoxon[labels[j]] = {
            "P": res.p_value,
            "H": int(res.reject),
            "Ranks": res.direction,
            "statistic": res.statistic,
        }

    groups = [SampleSet(labels[j], tuple(scores[:, j])) for j in range(len(docs))]
    kw = kruskal_wallis(groups, alpha)

    report = {
        "alpha": alpha,
        "labels": labels,
        "functions": ids,
        "normalized_scores": {
            fid: {labels[j]: float(scores[i, j]) for j in range(len(labels))}
            for i, fid in enumerate(ids)
        },
        "wilcoxon_vs_first": wilcoxon,
        "kruskal_wallis": {
            "H": kw.statistic,
            "P": kw.p_value,
            "reject": kw.reject,
            "direction": kw.direction,
        },
    }
    with open(out, "w") as fh:
        json.dump(report, fh, indent=1)
        fh.write("\n")

    print(f"compared {labels} over {len(ids)} functions (alpha={alpha})")
    for label, row in wilcoxon.items():
        print(f"  wilcoxon {labels[0]} vs {label}: P={row['P']:.4g} H={row['H']} Ranks={row['Ranks']}")
    print(f"  kruskal-wallis: H={kw.statistic:.4g} P={kw.p_value:.4g} reject={kw.reject}")
    print(f"wrote {out}")
    return 0


def cmd_scatter(mode: str, samples: int, seed: int, out: str, theta_max: float, dim: int) -> int:
    if samples < 1:
        raise ConfigError("samples must be >= 1")
    if not 0.0 < theta_max < math.pi / 2.0:
        raise ConfigError("theta-max must lie strictly inside (0, pi/2)")
    rng = RngStream(seed)
    with open(out, "w") as fh:
        fh.write("index,value\n")
        for k in range(samples):
            theta = rng.uniform_range(0.0, theta_max)
            if mode == "raw_tangent":
                value = math.tan(theta)
            else:  # decayed: tangent flight scaled by the shrinking step
                sign = 1.0 if rng.uniform() >= 0.5 else -1.0
                t = k + 1
                value = 10.0 * sign * math.log(1.0 + 10.0 * dim / t) * math.tan(theta)
            fh.write(f"{k},{value!r}\n")
    print(f"wrote {samples} {mode} samples to {out}")
    return 0


def _format_bounds(fn) -> str:
    uniq = {(b.lb, b.ub) for b in fn.bounds}
    if len(uniq) == 1:
        b = fn.bounds[0]
        return f"[{b.lb:g}, {b.ub:g}]"
    return " x ".join(f"[{b.lb:g}, {b.ub:g}]" for b in fn.bounds)


def cmd_list(suite: Optional[str], machine: bool) -> int:
    if suite is None:
        funcs = all_functions()
    elif suite == "classical30":
        funcs = classical_suite()[:12]
    elif suite == "fixed":
        funcs = classical_suite()[12:]
    elif suite == "hard":
        funcs = hard_suite()
    else:
        raise ConfigError(f"unknown suite {suite!r}")

    if machine:
        rows = [
            {
                "id": f.id,
                "name": f.name,
                "dimension": f.default_dimension,
                "bounds": [[b.lb, b.ub] for b in f.bounds],
                "optimum": f.known_optimum_value,
                "modality": f.modality,
            }
            for f in funcs
        ]
        json.dump(rows, sys.stdout, indent=1)
        sys.stdout.write("\n")
        return 0

    print(f"{'id':<6}{'name':<22}{'D':>4}  {'bounds':<20}{'optimum':>12}  mod")
    for f in funcs:
        print(
            f"{f.id:<6}{f.name:<22}{f.default_dimension:>4}  "
            f"{_format_bounds(f):<20}{f.known_optimum_value:>12g}  {f.modality}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tansearch", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run seeded TSA batches over a suite")
    p_run.add_argument("--config", help="JSON experiment config; flags override")
    p_run.add_argument("--suite", choices=SUITES)
    p_run.add_argument("--functions", nargs="+", metavar="ID", help="custom function ids")
    p_run.add_argument("--runs", type=int)
    p_run.add_argument("--max-fe", type=int, dest="max_fe")
    p_run.add_argument("--seed", type=int, dest="base_seed")
    p_run.add_argument("--out", dest="output_dir")
    p_run.add_argument("--jobs", type=int)
    p_run.add_argument("--label")
    p_run.add_argument("--trace-stride", type=int, dest="trace_stride")
    p_run.add_argument("--backend", choices=("auto", "compiled", "python"))

    p_cmp = sub.add_parser("compare", help="nonparametric comparison of results files")
    p_cmp.add_argument("results", nargs="+")
    p_cmp.add_argument("--alpha", type=float, default=0.05)
    p_cmp.add_argument("--out", default="comparison.json")

    p_sc = sub.add_parser("scatter", help="tangent-flight sample data for plotting")
    p_sc.add_argument("--mode", choices=("raw_tangent", "decayed"), required=True)
    p_sc.add_argument("--samples", type=int, required=True)
    p_sc.add_argument("--seed", type=int, default=0)
    p_sc.add_argument("--out", required=True)
    p_sc.add_argument("--theta-max", type=float, default=math.pi / 2.1)
    p_sc.add_argument("--dim", type=int, default=10)

    p_ls = sub.add_parser("list", help="list the benchmark corpus")
    p_ls.add_argument("--suite", choices=("classical30", "fixed", "hard"))
    p_ls.add_argument("--machine", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            data = {}
            if args.config:
                with open(args.config) as fh:
                    try:
                        data = json.load(fh)
                    except json.JSONDecodeError as exc:
                        raise ConfigError(f"bad config JSON: {exc}") from exc
            config = ExperimentConfig.from_dict(data)
            for key in ("suite", "runs", "max_fe", "base_seed", "output_dir",
                        "jobs", "label", "trace_stride", "backend"):
                value = getattr(args, key, None)
                if value is not None:
                    setattr(config, key, value)
            if args.functions:
                config.function_ids = args.functions
                config.suite = config.suite or "custom"
            return cmd_run(config)
        if args.command == "compare":
            return cmd_compare(args.results, args.alpha, args.out)
        if args.command == "scatter":
            return cmd_scatter(args.mode, args.samples, args.seed, args.out,
                               args.theta_max, args.dim)
        if args.command == "list":
            return cmd_list(args.suite, args.machine)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Tangent search engine: intensification, exploration, escape, main loop.

Every move is a tangent flight ``step * tan(theta)`` whose magnitude decays
logarithmically with the evaluation clock (see ``_decay_time``). Candidates
are bound-repaired and cost one evaluation each; intensification and
exploration replace their parent only on strict improvement, the escape
kick replaces it unconditionally, and the elite best only ever improves.

Draw order (mirrored exactly by the compiled kernel, do not reorder):

  init       per agent: D coordinate draws, then 1 evaluation
  sweep      per agent: 1 switch draw, then intensify or explore
  intensify  sign, theta (the step sample; one angle per candidate),
             k subset-index draws, repair draws
  explore    sign, theta (the step sample), D selection draws,
             1 forced-index draw iff nothing selected, repair draws
  escape     1 gate draw; main branch: sign, branch draw, then 1 blend
             uniform (toward-best) or 1 theta (bound-scaled diagonal jump);
             restart branch: D coordinate draws; repair draws
  repair     at most one draw per violated side (below / above), lazily,
             in coordinate-encounter order
  iteration  after the sweep: 1 escape-gate draw, 1 agent-index draw iff
             escape fires (both skipped when the budget is already spent)
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .problem import (
    Bounds,
    BudgetExhausted,
    EvaluationBudget,
    Problem,
    SearchAgent,
    evaluate,
)
from .rng import RngStream

try:
    from . import _kernel
except ImportError:  # pure-Python fallback only
    _kernel = None

NORM_FLOOR = 1e-30


def compiled_available() -> bool:
    return _kernel is not None


@dataclass
class TsaConfig:
    """Tunable parameters; the defaults are the recommended setting."""

    pop_size: int = 20
    max_fe: int = 50_000
    p_switch: float = 0.3
    p_esc: float = 0.8
    p_restart: float = 0.01
    theta_max_intens: float = math.pi / 2.1
    theta_max_explore: float = math.pi / 3.0
    theta_max_escape: float = math.pi / 2.1
    replace_fraction_large: float = 0.20
    replace_fraction_small: float = 0.50
    small_dim_threshold: int = 4

    def validate(self) -> None:
        if self.pop_size < 1:
            raise ValueError("pop_size must be >= 1")
        if self.max_fe < 1:
            raise ValueError("max_fe must be >= 1")
        for name in ("p_switch", "p_esc", "p_restart"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")
        for name in ("theta_max_intens", "theta_max_explore", "theta_max_escape"):
            v = getattr(self, name)
            if not 0.0 < v < math.pi / 2.0:
                raise ValueError(f"{name} must lie strictly inside (0, pi/2), got {v}")
        if not 0.0 < self.replace_fraction_large <= 1.0:
            raise ValueError("replace_fraction_large must be in (0, 1]")
        if not 0.0 < self.replace_fraction_small <= 1.0:
            raise ValueError("replace_fraction_small must be in (0, 1]")

    def subset_count(self, dimension: int) -> int:
        """How many coordinates the intensification overwrite copies."""
        f = (
            self.replace_fraction_small
            if dimension <= self.small_dim_threshold
            else self.replace_fraction_large
        )
        k = int(round(f * dimension))
        if k < 1:
            k = 1
        if k > dimension:
            k = dimension
        return k


@dataclass(frozen=True)
class StepSample:
    """One tangent-flight draw: angle, direction sign, and step magnitude."""

    theta: float
    sign: float
    magnitude: float


class ConvergenceTrace:
    """Best-so-far after every evaluation, plus per-iteration population means."""

    __slots__ = ("_fe", "_best", "_mean", "_best_seen")

    def __init__(self):
        self._fe: list[int] = []
        self._best: list[float] = []
        self._mean: list[float] = []
        self._best_seen = math.inf

    @classmethod
    def from_arrays(cls, fe, best, mean) -> "ConvergenceTrace":
        tr = cls()
        tr._fe = [int(v) for v in fe]
        tr._best = [float(v) for v in best]
        tr._mean = [float(v) for v in mean]
        tr._best_seen = tr._best[-1] if tr._best else math.inf
        return tr

    def record_evaluation(self, used_fe: int, value: float) -> None:
        if value < self._best_seen:
            self._best_seen = value
        self._fe.append(used_fe)
        self._best.append(self._best_seen)

    def record_iteration_mean(self, mean_fitness: float) -> None:
        self._mean.append(mean_fitness)

    @property
    def records(self) -> list[tuple[int, float]]:
        return list(zip(self._fe, self._best))

    @property
    def fe(self) -> np.ndarray:
        return np.asarray(self._fe, dtype=np.int64)

    @property
    def best(self) -> np.ndarray:
        return np.asarray(self._best, dtype=float)

    @property
    def mean_fitness(self) -> np.ndarray:
        return np.asarray(self._mean, dtype=float)

    def __len__(self) -> int:
        return len(self._fe)


@dataclass(frozen=True)
class RunSummary:
    best_fitness: float
    best_position: np.ndarray
    used_fe: int
    seed: int
    wall_time: float


@dataclass
class TsaState:
    """Mutable per-run state: population, elite best, counters, streams."""

    population: list[SearchAgent]
    best: SearchAgent
    iteration: int
    budget: EvaluationBudget
    rng: RngStream
    config: TsaConfig
    trace: Optional[ConvergenceTrace] = field(default=None, repr=False)


# ---------------------------------------------------------------------------
# shared pieces

def _l2norm(values) -> float:
    s = 0.0
    for v in values:
        s += v * v
    return math.sqrt(s)


def _l2diff(a, b) -> float:
    s = 0.0
    for u, v in zip(a, b):
        d = u - v
        s += d * d
    return math.sqrt(s)


def _repair_in_place(y: list, bounds: tuple[Bounds, ...], rng: RngStream) -> None:
    # vectorized repair: one shared draw per violated side (below / above)
    u_low = None
    u_high = None
    for i, b in enumerate(bounds):
        v = y[i]
        if v < b.lb:
            if u_low is None:
                u_low = rng.uniform()
            y[i] = b.lb + u_low * (b.ub - b.lb)
        elif v > b.ub:
            if u_high is None:
                u_high = rng.uniform()
            y[i] = b.lb + u_high * (b.ub - b.lb)


def _spend(state: TsaState, problem: Problem, y: list) -> tuple[np.ndarray, float]:
    arr = np.array(y, dtype=float)
    value = evaluate(problem, state.budget, arr)
    if state.trace is not None:
        state.trace.record_evaluation(state.budget.used_fe, value)
    return arr, value


def _greedy(agent: SearchAgent, position: np.ndarray, value: float) -> SearchAgent:
    if value < agent.fitness:
        return SearchAgent(position, value, True)
    return agent


# ---------------------------------------------------------------------------
# operations

def _decay_time(state: TsaState) -> float:
    """The t that drives every step-size schedule: evaluations spent so far.

    The budget is counted in evaluations, and the schedules are shaped to
    traverse their whole decay range within one budget, so they read the
    evaluation clock (at least 1 once anything has been evaluated), not the
    sweep counter.
    """
    t = state.budget.used_fe
    return float(t if t > 0 else 1)


def step1(state: TsaState, problem: Problem, rng: Optional[RngStream] = None) -> StepSample:
    """Intensification step size: 10 * sign * ||best|| * ln(1 + 10 D / t)."""
    r = state.rng if rng is None else rng
    sign = 1.0 if r.uniform() >= 0.5 else -1.0
    theta = r.uniform_range(0.0, state.config.theta_max_intens)
    nrm = _l2norm(state.best.position.tolist())
    if nrm == 0.0:
        nrm = NORM_FLOOR
    magnitude = 10.0 * sign * nrm * math.log(1.0 + 10.0 * problem.dimension / _decay_time(state))
    return StepSample(theta=theta, sign=sign, magnitude=magnitude)


def step2(state: TsaState, agent: SearchAgent, rng: Optional[RngStream] = None) -> StepSample:
    """Exploration step size: sign * ||best - X|| / ln(20 + t)."""
    r = state.rng if rng is None else rng
    sign = 1.0 if r.uniform() >= 0.5 else -1.0
    theta = r.uniform_range(0.0, state.config.theta_max_explore)
    nrm = _l2diff(state.best.position.tolist(), agent.position.tolist())
    if nrm == 0.0:
        nrm = NORM_FLOOR
    magnitude = sign * nrm / math.log(20.0 + _decay_time(state))
    return StepSample(theta=theta, sign=sign, magnitude=magnitude)


def intensify(agent: SearchAgent, state: TsaState, problem: Problem) -> SearchAgent:
    """Local walk toward the elite best, then copy a subset of its coordinates.

    The candidate moves by ``step1 * tan(theta) * (X - B)`` coordinate-wise
    with one angle per candidate (a line search along the agent-to-best
    secant); a random subset of coordinates (half for small problems, a
    fifth otherwise, at least one) is then overwritten with the best
    solution's values before repair, evaluation, and greedy selection.
    """
    cfg = state.config
    rng = state.rng
    d = problem.dimension
    x = agent.position.tolist()
    b = state.best.position.tolist()
    sample = step1(state, problem, rng)
    move = sample.magnitude * math.tan(sample.theta)

    y = [x[i] + move * (x[i] - b[i]) for i in range(d)]

    # partial Fisher-Yates: k distinct dimensions, uniform without replacement
    k = cfg.subset_count(d)
    idx = list(range(d))
    for j in range(k):
        r = j + rng.integer(d - j)
        idx[j], idx[r] = idx[r], idx[j]
        y[idx[j]] = b[idx[j]]

    _repair_in_place(y, problem.bounds, rng)
    pos, value = _spend(state, problem, y)
    return _greedy(agent, pos, value)


def _select_mutation_dims(rng: RngStream, dimension: int) -> list[int]:
    """Dimensions passing the 1/D coin flip (may be empty), ascending."""
    inv_d = 1.0 / dimension
    return [i for i in range(dimension) if rng.uniform() < inv_d]


def explore(agent: SearchAgent, state: TsaState, problem: Problem) -> SearchAgent:
    """Global walk: each dimension mutates with probability 1/D.

    Selected dimensions move by ``step2 * tan(theta)`` (one angle per
    candidate); when the coin flips select nothing, one random dimension is
    forced so the evaluation is never spent on an identical candidate.
    """
    rng = state.rng
    d = problem.dimension
    x = agent.position.tolist()
    sample = step2(state, agent, rng)
    move = sample.magnitude * math.tan(sample.theta)

    selected = _select_mutation_dims(rng, d)
    if not selected:
        selected = [rng.integer(d)]

    y = list(x)
    for i in selected:
        y[i] = x[i] + move

    _repair_in_place(y, problem.bounds, rng)
    pos, value = _spend(state, problem, y)
    return _greedy(agent, pos, value)


def escape(agent: SearchAgent, state: TsaState, problem: Problem) -> SearchAgent:
    """Local-minimum break-out applied to one agent.

    Usually kicks the agent with step ``R = 10 sign / ln(1 + t)``, either
    blending it toward the best or translating it diagonally by a
    bound-scaled tangent jump; rarely (p_restart) the agent is replaced by
    a fresh uniform sample. The kicked agent is kept even when worse (a
    greedy filter here could never leave a local minimum, which is this
    move's whole job); the elite best is tracked separately and never
    degrades.
    """
    cfg = state.config
    rng = state.rng
    d = problem.dimension
    x = agent.position.tolist()
    b = state.best.position.tolist()

    y = [0.0] * d
    if rng.uniform() < 1.0 - cfg.p_restart:
        sign = 1.0 if rng.uniform() >= 0.5 else -1.0
        big_r = 10.0 * sign / math.log(1.0 + _decay_time(state))
        if rng.uniform() < 0.8:
            u = rng.uniform()
            for i in range(d):
                y[i] = x[i] + big_r * (b[i] - u * (b[i] - x[i]))
        else:
            theta = rng.uniform_range(0.0, cfg.theta_max_escape)
            move = math.tan(theta)
            for i in range(d):
                bi = problem.bounds[i]
                y[i] = x[i] + move * (bi.ub - bi.lb)
    else:
        for i, bi in enumerate(problem.bounds):
            y[i] = bi.lb + (bi.ub - bi.lb) * rng.uniform()

    _repair_in_place(y, problem.bounds, rng)
    pos, value = _spend(state, problem, y)
    return SearchAgent(pos, value, True)


def tsa_iteration(state: TsaState, problem: Problem, config: Optional[TsaConfig] = None) -> TsaState:
    """One sweep over the population plus the escape stage.

    Stops mid-sweep the moment the budget runs out (the partial iteration is
    kept). Afterwards the elite best is refreshed from the population, the
    iteration counter advances, and the population mean joins the trace.
    """
    cfg = state.config if config is None else config
    rng = state.rng
    budget = state.budget
    pop = state.population

    for k in range(len(pop)):
        if budget.used_fe >= budget.max_fe:
            break
        if rng.uniform() < cfg.p_switch:
            pop[k] = intensify(pop[k], state, problem)
        else:
            pop[k] = explore(pop[k], state, problem)
        # refresh the elite immediately so later agents in this sweep are
        # guided by the improvement
        if pop[k].fitness < state.best.fitness:
            state.best = pop[k].copy()

    if budget.used_fe < budget.max_fe:
        if rng.uniform() < cfg.p_esc:
            g = rng.integer(len(pop))
            pop[g] = escape(pop[g], state, problem)

    for agent in pop:
        if agent.fitness < state.best.fitness:
            state.best = agent.copy()

    state.iteration += 1
    if state.trace is not None:
        total = 0.0
        for agent in pop:
            total += agent.fitness
        state.trace.record_iteration_mean(total / len(pop))
    return state


def init_state(
    problem: Problem,
    config: TsaConfig,
    rng: RngStream,
    budget: Optional[EvaluationBudget] = None,
    trace: Optional[ConvergenceTrace] = None,
) -> TsaState:
    """Sample and evaluate the initial population; set the elite best."""
    if budget is None:
        budget = EvaluationBudget(config.max_fe)
    state = TsaState(
        population=[],
        best=SearchAgent(np.zeros(problem.dimension), math.inf),
        iteration=1,
        budget=budget,
        rng=rng,
        config=config,
        trace=trace,
    )
    for _ in range(config.pop_size):
        if budget.used_fe >= budget.max_fe:
            break
        y = [b.lb + (b.ub - b.lb) * rng.uniform() for b in problem.bounds]
        pos, value = _spend(state, problem, y)
        state.population.append(SearchAgent(pos, value, True))
    if not state.population:
        raise BudgetExhausted("budget spent before any agent was evaluated")
    best = min(state.population, key=lambda a: a.fitness)
    state.best = best.copy()
    return state


# ---------------------------------------------------------------------------
# whole runs

def _run_python(problem: Problem, config: TsaConfig, seed: int):
    rng = RngStream(seed)
    trace = ConvergenceTrace()
    state = init_state(problem, config, rng, trace=trace)
    while state.budget.used_fe < state.budget.max_fe:
        tsa_iteration(state, problem)
    return state, trace


def _run_compiled(problem: Problem, config: TsaConfig, seed: int):
    lb = np.array([b.lb for b in problem.bounds], dtype=float)
    ub = np.array([b.ub for b in problem.bounds], dtype=float)
    noise = problem.noise_rng
    objective = None if problem.kernel_id >= 0 else problem.objective
    out = _kernel.run_kernel(
        seed & ((1 << 64) - 1),
        problem.dimension,
        lb,
        ub,
        config.pop_size,
        config.max_fe,
        config.p_switch,
        config.p_esc,
        config.p_restart,
        config.theta_max_intens,
        config.theta_max_explore,
        config.theta_max_escape,
        config.subset_count(problem.dimension),
        problem.kernel_id,
        objective,
        None if noise is None else noise.getstate(),
    )
    if noise is not None:
        noise.setstate(out["noise_state"])
    trace = ConvergenceTrace.from_arrays(out["fe"], out["best_curve"], out["mean_curve"])
    return out, trace


def run(
    problem: Problem,
    config: TsaConfig,
    seed: int,
    backend: str = "auto",
) -> tuple[RunSummary, ConvergenceTrace]:
    """Run tangent search until the evaluation budget is spent.

    Identical (problem, config, seed) triples give identical traces, on
    either backend. ``backend`` is "auto" (compiled when built), "compiled",
    or "python".
    """
    config.validate()
    if backend not in ("auto", "compiled", "python"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "compiled" and _kernel is None:
        raise RuntimeError("compiled kernel is not available in this build")
    use_compiled = backend == "compiled" or (backend == "auto" and _kernel is not None)

    start = time.perf_counter()
    if use_compiled:
        out, trace = _run_compiled(problem, config, seed)
        summary = RunSummary(
            best_fitness=float(out["best_fitness"]),
            best_position=np.asarray(out["best_position"], dtype=float),
            used_fe=int(out["used_fe"]),
            seed=seed,
            wall_time=time.perf_counter() - start,
        )
        return summary, trace

    state, trace = _run_python(problem, config, seed)
    summary = RunSummary(
        best_fitness=state.best.fitness,
        best_position=state.best.position.copy(),
        used_fe=state.budget.used_fe,
        seed=seed,
        wall_time=time.perf_counter() - start,
    )
    return summary, trace

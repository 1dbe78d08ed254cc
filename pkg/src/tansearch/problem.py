"""Optimization problems, box bounds, and evaluation-budget accounting."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .rng import RngStream


class BudgetExhausted(RuntimeError):
    """Raised when an evaluation is requested with no budget left."""


class DimensionMismatch(ValueError):
    """Raised when a point's length differs from the problem dimension."""


@dataclass(frozen=True)
class Bounds:
    """Closed box bounds for one dimension, in problem units."""

    lb: float
    ub: float

    def __post_init__(self):
        if not self.lb < self.ub:
            raise ValueError(f"need lb < ub, got [{self.lb}, {self.ub}]")


@dataclass(frozen=True)
class Problem:
    """A minimization problem over a bounded box.

    ``objective`` maps a length-``dimension`` vector to a scalar; it may be
    stochastic (the noisy quartic benchmark is). ``kernel_id`` is a dispatch
    hint for the compiled backend (-1 means "call ``objective`` directly")
    and ``noise_rng`` carries the injected noise stream for noisy objectives
    so runs stay seed-deterministic.
    """

    dimension: int
    bounds: tuple[Bounds, ...]
    objective: Callable[[np.ndarray], float]
    name: str = ""
    kernel_id: int = field(default=-1, compare=False)
    noise_rng: Optional[RngStream] = field(default=None, compare=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.bounds) != self.dimension:
            raise ValueError(
                f"got {len(self.bounds)} bounds for dimension {self.dimension}"
            )


@dataclass
class EvaluationBudget:
    """Counts objective evaluations against a hard cap."""

    max_fe: int
    used_fe: int = 0

    def __post_init__(self):
        if self.max_fe < 1:
            raise ValueError("max_fe must be >= 1")

    @property
    def remaining(self) -> int:
        return self.max_fe - self.used_fe

    @property
    def exhausted(self) -> bool:
        return self.used_fe >= self.max_fe


@dataclass
class SearchAgent:
    """A candidate position with its cached objective value.

    ``fresh`` records that ``fitness`` corresponds to ``position`` as last
    evaluated, so greedy selection never re-spends budget on a known point.
    """

    position: np.ndarray
    fitness: float
    fresh: bool = True

    def copy(self) -> "SearchAgent":
        return SearchAgent(self.position.copy(), self.fitness, self.fresh)


def evaluate(problem: Problem, budget: EvaluationBudget, x) -> float:
    """Evaluate ``problem.objective`` at ``x``, spending one budget unit.

    Raises
    ------
    BudgetExhausted
        If the budget is already fully used; the request is refused before
        the objective is called.
    DimensionMismatch
        If ``len(x) != problem.dimension``.
    """
    if len(x) != problem.dimension:
        raise DimensionMismatch(
            f"point has length {len(x)}, problem dimension is {problem.dimension}"
        )
    if budget.used_fe >= budget.max_fe:
        raise BudgetExhausted(f"budget of {budget.max_fe} evaluations is spent")
    value = float(problem.objective(np.asarray(x, dtype=float)))
    budget.used_fe += 1
    return value


def random_solution(problem: Problem, rng: RngStream) -> np.ndarray:
    """Uniform sample inside the bounds box, one draw per coordinate."""
    out = [b.lb + (b.ub - b.lb) * rng.uniform() for b in problem.bounds]
    return np.array(out, dtype=float)


def repair_bounds(x, problem: Problem, rng: RngStream) -> np.ndarray:
    """Resample out-of-bounds coordinates uniformly inside their ranges.

    In-bounds coordinates pass through unchanged. The replacement is
    vectorized per side: one draw is shared by every coordinate below its
    lower bound and another by every coordinate above its upper bound
    (lazily drawn in encounter order), so each repair spends at most two
    draws and repaired coordinates land at the same relative position of
    their ranges.
    """
    out = np.array(x, dtype=float, copy=True)
    u_low = None
    u_high = None
    for i, b in enumerate(problem.bounds):
        v = out[i]
        if v < b.lb:
            if u_low is None:
                u_low = rng.uniform()
            out[i] = b.lb + u_low * (b.ub - b.lb)
        elif v > b.ub:
            if u_high is None:
                u_high = rng.uniform()
            out[i] = b.lb + u_high * (b.ub - b.lb)
    return out


def uniform_bounds(lb: float, ub: float, dimension: int) -> tuple[Bounds, ...]:
    """The common case: one scalar range applied to every dimension."""
    return tuple(Bounds(lb, ub) for _ in range(dimension))


def make_problem(
    objective: Callable[[np.ndarray], float],
    bounds: Sequence[Bounds] | Bounds,
    dimension: Optional[int] = None,
    name: str = "",
) -> Problem:
    """Convenience constructor for user-supplied objectives."""
    if isinstance(bounds, Bounds):
        if dimension is None:
            raise ValueError("dimension required with scalar bounds")
        bounds = uniform_bounds(bounds.lb, bounds.ub, dimension)
    else:
        bounds = tuple(bounds)
        if dimension is None:
            dimension = len(bounds)
    return Problem(dimension=dimension, bounds=bounds, objective=objective, name=name)

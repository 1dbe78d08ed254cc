"""tansearch: tangent-flight global optimization.

A derivative-free, population-based optimizer whose moves are
``step * tan(theta)`` flights with logarithmically decaying step sizes,
plus the benchmark testbed, nonparametric statistics, and experiment CLI
used to evaluate it. Runs are seed-deterministic; a compiled kernel and a
pure-Python fallback produce bit-identical results.
"""

from .engine import (
    ConvergenceTrace,
    RunSummary,
    StepSample,
    TsaConfig,
    TsaState,
    compiled_available,
    escape,
    explore,
    init_state,
    intensify,
    run,
    step1,
    step2,
    tsa_iteration,
)
from .functions import (
    TestFunction,
    all_functions,
    build_problem,
    classical_suite,
    eval_function,
    get_function,
    hard_suite,
)
from .problem import (
    Bounds,
    BudgetExhausted,
    DimensionMismatch,
    EvaluationBudget,
    Problem,
    SearchAgent,
    evaluate,
    random_solution,
    repair_bounds,
    uniform_bounds,
)
from .rng import RngStream
from .stats import (
    DegenerateInput,
    SampleSet,
    StatTestResult,
    kruskal_wallis,
    normalize_scores,
    summarize,
    wilcoxon_signed_rank,
)

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "BudgetExhausted",
    "ConvergenceTrace",
    "DegenerateInput",
    "DimensionMismatch",
    "EvaluationBudget",
    "Problem",
    "RngStream",
    "RunSummary",
    "SampleSet",
    "SearchAgent",
    "StatTestResult",
    "StepSample",
    "TestFunction",
    "TsaConfig",
    "TsaState",
    "all_functions",
    "build_problem",
    "classical_suite",
    "compiled_available",
    "escape",
    "eval_function",
    "evaluate",
    "explore",
    "get_function",
    "hard_suite",
    "init_state",
    "intensify",
    "kruskal_wallis",
    "normalize_scores",
    "random_solution",
    "repair_bounds",
    "run",
    "step1",
    "step2",
    "summarize",
    "tsa_iteration",
    "uniform_bounds",
    "wilcoxon_signed_rank",
]

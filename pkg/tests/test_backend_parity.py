"""Compiled kernel vs pure-Python fallback: bit-identical, not just close."""

import numpy as np
import pytest

from tansearch import Problem, RngStream, TsaConfig, build_problem, get_function, run, uniform_bounds

_kernel = pytest.importorskip("tansearch._kernel")


def run_both(problem_factory, config, seed):
    p1, t1 = run(problem_factory(), config, seed, backend="python")
    p2, t2 = run(problem_factory(), config, seed, backend="compiled")
    return (p1, t1), (p2, t2)


CASES = [
    ("fc01", 30, 3_000),   # scalable, origin optimum
    ("fc05", 30, 3_000),   # valley
    ("fc16", 2, 2_000),    # asymmetric box
    ("fc20", 4, 2_000),    # coefficient tables
    ("h02", 2, 3_000),     # removable singularity
    ("h05", 30, 2_500),    # pairwise structure
]


@pytest.mark.parametrize("fid,dim,max_fe", CASES)
def test_full_runs_bit_identical(fid, dim, max_fe):
    config = TsaConfig(max_fe=max_fe)
    for seed in (0, 11):
        (s1, t1), (s2, t2) = run_both(lambda: build_problem(fid), config, seed)
        assert s1.used_fe == s2.used_fe == max_fe
        assert s1.best_fitness == s2.best_fitness
        assert np.array_equal(s1.best_position, s2.best_position)
        assert np.array_equal(t1.fe, t2.fe)
        assert np.array_equal(t1.best, t2.best)
        assert np.array_equal(t1.mean_fitness, t2.mean_fitness)


def test_noisy_quartic_runs_and_noise_states_match():
    config = TsaConfig(max_fe=2_000)
    fn = get_function("fc07")
    n1 = RngStream(321)
    n2 = RngStream(321)
    s1, t1 = run(build_problem(fn, noise_rng=n1), config, 7, backend="python")
    s2, t2 = run(build_problem(fn, noise_rng=n2), config, 7, backend="compiled")
    assert s1.best_fitness == s2.best_fitness
    assert np.array_equal(t1.best, t2.best)
    # the kernel must leave the injected stream exactly where python did
    assert n1.getstate() == n2.getstate()


def test_python_objective_through_kernel_callback():
    def factory():
        return Problem(
            dimension=6,
            bounds=uniform_bounds(-4.0, 4.0, 6),
            objective=lambda x: float(np.sum((x - 1.25) ** 2)),
            name="shifted-sphere",
        )

    config = TsaConfig(max_fe=1_800)
    (s1, t1), (s2, t2) = run_both(factory, config, 13)
    assert s1.best_fitness == s2.best_fitness
    assert np.array_equal(t1.best, t2.best)


def test_truncated_init_parity():
    config = TsaConfig(pop_size=20, max_fe=11)
    (s1, t1), (s2, t2) = run_both(lambda: build_problem("fc09"), config, 3)
    assert s1.used_fe == s2.used_fe == 11
    assert s1.best_fitness == s2.best_fitness
    assert np.array_equal(t1.best, t2.best)


def test_backend_selection():
    problem = build_problem("fc01", dimension=3)
    config = TsaConfig(max_fe=200)
    s_auto, _ = run(problem, config, 1, backend="auto")
    s_comp, _ = run(build_problem("fc01", dimension=3), config, 1, backend="compiled")
    assert s_auto.best_fitness == s_comp.best_fitness
    with pytest.raises(ValueError):
        run(problem, config, 1, backend="nope")

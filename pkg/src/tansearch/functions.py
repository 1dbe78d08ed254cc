"""Benchmark corpus: twenty classical functions plus five hard ones.

Every evaluator is written with scalar math in a fixed operation order; the
compiled kernel transliterates the same order so both backends produce
identical doubles. All functions are minimized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import _tables as T
from .problem import Bounds, DimensionMismatch, Problem, uniform_bounds
from .rng import RngStream

_PI = math.pi


# ---------------------------------------------------------------------------
# evaluators (x is a list of floats)

def _sphere(x):
    s = 0.0
    for v in x:
        s += v * v
    return s


def _schwefel_222(x):
    s = 0.0
    p = 1.0
    for v in x:
        a = abs(v)
        s += a
        p *= a
    return s + p


def _schwefel_12(x):
    s = 0.0
    run = 0.0
    for v in x:
        run += v
        s += run * run
    return s


def _schwefel_221(x):
    m = 0.0
    for v in x:
        a = abs(v)
        if a > m:
            m = a
    return m


def _rosenbrock(x):
    s = 0.0
    for i in range(len(x) - 1):
        t1 = x[i + 1] - x[i] * x[i]
        t2 = x[i] - 1.0
        s += 100.0 * (t1 * t1) + t2 * t2
    return s


def _step(x):
    s = 0.0
    for v in x:
        t = math.floor(v + 0.5)
        s += t * t
    return s


def _quartic(x):
    # noise-free core; the U[0,1) draw is added by the caller-supplied stream
    s = 0.0
    for i, v in enumerate(x):
        v2 = v * v
        s += (i + 1.0) * (v2 * v2)
    return s


def _rastrigin(x):
    s = 0.0
    for v in x:
        s += v * v - 10.0 * math.cos(2.0 * _PI * v) + 10.0
    return s


def _ackley(x):
    d = float(len(x))
    s1 = 0.0
    s2 = 0.0
    for v in x:
        s1 += v * v
        s2 += math.cos(2.0 * _PI * v)
    return 20.0 + math.e - 20.0 * math.exp(-0.2 * math.sqrt(s1 / d)) - math.exp(s2 / d)


def _griewank(x):
    s = 0.0
    p = 1.0
    for i, v in enumerate(x):
        s += v * v
        p *= math.cos(v / math.sqrt(i + 1.0))
    return s / 4000.0 - p + 1.0


def _penalty(v, a, k):
    """Boundary penalty: zero on [-a, a], quartic growth outside."""
    if v > a:
        t = v - a
        t2 = t * t
        return k * (t2 * t2)
    if v < -a:
        t = -v - a
        t2 = t * t
        return k * (t2 * t2)
    return 0.0


def _penalized1(x):
    d = len(x)
    y0 = 1.0 + (x[0] + 1.0) / 4.0
    t = math.sin(_PI * y0)
    s = 10.0 * (t * t)
    yi = y0
    for i in range(d - 1):
        ynext = 1.0 + (x[i + 1] + 1.0) / 4.0
        a = yi - 1.0
        t = math.sin(_PI * ynext)
        s += a * a * (1.0 + 10.0 * (t * t))
        yi = ynext
    a = yi - 1.0
    s += a * a
    pen = 0.0
    for v in x:
        pen += _penalty(v, 10.0, 100.0)
    return _PI / d * s + pen


def _penalized2(x):
    d = len(x)
    t = math.sin(3.0 * _PI * x[0])
    s = t * t
    for i in range(d - 1):
        a = x[i] - 1.0
        t = math.sin(3.0 * _PI * x[i + 1])
        s += a * a * (1.0 + t * t)
    a = x[d - 1] - 1.0
    t = math.sin(2.0 * _PI * x[d - 1])
    s += a * a * (1.0 + t * t)
    pen = 0.0
    for v in x:
        pen += _penalty(v, 5.0, 100.0)
    return 0.1 * s + pen


def _foxholes(x):
    s = 1.0 / 500.0
    for j in range(25):
        d1 = x[0] - T.FOXHOLES_A1[j]
        d2 = x[1] - T.FOXHOLES_A2[j]
        q1 = d1 * d1
        q2 = d2 * d2
        s += 1.0 / ((j + 1.0) + q1 * q1 * q1 + q2 * q2 * q2)
    return 1.0 / s


def _kowalik(x):
    s = 0.0
    for a, b in zip(T.KOWALIK_A, T.KOWALIK_B):
        b2 = b * b
        t = a - x[0] * (b2 + b * x[1]) / (b2 + b * x[2] + x[3])
        s += t * t
    return s


def _six_hump_camel(x):
    a = x[0]
    b = x[1]
    a2 = a * a
    a4 = a2 * a2
    b2 = b * b
    return 4.0 * a2 - 2.1 * a4 + a4 * a2 / 3.0 + a * b - 4.0 * b2 + 4.0 * (b2 * b2)


def _branin(x):
    a = x[0]
    b = x[1]
    t = b - 5.1 * a * a / (4.0 * _PI * _PI) + 5.0 * a / _PI - 6.0
    return t * t + 10.0 * (1.0 - 1.0 / (8.0 * _PI)) * math.cos(a) + 10.0


def _goldstein_price(x):
    a = x[0]
    b = x[1]
    u = a + b + 1.0
    q1 = 19.0 - 14.0 * a + 3.0 * (a * a) - 14.0 * b + 6.0 * (a * b) + 3.0 * (b * b)
    v = 2.0 * a - 3.0 * b
    q2 = 18.0 - 32.0 * a + 12.0 * (a * a) + 48.0 * b - 36.0 * (a * b) + 27.0 * (b * b)
    return (1.0 + (u * u) * q1) * (30.0 + (v * v) * q2)


def _hartman3(x):
    s = 0.0
    for i in range(4):
        e = 0.0
        for j in range(3):
            d = x[j] - T.HARTMAN3_P[i][j]
            e += T.HARTMAN3_A[i][j] * (d * d)
        s -= T.HARTMAN_C[i] * math.exp(-e)
    return s


def _hartman6(x):
    s = 0.0
    for i in range(4):
        e = 0.0
        for j in range(6):
            d = x[j] - T.HARTMAN6_P[i][j]
            e += T.HARTMAN6_A[i][j] * (d * d)
        s -= T.HARTMAN_C[i] * math.exp(-e)
    return s


def _inverse_quadric5(x):
    s = 0.0
    for i in range(5):
        q = 0.0
        for j in range(4):
            d = x[j] - T.INVQUAD_A[i][j]
            q += d * d
        s -= 1.0 / (q + T.INVQUAD_C[i])
    return s


def _devilliers_glasser2(x):
    e5 = math.exp(x[4])
    ec = math.exp(0.507)
    s = 0.0
    for i in range(1, 25):
        t = 0.1 * (i - 1)
        y = 53.81 * (1.27 ** t) * math.tanh(3.012 * t + math.sin(2.13 * t)) * math.cos(ec * t)
        m = x[0] * (x[1] ** t) * math.tanh(x[2] * t + math.sin(x[3] * t)) * math.cos(t * e5)
        d = m - y
        s += d * d
    return s


def _sinc_pi(v):
    # sin(pi v)/(pi v) with the removable singularity filled in at v = 0
    if abs(v) < 1e-12:
        return 1.0
    return math.sin(_PI * v) / (_PI * v)


def _damavandi(x):
    q = abs(_sinc_pi(x[0] - 2.0) * _sinc_pi(x[1] - 2.0))
    q2 = q * q
    f1 = 1.0 - q2 * q2 * q
    a = x[0] - 7.0
    b = x[1] - 7.0
    f2 = 2.0 + a * a + 2.0 * (b * b)
    return f1 * f2


def _cross_leg_table(x):
    r = math.sqrt(x[0] * x[0] + x[1] * x[1])
    e = abs(100.0 - r / _PI)
    inner = abs(math.sin(x[0]) * math.sin(x[1]) * math.exp(e)) + 1.0
    return -(inner ** -0.1)


def _xin_she_yang3(x):
    # beta = 15, m = 3
    s1 = 0.0
    s2 = 0.0
    p = 1.0
    for v in x:
        u = v / 15.0
        u2 = u * u
        s1 += u2 * u2 * u2
        s2 += v * v
        c = math.cos(v)
        p *= c * c
    return math.exp(-s1) - 2.0 * math.exp(-s2) * p


def _sine_envelope(x):
    s = 0.0
    for i in range(len(x) - 1):
        r = x[i + 1] * x[i + 1] + x[i] * x[i]
        sn = math.sin(math.sqrt(r) - 0.5)
        dn = 0.001 * r + 1.0
        s += sn * sn / (dn * dn) + 0.5
    return -s


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class TestFunction:
    """One benchmark entry: formula, box, dimension, and known optimum."""

    id: str
    name: str
    default_dimension: int
    bounds: tuple[Bounds, ...]
    known_optimum_value: float
    known_optimizer: Optional[tuple[float, ...]]
    modality: str  # US / UN / MS / MN
    fn: Callable[[list], float]
    kernel_id: int
    scalable: bool = False
    noisy: bool = False
    optimum_tolerance: float = 1e-6


# coordinate of the all-equal sine-envelope minimizer: every consecutive pair
# must sit on the ring x_i^2 + x_{i+1}^2 = r*, the maximizer of the pair term
_SINE_ENV_COORD = 1.4613638439811925


def _entry(fid, name, dim, rng, opt, optimizer, modality, fn, kid, **kw):
    if isinstance(rng, tuple) and isinstance(rng[0], tuple):
        bounds = tuple(Bounds(lo, hi) for lo, hi in rng)
    else:
        bounds = uniform_bounds(rng[0], rng[1], dim)
    optimizer = None if optimizer is None else tuple(float(v) for v in optimizer)
    return TestFunction(
        id=fid, name=name, default_dimension=dim, bounds=bounds,
        known_optimum_value=float(opt), known_optimizer=optimizer,
        modality=modality, fn=fn, kernel_id=kid, **kw,
    )


_CLASSICAL = (
    _entry("fc01", "Sphere", 30, (-100, 100), 0.0, (0.0,) * 30, "US", _sphere, 1,
           scalable=True),
    _entry("fc02", "Schwefel 2.22", 30, (-10, 10), 0.0, (0.0,) * 30, "UN",
           _schwefel_222, 2, scalable=True),
    _entry("fc03", "Schwefel 1.2", 30, (-100, 100), 0.0, (0.0,) * 30, "UN",
           _schwefel_12, 3, scalable=True),
    _entry("fc04", "Schwefel 2.21", 30, (-100, 100), 0.0, (0.0,) * 30, "US",
           _schwefel_221, 4, scalable=True),
    _entry("fc05", "Rosenbrock", 30, (-30, 30), 0.0, (1.0,) * 30, "UN",
           _rosenbrock, 5, scalable=True),
    _entry("fc06", "Step", 30, (-100, 100), 0.0, (0.0,) * 30, "US", _step, 6,
           scalable=True),
    _entry("fc07", "Quartic", 30, (-1.28, 1.28), 0.0, (0.0,) * 30, "US",
           _quartic, 7, scalable=True, noisy=True),
    _entry("fc08", "Rastrigin", 30, (-5.12, 5.12), 0.0, (0.0,) * 30, "MS",
           _rastrigin, 8, scalable=True),
    _entry("fc09", "Ackley", 30, (-32, 32), 0.0, (0.0,) * 30, "MS", _ackley, 9,
           scalable=True),
    _entry("fc10", "Griewank", 30, (-600, 600), 0.0, (0.0,) * 30, "MN",
           _griewank, 10, scalable=True),
    _entry("fc11", "Penalized", 30, (-50, 50), 0.0, (-1.0,) * 30, "MN",
           _penalized1, 11, scalable=True),
    _entry("fc12", "Penalized 2", 30, (-50, 50), 0.0, (1.0,) * 30, "MN",
           _penalized2, 12, scalable=True),
    _entry("fc13", "Foxholes", 2, (-65.53, 65.53), 0.998004, (-32.0, -32.0),
           "MS", _foxholes, 13, optimum_tolerance=1e-3),
    _entry("fc14", "Kowalik", 4, (-5, 5), 0.0003075,
           (0.192833, 0.190836, 0.123117, 0.135766), "MS", _kowalik, 14,
           optimum_tolerance=1e-3),
    _entry("fc15", "Six Hump Camel Back", 2, (-5, 5), -1.03163,
           (0.08984201, -0.7126564), "MN", _six_hump_camel, 15,
           optimum_tolerance=1e-3),
    _entry("fc16", "Branin", 2, ((-5, 10), (0, 15)), 0.398,
           (math.pi, 2.275), "MS", _branin, 16, optimum_tolerance=1e-3),
    _entry("fc17", "Goldstein Price", 2, (-5, 5), 3.0, (0.0, -1.0), "MN",
           _goldstein_price, 17, optimum_tolerance=1e-3),
    _entry("fc18", "Hartman 3", 3, (0, 1), -3.8628,
           (0.114614, 0.555649, 0.852547), "MN", _hartman3, 18,
           optimum_tolerance=1e-3),
    _entry("fc19", "Hartman 6", 6, (0, 1), -3.3220,
           (0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573), "MN",
           _hartman6, 19, optimum_tolerance=1e-3),
    _entry("fc20", "Langermann", 4, (0, 10), -10.1532, (4.0, 4.0, 4.0, 4.0),
           "MN", _inverse_quadric5, 20, optimum_tolerance=1e-3),
)

_HARD = (
    _entry("h01", "DeVilliersGlasser02", 5, (0, 60), 0.0,
           (53.81, 1.27, 3.012, 2.13, 0.507), "MN", _devilliers_glasser2, 21),
    _entry("h02", "Damavandi", 2, (0, 14), 0.0, (2.0, 2.0), "MN", _damavandi, 22),
    _entry("h03", "CrossLegTable", 2, (-10, 10), -1.0, (0.0, 0.0), "MN",
           _cross_leg_table, 23),
    _entry("h04", "XinSheYang03", 30, (-20, 20), -1.0, (0.0,) * 30, "MN",
           _xin_she_yang3, 24, scalable=True),
    _entry("h05", "SineEnvelope", 30, (-100, 100), -43.2535,
           (_SINE_ENV_COORD,) * 30, "MN", _sine_envelope, 25, scalable=True,
           optimum_tolerance=1e-3),
)

_BY_ID = {f.id: f for f in _CLASSICAL + _HARD}


def classical_suite() -> tuple[TestFunction, ...]:
    """fc01..fc20 with the dimensions and ranges of the classical table."""
    return _CLASSICAL


def hard_suite() -> tuple[TestFunction, ...]:
    """The five hard functions: h01..h05."""
    return _HARD


def all_functions() -> tuple[TestFunction, ...]:
    return _CLASSICAL + _HARD


def get_function(fid: str) -> TestFunction:
    try:
        return _BY_ID[fid]
    except KeyError:
        raise KeyError(f"unknown function id {fid!r}") from None


def eval_function(f: TestFunction, x: Sequence[float], rng: Optional[RngStream] = None) -> float:
    """Evaluate ``f`` at ``x``.

    The noisy quartic draws one fresh U[0,1) value per call from ``rng``;
    every other function ignores ``rng``. Scalable functions accept any
    dimension; fixed-dimension ones insist on their own.
    """
    xs = [float(v) for v in x]
    if len(xs) != f.default_dimension and not f.scalable:
        raise DimensionMismatch(
            f"{f.id} has fixed dimension {f.default_dimension}, got {len(xs)}"
        )
    if f.scalable and len(xs) < 1:
        raise DimensionMismatch("empty point")
    value = f.fn(xs)
    if f.noisy:
        if rng is None:
            raise ValueError(f"{f.id} is noisy: a noise stream is required")
        value += rng.uniform()
    return value


def build_problem(
    f: TestFunction | str,
    dimension: Optional[int] = None,
    noise_rng: Optional[RngStream] = None,
) -> Problem:
    """Wrap a suite function as a Problem, optionally at another dimension."""
    if isinstance(f, str):
        f = get_function(f)
    if dimension is None or dimension == f.default_dimension:
        dim = f.default_dimension
        bounds = f.bounds
    else:
        if not f.scalable:
            raise ValueError(f"{f.id} is fixed at dimension {f.default_dimension}")
        dim = dimension
        b0 = f.bounds[0]
        bounds = uniform_bounds(b0.lb, b0.ub, dim)
    if f.noisy:
        if noise_rng is None:
            raise ValueError(f"{f.id} is noisy: pass a noise stream")
        stream = noise_rng
        objective = lambda arr, _fn=f.fn, _s=stream: _fn(arr.tolist()) + _s.uniform()
    else:
        stream = None
        objective = lambda arr, _fn=f.fn: _fn(arr.tolist())
    return Problem(
        dimension=dim,
        bounds=bounds,
        objective=objective,
        name=f.id,
        kernel_id=f.kernel_id,
        noise_rng=stream,
    )

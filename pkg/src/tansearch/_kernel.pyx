# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled run kernel: the whole tangent-search loop plus built-in objectives.

This is a line-for-line transliteration of engine.py and functions.py with
the same draw order and the same floating-point expression shapes, so a run
here is bit-identical to the pure-Python fallback (parity-tested). Built-in
objectives dispatch on kernel id; anything else calls back into Python.
"""

import numpy as np

from libc.stdint cimport uint64_t, int64_t
from libc.math cimport (
    sin, cos, tan, tanh, exp, log, sqrt, floor, fabs, pow, M_PI, M_E, INFINITY,
)

from . import _tables as _T


# ---------------------------------------------------------------------------
# xoshiro256++ (matches rng.RngStream exactly)

cdef struct Xo:
    uint64_t s0
    uint64_t s1
    uint64_t s2
    uint64_t s3

cdef double _INV_2_53 = 1.0 / 9007199254740992.0

cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))

cdef inline uint64_t _splitmix64(uint64_t* x) nogil:
    cdef uint64_t z
    x[0] = x[0] + <uint64_t>0x9E3779B97F4A7C15
    z = x[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)

cdef void xo_seed(Xo* st, uint64_t seed) nogil:
    cdef uint64_t x = seed
    st.s0 = _splitmix64(&x)
    st.s1 = _splitmix64(&x)
    st.s2 = _splitmix64(&x)
    st.s3 = _splitmix64(&x)

cdef inline uint64_t xo_next(Xo* st) nogil:
    cdef uint64_t x = st.s0 + st.s3
    cdef uint64_t result = _rotl(x, 23) + st.s0
    cdef uint64_t t = st.s1 << 17
    st.s2 ^= st.s0
    st.s3 ^= st.s1
    st.s1 ^= st.s2
    st.s0 ^= st.s3
    st.s2 ^= t
    st.s3 = _rotl(st.s3, 45)
    return result

cdef inline double xo_uniform(Xo* st) nogil:
    return (xo_next(st) >> 11) * _INV_2_53

cdef inline long xo_integer(Xo* st, long n) nogil:
    cdef long i = <long>(xo_uniform(st) * n)
    return n - 1 if i >= n else i

cdef inline double xo_range(Xo* st, double a, double b) nogil:
    return a + (b - a) * xo_uniform(st)


def raw_sequence(seed, long n):
    """First ``n`` raw 64-bit outputs for a seed (parity testing)."""
    cdef Xo st
    xo_seed(&st, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    out = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] view = out
    cdef long i
    for i in range(n):
        view[i] = xo_next(&st)
    return out


# ---------------------------------------------------------------------------
# built-in objectives (kernel ids 1..25, same order as functions.py)

cdef double FOX_A1[25]
cdef double FOX_A2[25]
cdef double KOW_A[11]
cdef double KOW_B[11]
cdef double HART_C[4]
cdef double H3A[4][3]
cdef double H3P[4][3]
cdef double H6A[4][6]
cdef double H6P[4][6]
cdef double IQ_A[5][4]
cdef double IQ_C[5]

for _i in range(25):
    FOX_A1[_i] = _T.FOXHOLES_A1[_i]
    FOX_A2[_i] = _T.FOXHOLES_A2[_i]
for _i in range(11):
    KOW_A[_i] = _T.KOWALIK_A[_i]
    KOW_B[_i] = _T.KOWALIK_B[_i]
for _i in range(4):
    HART_C[_i] = _T.HARTMAN_C[_i]
    for _j in range(3):
        H3A[_i][_j] = _T.HARTMAN3_A[_i][_j]
        H3P[_i][_j] = _T.HARTMAN3_P[_i][_j]
    for _j in range(6):
        H6A[_i][_j] = _T.HARTMAN6_A[_i][_j]
        H6P[_i][_j] = _T.HARTMAN6_P[_i][_j]
for _i in range(5):
    IQ_C[_i] = _T.INVQUAD_C[_i]
    for _j in range(4):
        IQ_A[_i][_j] = _T.INVQUAD_A[_i][_j]


cdef inline double _pen_u(double v, double a, double k) nogil:
    cdef double t, t2
    if v > a:
        t = v - a
        t2 = t * t
        return k * (t2 * t2)
    if v < -a:
        t = -v - a
        t2 = t * t
        return k * (t2 * t2)
    return 0.0

cdef inline double _sinc_pi(double v) nogil:
    if fabs(v) < 1e-12:
        return 1.0
    return sin(M_PI * v) / (M_PI * v)


cdef double eval_builtin(int kid, double* x, int d, Xo* noise) nogil:
    cdef int i, j
    cdef double s, s1, s2, p, run, m, a, b, t, t1, t2, v, v2, u, u2, c, e
    cdef double d1, d2, q, q1, q2, y0, yi, ynext, pen, b2, r, sn, dn, nrm
    cdef double e5, ec, yv, mv, dd, big, inner, f1, f2

    if kid == 1:  # sphere
        s = 0.0
        for i in range(d):
            v = x[i]
            s += v * v
        return s
    elif kid == 2:  # schwefel 2.22
        s = 0.0
        p = 1.0
        for i in range(d):
            a = fabs(x[i])
            s += a
            p *= a
        return s + p
    elif kid == 3:  # schwefel 1.2
        s = 0.0
        run = 0.0
        for i in range(d):
            run += x[i]
            s += run * run
        return s
    elif kid == 4:  # schwefel 2.21
        m = 0.0
        for i in range(d):
            a = fabs(x[i])
            if a > m:
                m = a
        return m
    elif kid == 5:  # rosenbrock
        s = 0.0
        for i in range(d - 1):
            t1 = x[i + 1] - x[i] * x[i]
            t2 = x[i] - 1.0
            s += 100.0 * (t1 * t1) + t2 * t2
        return s
    elif kid == 6:  # step
        s = 0.0
        for i in range(d):
            t = floor(x[i] + 0.5)
            s += t * t
        return s
    elif kid == 7:  # quartic + noise
        s = 0.0
        for i in range(d):
            v = x[i]
            v2 = v * v
            s += (i + 1.0) * (v2 * v2)
        return s + xo_uniform(noise)
    elif kid == 8:  # rastrigin
        s = 0.0
        for i in range(d):
            v = x[i]
            s += v * v - 10.0 * cos(2.0 * M_PI * v) + 10.0
        return s
    elif kid == 9:  # ackley
        s1 = 0.0
        s2 = 0.0
        for i in range(d):
            v = x[i]
            s1 += v * v
            s2 += cos(2.0 * M_PI * v)
        return 20.0 + M_E - 20.0 * exp(-0.2 * sqrt(s1 / (<double>d))) - exp(s2 / (<double>d))
    elif kid == 10:  # griewank
        s = 0.0
        p = 1.0
        for i in range(d):
            v = x[i]
            s += v * v
            p *= cos(v / sqrt(i + 1.0))
        return s / 4000.0 - p + 1.0
    elif kid == 11:  # penalized
        y0 = 1.0 + (x[0] + 1.0) / 4.0
        t = sin(M_PI * y0)
        s = 10.0 * (t * t)
        yi = y0
        for i in range(d - 1):
            ynext = 1.0 + (x[i + 1] + 1.0) / 4.0
            a = yi - 1.0
            t = sin(M_PI * ynext)
            s += a * a * (1.0 + 10.0 * (t * t))
            yi = ynext
        a = yi - 1.0
        s += a * a
        pen = 0.0
        for i in range(d):
            pen += _pen_u(x[i], 10.0, 100.0)
        return M_PI / (<double>d) * s + pen
    elif kid == 12:  # penalized 2
        t = sin(3.0 * M_PI * x[0])
        s = t * t
        for i in range(d - 1):
            a = x[i] - 1.0
            t = sin(3.0 * M_PI * x[i + 1])
            s += a * a * (1.0 + t * t)
        a = x[d - 1] - 1.0
        t = sin(2.0 * M_PI * x[d - 1])
        s += a * a * (1.0 + t * t)
        pen = 0.0
        for i in range(d):
            pen += _pen_u(x[i], 5.0, 100.0)
        return 0.1 * s + pen
    elif kid == 13:  # foxholes
        s = 1.0 / 500.0
        for j in range(25):
            d1 = x[0] - FOX_A1[j]
            d2 = x[1] - FOX_A2[j]
            q1 = d1 * d1
            q2 = d2 * d2
            s += 1.0 / ((j + 1.0) + q1 * q1 * q1 + q2 * q2 * q2)
        return 1.0 / s
    elif kid == 14:  # kowalik
        s = 0.0
        for j in range(11):
            a = KOW_A[j]
            b = KOW_B[j]
            b2 = b * b
            t = a - x[0] * (b2 + b * x[1]) / (b2 + b * x[2] + x[3])
            s += t * t
        return s
    elif kid == 15:  # six hump camel back
        a = x[0]
        b = x[1]
        q1 = a * a
        q2 = q1 * q1
        b2 = b * b
        return 4.0 * q1 - 2.1 * q2 + q2 * q1 / 3.0 + a * b - 4.0 * b2 + 4.0 * (b2 * b2)
    elif kid == 16:  # branin
        a = x[0]
        b = x[1]
        t = b - 5.1 * a * a / (4.0 * M_PI * M_PI) + 5.0 * a / M_PI - 6.0
        return t * t + 10.0 * (1.0 - 1.0 / (8.0 * M_PI)) * cos(a) + 10.0
    elif kid == 17:  # goldstein price
        a = x[0]
        b = x[1]
        u = a + b + 1.0
        q1 = 19.0 - 14.0 * a + 3.0 * (a * a) - 14.0 * b + 6.0 * (a * b) + 3.0 * (b * b)
        v = 2.0 * a - 3.0 * b
        q2 = 18.0 - 32.0 * a + 12.0 * (a * a) + 48.0 * b - 36.0 * (a * b) + 27.0 * (b * b)
        return (1.0 + (u * u) * q1) * (30.0 + (v * v) * q2)
    elif kid == 18:  # hartman 3
        s = 0.0
        for i in range(4):
            e = 0.0
            for j in range(3):
                d1 = x[j] - H3P[i][j]
                e += H3A[i][j] * (d1 * d1)
            s -= HART_C[i] * exp(-e)
        return s
    elif kid == 19:  # hartman 6
        s = 0.0
        for i in range(4):
            e = 0.0
            for j in range(6):
                d1 = x[j] - H6P[i][j]
                e += H6A[i][j] * (d1 * d1)
            s -= HART_C[i] * exp(-e)
        return s
    elif kid == 20:  # 5-term inverse quadric
        s = 0.0
        for i in range(5):
            q = 0.0
            for j in range(4):
                d1 = x[j] - IQ_A[i][j]
                q += d1 * d1
            s -= 1.0 / (q + IQ_C[i])
        return s
    elif kid == 21:  # devilliers glasser 02
        e5 = exp(x[4])
        ec = exp(0.507)
        s = 0.0
        for i in range(1, 25):
            t = 0.1 * (i - 1)
            yv = 53.81 * pow(1.27, t) * tanh(3.012 * t + sin(2.13 * t)) * cos(ec * t)
            mv = x[0] * pow(x[1], t) * tanh(x[2] * t + sin(x[3] * t)) * cos(t * e5)
            dd = mv - yv
            s += dd * dd
        return s
    elif kid == 22:  # damavandi
        q = fabs(_sinc_pi(x[0] - 2.0) * _sinc_pi(x[1] - 2.0))
        q2 = q * q
        f1 = 1.0 - q2 * q2 * q
        a = x[0] - 7.0
        b = x[1] - 7.0
        f2 = 2.0 + a * a + 2.0 * (b * b)
        return f1 * f2
    elif kid == 23:  # cross leg table
        r = sqrt(x[0] * x[0] + x[1] * x[1])
        e = fabs(100.0 - r / M_PI)
        inner = fabs(sin(x[0]) * sin(x[1]) * exp(e)) + 1.0
        return -pow(inner, -0.1)
    elif kid == 24:  # xin-she yang 03 (beta 15, m 3)
        s1 = 0.0
        s2 = 0.0
        p = 1.0
        for i in range(d):
            v = x[i]
            u = v / 15.0
            u2 = u * u
            s1 += u2 * u2 * u2
            s2 += v * v
            c = cos(v)
            p *= c * c
        return exp(-s1) - 2.0 * exp(-s2) * p
    elif kid == 25:  # sine envelope
        s = 0.0
        for i in range(d - 1):
            r = x[i + 1] * x[i + 1] + x[i] * x[i]
            sn = sin(sqrt(r) - 0.5)
            dn = 0.001 * r + 1.0
            s += sn * sn / (dn * dn) + 0.5
        return -s
    return INFINITY


def eval_by_id(int kid, x, noise_state=None):
    """Evaluate a built-in objective (parity testing against the Python path).

    Returns (value, new_noise_state) where the state is None unless one was
    supplied.
    """
    arr = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    cdef double[::1] view = arr
    cdef Xo noise
    cdef double value
    if noise_state is not None:
        noise.s0 = noise_state[0]
        noise.s1 = noise_state[1]
        noise.s2 = noise_state[2]
        noise.s3 = noise_state[3]
        value = eval_builtin(kid, &view[0], <int>view.shape[0], &noise)
        return value, (noise.s0, noise.s1, noise.s2, noise.s3)
    if kid == 7:
        raise ValueError("the noisy quartic needs a noise state")
    xo_seed(&noise, 0)
    value = eval_builtin(kid, &view[0], <int>view.shape[0], &noise)
    return value, None


# ---------------------------------------------------------------------------
# whole-run kernel

cdef double NORM_FLOOR = 1e-30


cdef inline void xo_repair(Xo* rng, double[::1] y, double[::1] lb, double[::1] ub, int dim) nogil:
    # vectorized repair: one shared draw per violated side (below / above)
    cdef int i
    cdef bint has_low = 0
    cdef bint has_high = 0
    cdef double u_low = 0.0
    cdef double u_high = 0.0
    for i in range(dim):
        if y[i] < lb[i]:
            if not has_low:
                u_low = xo_uniform(rng)
                has_low = 1
            y[i] = lb[i] + u_low * (ub[i] - lb[i])
        elif y[i] > ub[i]:
            if not has_high:
                u_high = xo_uniform(rng)
                has_high = 1
            y[i] = lb[i] + u_high * (ub[i] - lb[i])


cdef double _call_objective(object objective, double* y, int d):
    arr = np.empty(d, dtype=np.float64)
    cdef double[::1] view = arr
    cdef int i
    for i in range(d):
        view[i] = y[i]
    return <double>float(objective(arr))


def run_kernel(
    seed,
    int dim,
    double[::1] lb,
    double[::1] ub,
    int pop_size,
    long max_fe,
    double p_switch,
    double p_esc,
    double p_restart,
    double th_intens,
    double th_explore,
    double th_escape,
    int subset_k,
    int kernel_id,
    object objective,
    noise_state,
):
    cdef Xo rng
    xo_seed(&rng, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))

    cdef Xo noise
    cdef bint have_noise = noise_state is not None
    if have_noise:
        noise.s0 = noise_state[0]
        noise.s1 = noise_state[1]
        noise.s2 = noise_state[2]
        noise.s3 = noise_state[3]
    else:
        xo_seed(&noise, 0)

    pos_arr = np.empty((pop_size, dim), dtype=np.float64)
    fit_arr = np.empty(pop_size, dtype=np.float64)
    best_arr = np.empty(dim, dtype=np.float64)
    cand_arr = np.empty(dim, dtype=np.float64)
    idx_arr = np.empty(dim, dtype=np.int64)
    sel_arr = np.empty(dim, dtype=np.int64)
    fe_arr = np.empty(max_fe, dtype=np.int64)
    curve_arr = np.empty(max_fe, dtype=np.float64)
    mean_arr = np.empty(max_fe + 1, dtype=np.float64)

    cdef double[:, ::1] pos = pos_arr
    cdef double[::1] fit = fit_arr
    cdef double[::1] bpos = best_arr
    cdef double[::1] y = cand_arr
    cdef int64_t[::1] idx = idx_arr
    cdef int64_t[::1] sel = sel_arr
    cdef int64_t[::1] fe = fe_arr
    cdef double[::1] curve = curve_arr
    cdef double[::1] mean = mean_arr

    cdef long used = 0
    cdef long t = 1
    cdef long n_mean = 0
    cdef double best_seen = INFINITY
    cdef double best_fit = INFINITY
    cdef int actual_pop = 0
    cdef int i, k, j, g, nsel
    cdef long r
    cdef int64_t tmp
    cdef double u, v, sgn, nrm, mag, mv, theta, big_r, total, inv_d, dd, tdec
    cdef bint use_builtin = kernel_id >= 0

    # --- init: per agent D coordinate draws, then one evaluation
    for k in range(pop_size):
        if used >= max_fe:
            break
        for i in range(dim):
            y[i] = lb[i] + (ub[i] - lb[i]) * xo_uniform(&rng)
        if use_builtin:
            v = eval_builtin(kernel_id, &y[0], dim, &noise)
        else:
            v = _call_objective(objective, &y[0], dim)
        used += 1
        if v < best_seen:
            best_seen = v
        fe[used - 1] = used
        curve[used - 1] = best_seen
        for i in range(dim):
            pos[k, i] = y[i]
        fit[k] = v
        actual_pop += 1

    g = 0
    for k in range(1, actual_pop):
        if fit[k] < fit[g]:
            g = k
    best_fit = fit[g]
    for i in range(dim):
        bpos[i] = pos[g, i]

    # --- main loop
    while used < max_fe:
        for k in range(actual_pop):
            if used >= max_fe:
                break
            tdec = <double>(used if used > 0 else 1)
            if xo_uniform(&rng) < p_switch:
                # intensify: sign, theta, subset draws, repair
                sgn = 1.0 if xo_uniform(&rng) >= 0.5 else -1.0
                theta = xo_range(&rng, 0.0, th_intens)
                nrm = 0.0
                for i in range(dim):
                    nrm += bpos[i] * bpos[i]
                nrm = sqrt(nrm)
                if nrm == 0.0:
                    nrm = NORM_FLOOR
                mag = 10.0 * sgn * nrm * log(1.0 + 10.0 * dim / tdec)
                mv = mag * tan(theta)
                for i in range(dim):
                    y[i] = pos[k, i] + mv * (pos[k, i] - bpos[i])
                for i in range(dim):
                    idx[i] = i
                for j in range(subset_k):
                    r = j + xo_integer(&rng, dim - j)
                    tmp = idx[j]
                    idx[j] = idx[r]
                    idx[r] = tmp
                    y[idx[j]] = bpos[idx[j]]
            else:
                # explore: sign, theta, D selection draws, forced pick
                sgn = 1.0 if xo_uniform(&rng) >= 0.5 else -1.0
                theta = xo_range(&rng, 0.0, th_explore)
                nrm = 0.0
                for i in range(dim):
                    dd = bpos[i] - pos[k, i]
                    nrm += dd * dd
                nrm = sqrt(nrm)
                if nrm == 0.0:
                    nrm = NORM_FLOOR
                mag = sgn * nrm / log(20.0 + tdec)
                mv = mag * tan(theta)
                nsel = 0
                inv_d = 1.0 / dim
                for i in range(dim):
                    if xo_uniform(&rng) < inv_d:
                        sel[i] = 1
                        nsel += 1
                    else:
                        sel[i] = 0
                if nsel == 0:
                    sel[xo_integer(&rng, dim)] = 1
                for i in range(dim):
                    if sel[i]:
                        y[i] = pos[k, i] + mv
                    else:
                        y[i] = pos[k, i]

            xo_repair(&rng, y, lb, ub, dim)
            if use_builtin:
                v = eval_builtin(kernel_id, &y[0], dim, &noise)
            else:
                v = _call_objective(objective, &y[0], dim)
            used += 1
            if v < best_seen:
                best_seen = v
            fe[used - 1] = used
            curve[used - 1] = best_seen
            if v < fit[k]:
                for i in range(dim):
                    pos[k, i] = y[i]
                fit[k] = v
                # refresh the elite immediately so later agents in this
                # sweep are guided by the improvement
                if v < best_fit:
                    best_fit = v
                    for i in range(dim):
                        bpos[i] = y[i]

        if used < max_fe:
            if xo_uniform(&rng) < p_esc:
                g = <int>xo_integer(&rng, actual_pop)
                tdec = <double>(used if used > 0 else 1)
                if xo_uniform(&rng) < 1.0 - p_restart:
                    sgn = 1.0 if xo_uniform(&rng) >= 0.5 else -1.0
                    big_r = 10.0 * sgn / log(1.0 + tdec)
                    if xo_uniform(&rng) < 0.8:
                        u = xo_uniform(&rng)
                        for i in range(dim):
                            y[i] = pos[g, i] + big_r * (bpos[i] - u * (bpos[i] - pos[g, i]))
                    else:
                        theta = xo_range(&rng, 0.0, th_escape)
                        mv = tan(theta)
                        for i in range(dim):
                            y[i] = pos[g, i] + mv * (ub[i] - lb[i])
                else:
                    for i in range(dim):
                        y[i] = lb[i] + (ub[i] - lb[i]) * xo_uniform(&rng)
                xo_repair(&rng, y, lb, ub, dim)
                if use_builtin:
                    v = eval_builtin(kernel_id, &y[0], dim, &noise)
                else:
                    v = _call_objective(objective, &y[0], dim)
                used += 1
                if v < best_seen:
                    best_seen = v
                fe[used - 1] = used
                curve[used - 1] = best_seen
                # escape keeps the kicked agent even when worse
                for i in range(dim):
                    pos[g, i] = y[i]
                fit[g] = v

        g = 0
        for k in range(1, actual_pop):
            if fit[k] < fit[g]:
                g = k
        if fit[g] < best_fit:
            best_fit = fit[g]
            for i in range(dim):
                bpos[i] = pos[g, i]

        t += 1
        total = 0.0
        for k in range(actual_pop):
            total += fit[k]
        mean[n_mean] = total / actual_pop
        n_mean += 1

    out = {
        "best_fitness": best_fit,
        "best_position": best_arr.copy(),
        "used_fe": used,
        "iterations": t - 1,
        "fe": fe_arr[:used].copy(),
        "best_curve": curve_arr[:used].copy(),
        "mean_curve": mean_arr[:n_mean].copy(),
        "noise_state": (noise.s0, noise.s1, noise.s2, noise.s3) if have_noise else None,
    }
    return out

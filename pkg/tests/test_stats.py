"""Statistics: enumeration oracles, hand examples, invariances."""

import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tansearch import (
    DegenerateInput,
    SampleSet,
    kruskal_wallis,
    normalize_scores,
    summarize,
    wilcoxon_signed_rank,
)
from tansearch.stats import _midranks, _regularized_gamma_q, chi2_upper_tail


# ---------------------------------------------------------------------------
# brute-force oracle: literal enumeration of every sign assignment

def wilcoxon_exact_bruteforce(a, b):
    """Two-sided exact p by walking all 2^n sign assignments."""
    diffs = [x - y for x, y in zip(a, b) if x - y != 0.0]
    n = len(diffs)
    if n == 0:
        return 1.0
    ranks = _midranks([abs(d) for d in diffs])
    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)
    w_minus = sum(r for r, d in zip(ranks, diffs) if d < 0)
    w_obs = min(w_plus, w_minus)
    hits = 0
    for signs in itertools.product((0, 1), repeat=n):
        wp = sum(r for r, s in zip(ranks, signs) if s)
        wm = sum(r for r, s in zip(ranks, signs) if not s)
        if min(wp, wm) <= w_obs:
            hits += 1
    return hits / 2**n


def test_wilcoxon_identical_samples():
    res = wilcoxon_signed_rank([1.0, 2.0, 3.0, 4.0, 5.0], [1.0, 2.0, 3.0, 4.0, 5.0])
    assert res.p_value == 1.0
    assert not res.reject
    assert res.direction == "="


def test_wilcoxon_textbook_shift():
    res = wilcoxon_signed_rank([1, 2, 3, 4, 5], [2, 3, 4, 5, 6])
    assert res.statistic == 0.0
    assert res.p_value == pytest.approx(2 / 32, abs=0)
    assert not res.reject  # 0.0625 > 0.05


def test_wilcoxon_rejects_clear_difference():
    a = list(range(1, 13))
    b = [v + 10 for v in a]
    res = wilcoxon_signed_rank(a, b, alpha=0.05)
    assert res.reject
    assert res.direction == "+"  # first sample is lower, i.e. better


def test_wilcoxon_direction_flips_and_p_is_symmetric():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(5, 12)
        a = [rng.randint(-30, 30) for _ in range(n)]
        b = [rng.randint(-30, 30) for _ in range(n)]
        r1 = wilcoxon_signed_rank(a, b)
        r2 = wilcoxon_signed_rank(b, a)
        assert r1.p_value == r2.p_value
        flip = {"+": "-", "-": "+", "=": "="}
        assert r2.direction == flip[r1.direction]


def test_wilcoxon_matches_bruteforce_enumeration():
    rng = random.Random(99)
    for _ in range(200):
        n = rng.randint(5, 12)
        a = [rng.randint(-8, 8) * 0.5 for _ in range(n)]
        b = [rng.randint(-8, 8) * 0.5 for _ in range(n)]
        want = wilcoxon_exact_bruteforce(a, b)
        got = wilcoxon_signed_rank(a, b).p_value
        assert got == pytest.approx(want, abs=1e-12)


def test_wilcoxon_scale_invariance():
    # power-of-two scaling is exact in floating point, so p must not move
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(5, 14)
        a = [float(rng.randint(-50, 50)) for _ in range(n)]
        b = [float(rng.randint(-50, 50)) for _ in range(n)]
        base = wilcoxon_signed_rank(a, b)
        scaled = wilcoxon_signed_rank([v * 8.0 for v in a], [v * 8.0 for v in b])
        assert scaled.p_value == base.p_value
        assert scaled.direction == base.direction


def test_wilcoxon_normal_approximation_for_large_n():
    rng = random.Random(13)
    n = 40
    a = [rng.gauss(0.0, 1.0) for _ in range(n)]
    b = [v + 0.8 for v in a]
    res = wilcoxon_signed_rank(a, b)
    assert res.reject
    assert 0.0 <= res.p_value < 0.001
    scipy_stats = pytest.importorskip("scipy.stats")
    ref = scipy_stats.wilcoxon(a, b, correction=True, method="approx")
    assert res.p_value == pytest.approx(ref.pvalue, rel=1e-9)


def test_wilcoxon_validates_input():
    with pytest.raises(DegenerateInput):
        wilcoxon_signed_rank([1, 2, 3], [1, 2, 3])  # too short
    with pytest.raises(DegenerateInput):
        wilcoxon_signed_rank([1, 2, 3, 4, 5], [1, 2, 3, 4])


def test_kruskal_wallis_hand_example():
    res = kruskal_wallis([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert res.statistic == 7.2


def test_kruskal_wallis_identical_groups():
    res = kruskal_wallis([[5, 5, 5], [5, 5], [5, 5, 5, 5]])
    assert res.statistic == 0.0
    assert res.p_value == 1.0
    assert not res.reject
    assert res.direction == "="


def test_kruskal_wallis_two_groups_vs_permutation():
    # exhaustive rank permutations for n1 = n2 = 4 (chi-square is a tail
    # approximation, so the check uses separated groups)
    a = [1.0, 3.0, 5.0, 7.0]
    b = [12.0, 14.0, 16.0, 20.0]
    res = kruskal_wallis([a, b])
    pooled = a + b
    ranks = _midranks(pooled)
    h_obs = res.statistic
    count = 0
    total = 0
    for combo in itertools.combinations(range(8), 4):
        ra = sum(ranks[i] for i in combo)
        rb = sum(ranks) - ra
        s = ra * ra / 4 + rb * rb / 4
        h = (12.0 * s - 3.0 * 9.0 * 8.0 * 9.0) / (8.0 * 9.0)
        total += 1
        if h >= h_obs - 1e-12:
            count += 1
    exact_p = count / total
    assert res.p_value == pytest.approx(exact_p, abs=0.02)


def test_kruskal_wallis_monotone_invariance():
    groups = [[1, 2, 3, 4], [5, 6, 7, 8], [2, 4, 9, 11]]
    base = kruskal_wallis(groups)
    cubed = kruskal_wallis([[v**3 for v in g] for g in groups])
    assert cubed.statistic == base.statistic
    assert cubed.p_value == base.p_value


def test_kruskal_wallis_with_ties_matches_scipy():
    scipy_stats = pytest.importorskip("scipy.stats")
    rng = random.Random(31)
    for _ in range(50):
        groups = [
            [rng.randint(0, 6) for _ in range(rng.randint(3, 9))] for _ in range(3)
        ]
        if len({v for g in groups for v in g}) == 1:
            continue
        res = kruskal_wallis(groups)
        ref = scipy_stats.kruskal(*groups)
        assert res.statistic == pytest.approx(ref.statistic, rel=1e-12)
        assert res.p_value == pytest.approx(ref.pvalue, rel=1e-9)


def test_kruskal_wallis_needs_two_groups():
    with pytest.raises(DegenerateInput):
        kruskal_wallis([[1, 2, 3]])


def test_chi2_tail_against_scipy():
    scipy_special = pytest.importorskip("scipy.special")
    for df in (1, 2, 3, 5, 9, 20):
        for x in (1e-6, 0.1, 0.5, 1.0, 3.0, 7.2, 15.0, 60.0, 200.0):
            mine = chi2_upper_tail(x, df)
            ref = scipy_special.gammaincc(df / 2.0, x / 2.0)
            assert mine == pytest.approx(ref, rel=1e-10)


def test_regularized_gamma_q_domain():
    with pytest.raises(ValueError):
        _regularized_gamma_q(0.0, 1.0)
    assert _regularized_gamma_q(0.5, 0.0) == 1.0


def test_normalize_scores_basic_rows():
    out = normalize_scores([[10.0, 20.0, 30.0], [5.0, 5.0, 5.0]])
    assert np.array_equal(out[0], [0.0, 0.5, 1.0])
    assert np.array_equal(out[1], [0.0, 0.0, 0.0])


def test_normalize_scores_underflow_safe():
    out = normalize_scores([[0.0, 1e-300, 1.0]])
    assert out[0][0] == 0.0
    assert out[0][1] == pytest.approx(1e-300, abs=1e-299)
    assert out[0][2] == 1.0


@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.lists(st.floats(-1e9, 1e9, allow_nan=False), min_size=2, max_size=6),
        min_size=1,
        max_size=6,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1)
)
def test_normalize_scores_range_and_order(rows):
    out = normalize_scores(rows)
    assert np.all(out >= 0.0) and np.all(out <= 1.0)
    for raw, norm in zip(rows, out):
        if max(raw) > min(raw):
            assert norm[int(np.argmin(raw))] == 0.0
            assert norm[int(np.argmax(raw))] == 1.0


def test_summarize_hand_example():
    mean, std, best = summarize([1.0, 2.0, 3.0])
    assert mean == 2.0
    assert std == 1.0
    assert best == 1.0


def test_summarize_single_value():
    assert summarize([7.0]) == (7.0, 0.0, 7.0)


def test_summarize_all_zero():
    assert summarize([0.0] * 30) == (0.0, 0.0, 0.0)


def test_sample_set_validation():
    with pytest.raises(DegenerateInput):
        SampleSet("x", ())
    with pytest.raises(DegenerateInput):
        SampleSet("x", (1.0, math.inf))

"""Nonparametric comparison machinery: Wilcoxon signed-rank, Kruskal-Wallis,
per-problem score normalization, and mean/std/best summaries.

Self-contained on purpose (no statistics dependency): the exact Wilcoxon
p-value comes from a rank-convolution count, the chi-square tail from the
regularized upper incomplete gamma function. Accuracy is pinned by oracle
tests (2^n sign enumeration, scipy cross-checks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

EXACT_LIMIT = 20  # exact Wilcoxon p up to this many nonzero differences


class DegenerateInput(ValueError):
    """Raised for unusable samples (empty, non-finite, or mismatched)."""


@dataclass(frozen=True)
class SampleSet:
    """A labelled sample: one value per run or per problem."""

    label: str
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) == 0:
            raise DegenerateInput(f"sample {self.label!r} is empty")
        if not all(math.isfinite(v) for v in self.values):
            raise DegenerateInput(f"sample {self.label!r} has non-finite values")


@dataclass(frozen=True)
class StatTestResult:
    statistic: float
    p_value: float
    reject: bool
    alpha: float
    direction: str  # "+", "-", or "="


def _as_sample(x, label: str) -> SampleSet:
    if isinstance(x, SampleSet):
        return x
    return SampleSet(label, tuple(float(v) for v in x))


def _midranks(values: Sequence[float]) -> list[float]:
    """Ranks 1..n with ties sharing their average rank."""
    n = len(values)
    order = sorted(range(n), key=lambda i: values[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = r
        i = j + 1
    return ranks


def _tie_groups(values: Sequence[float]) -> list[int]:
    counts: dict[float, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return [c for c in counts.values() if c > 1]


def _norm_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _exact_two_sided_p(ranks: Sequence[float], w: float) -> float:
    """P(W+ <= w) + P(W+ >= S - w) under random signs, capped at 1.

    Mid-ranks are half-integers, so doubling makes everything integral and
    the whole computation exact (big-int counts over the 2^n assignments).
    """
    r2 = [int(round(2.0 * r)) for r in ranks]
    total = sum(r2)
    counts = [0] * (total + 1)
    counts[0] = 1
    for r in r2:
        for s in range(total - r, -1, -1):
            if counts[s]:
                counts[s + r] += counts[s]
    w2 = int(round(2.0 * w))
    low = sum(counts[: w2 + 1])
    high = sum(counts[total - w2 :])
    p = (low + high) / (1 << len(ranks))
    return min(1.0, p)


def wilcoxon_signed_rank(a, b, alpha: float = 0.05) -> StatTestResult:
    """Two-sided paired Wilcoxon signed-rank test.

    Zero differences are dropped; absolute differences are mid-ranked; the
    statistic is ``min(W+, W-)``. The p-value is exact (all sign
    assignments) for up to 20 nonzero pairs, otherwise a tie-corrected
    normal approximation with 0.5 continuity correction. ``direction``
    says which sample tends lower ("+" means the first), "=" when the
    null is not rejected. All zero differences give p = 1.
    """
    sa = _as_sample(a, "a")
    sb = _as_sample(b, "b")
    if len(sa.values) != len(sb.values):
        raise DegenerateInput("paired samples must have equal length")
    if len(sa.values) < 5:
        raise DegenerateInput("need at least 5 pairs")

    diffs = [x - y for x, y in zip(sa.values, sb.values) if x - y != 0.0]
    n = len(diffs)
    if n == 0:
        return StatTestResult(0.0, 1.0, False, alpha, "=")

    ranks = _midranks([abs(d) for d in diffs])
    w_plus = 0.0
    w_minus = 0.0
    for r, d in zip(ranks, diffs):
        if d > 0.0:
            w_plus += r
        else:
            w_minus += r
    w = min(w_plus, w_minus)

    if n <= EXACT_LIMIT:
        p = _exact_two_sided_p(ranks, w)
    else:
        mu = n * (n + 1) / 4.0
        var = n * (n + 1) * (2 * n + 1) / 24.0
        for tie in _tie_groups([abs(d) for d in diffs]):
            var -= (tie**3 - tie) / 48.0
        z = (w - mu + 0.5) / math.sqrt(var)
        p = min(1.0, 2.0 * _norm_cdf(z))

    reject = p < alpha
    if not reject or w_plus == w_minus:
        direction = "="
    else:
        # positive diffs mean the first sample is larger, i.e. worse
        direction = "+" if w_plus < w_minus else "-"
    return StatTestResult(w, p, reject, alpha, direction)


def _regularized_gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x), relative error < 1e-13."""
    if a <= 0.0 or x < 0.0:
        raise ValueError("need a > 0 and x >= 0")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        # lower series, then complement
        ap = a
        total = 1.0 / a
        delta = total
        for _ in range(1000):
            ap += 1.0
            delta *= x / ap
            total += delta
            if abs(delta) < abs(total) * 1e-16:
                break
        return 1.0 - total * math.exp(-x + a * math.log(x) - math.lgamma(a))
    # upper continued fraction (modified Lentz)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def chi2_upper_tail(x: float, df: int) -> float:
    """P(X >= x) for a chi-square variable with ``df`` degrees of freedom."""
    if x <= 0.0:
        return 1.0
    return _regularized_gamma_q(df / 2.0, x / 2.0)


def kruskal_wallis(groups, alpha: float = 0.05) -> StatTestResult:
    """Kruskal-Wallis rank test over two or more groups.

    Mid-ranks with tie correction; p from the chi-square upper tail with
    k-1 degrees of freedom. All-identical data gives H = 0, p = 1.
    ``direction`` is "+" when the first group holds the lowest mean rank
    of a rejected comparison, "-" otherwise, "=" when not rejected.
    """
    samples = [_as_sample(g, f"group{i}") for i, g in enumerate(groups)]
    if len(samples) < 2:
        raise DegenerateInput("need at least two groups")

    pooled = [v for s in samples for v in s.values]
    first = pooled[0]
    if all(v == first for v in pooled):
        return StatTestResult(0.0, 1.0, False, alpha, "=")

    ranks = _midranks(pooled)
    n_total = len(pooled)
    mean_ranks = []
    s = 0.0
    offset = 0
    for sample in samples:
        n = len(sample.values)
        rsum = 0.0
        for i in range(offset, offset + n):
            rsum += ranks[i]
        mean_ranks.append(rsum / n)
        s += rsum * rsum / n
        offset += n

    # single final division keeps integer-valued cases exact
    h = (12.0 * s - 3.0 * (n_total + 1.0) * n_total * (n_total + 1.0)) / (
        n_total * (n_total + 1.0)
    )
    ties = _tie_groups(pooled)
    if ties:
        correction = 1.0 - sum(t**3 - t for t in ties) / (n_total**3 - n_total)
        h /= correction

    p = chi2_upper_tail(h, len(samples) - 1)
    reject = p < alpha
    if not reject:
        direction = "="
    else:
        direction = "+" if mean_ranks[0] == min(mean_ranks) else "-"
    return StatTestResult(h, p, reject, alpha, direction)


def normalize_scores(results) -> np.ndarray:
    """Row-wise affine map onto [0, 1]; constant rows map to zeros.

    Rows are problems, columns algorithms; 0 marks the row's best (lowest)
    value and 1 its worst.
    """
    matrix = np.asarray(results, dtype=float)
    if matrix.ndim != 2:
        raise ValueError("expected a problems-by-algorithms matrix")
    if not np.all(np.isfinite(matrix)):
        raise DegenerateInput("scores must be finite")
    out = np.zeros_like(matrix)
    for i, row in enumerate(matrix):
        lo = row.min()
        hi = row.max()
        if hi > lo:
            out[i] = (row - lo) / (hi - lo)
    return out


def summarize(values) -> tuple[float, float, float]:
    """(mean, sample std, best) of a sample; std is 0 for a single value."""
    sample = _as_sample(values, "values")
    vals = sample.values
    n = len(vals)
    mean = sum(vals) / n
    if n > 1:
        var = sum((v - mean) ** 2 for v in vals) / (n - 1)
        std = math.sqrt(var)
    else:
        std = 0.0
    return mean, std, min(vals)

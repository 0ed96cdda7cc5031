"""Summary statistics, Welch t-test, one-way ANOVA and ROC/AUC.

p-values come from the regularized incomplete beta function, evaluated
with a modified-Lentz continued fraction.  No SciPy dependency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

ALPHA = 0.05

_EPS = 1e-15
_TINY = 1e-300
_MAX_ITER = 100_000


class TooFewSamples(ValueError):
    pass


class SingleClass(ValueError):
    """Scores or labels contain only one class."""


# -- special functions --------------------------------------------------------


def _beta_cf(a: float, b: float, x: float) -> float:
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float, y: Optional[float] = None) -> float:
    """Regularized incomplete beta I_x(a, b).

    ``y`` may carry ``1 - x`` computed without cancellation by the caller.
    """
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if y is None:
        y = 1.0 - x
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log(y)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, y) / b


def t_sf_abs(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if math.isinf(t):
        return 0.0
    t2 = t * t
    return betainc(df / 2.0, 0.5, df / (df + t2), t2 / (df + t2))


def t_cdf(t: float, df: float) -> float:
    half = 0.5 * t_sf_abs(t, df)
    return 1.0 - half if t > 0 else half


def f_sf(f: float, df1: float, df2: float) -> float:
    """Upper tail P(F >= f)."""
    if f <= 0:
        return 1.0
    if math.isinf(f):
        return 0.0
    denom = df2 + df1 * f
    return betainc(df2 / 2.0, df1 / 2.0, df2 / denom, df1 * f / denom)


def _invert_decreasing(sf, target: float) -> float:
    lo, hi = 0.0, 1.0
    while sf(hi) > target:
        lo, hi = hi, hi * 2.0
        if hi > 1e300:
            return math.inf
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if sf(mid) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return 0.5 * (lo + hi)


def t_critical(df: float, tail_prob: float) -> float:
    """t such that P(T > t) = tail_prob."""
    return _invert_decreasing(lambda t: 0.5 * t_sf_abs(t, df), tail_prob)


def f_critical(df1: float, df2: float, tail_prob: float) -> float:
    return _invert_decreasing(lambda f: f_sf(f, df1, df2), tail_prob)


# -- summaries and tests ------------------------------------------------------


@dataclass(frozen=True)
class GroupSummary:
    name: str
    n: int
    sum: float
    mean: float
    variance: float
    stddev: float
    variance_defined: bool = True


def summarize(values: Sequence[float], name: str = "") -> GroupSummary:
    """Count, sum, mean and sample variance (n - 1 denominator).

    With a single value the variance is reported as 0 and
    ``variance_defined`` is False.
    """
    vals = [float(v) for v in values]
    n = len(vals)
    if n < 1:
        raise TooFewSamples("summarize needs at least one value")
    total = math.fsum(vals)
    mean = total / n
    if n < 2:
        return GroupSummary(name, n, total, mean, 0.0, 0.0, False)
    var = math.fsum((v - mean) ** 2 for v in vals) / (n - 1)
    return GroupSummary(name, n, total, mean, var, math.sqrt(var))


@dataclass(frozen=True)
class StatTestResult:
    statistic: float
    df: Union[float, tuple[float, float]]
    p_one_tail: float
    p_two_tail: Optional[float]
    crit_one_tail: float
    crit_two_tail: Optional[float]
    groups: tuple[GroupSummary, ...] = ()
    degenerate: bool = False


def welch_t_test(a: Sequence[float], b: Sequence[float], names=("a", "b")) -> StatTestResult:
    """Unequal-variance two-sample t-test with Welch-Satterthwaite df.

    ``p_one_tail`` is the tail beyond ``|t|``, as spreadsheet t-test tables
    report it; check the sign of ``statistic`` for direction.
    """
    if len(a) < 2 or len(b) < 2:
        raise TooFewSamples("each sample needs at least two values")
    sa, sb = summarize(a, names[0]), summarize(b, names[1])
    va, vb = sa.variance / sa.n, sb.variance / sb.n
    se2 = va + vb
    diff = sa.mean - sb.mean
    denom = va * va / (sa.n - 1) + vb * vb / (sb.n - 1)
    df = se2 * se2 / denom if denom > 0 else float(sa.n + sb.n - 2)
    if se2 > 0:
        t = diff / math.sqrt(se2)
    else:
        t = 0.0 if diff == 0 else math.copysign(math.inf, diff)
    p_two = t_sf_abs(t, df)
    return StatTestResult(
        statistic=t,
        df=df,
        p_one_tail=0.5 * p_two,
        p_two_tail=p_two,
        crit_one_tail=t_critical(df, ALPHA),
        crit_two_tail=t_critical(df, ALPHA / 2),
        groups=(sa, sb),
        degenerate=se2 == 0 and diff != 0,
    )


def one_way_anova(groups: Sequence[Sequence[float]], names: Optional[Sequence[str]] = None) -> StatTestResult:
    """Between-subjects one-way ANOVA.

    Zero within-group variance gives F = 0 when the group means agree and
    F = inf with ``degenerate=True`` when they do not.
    """
    k = len(groups)
    if k < 2:
        raise TooFewSamples("ANOVA needs at least two groups")
    if any(len(g) < 1 for g in groups):
        raise TooFewSamples("every group needs at least one value")
    names = list(names) if names is not None else [f"g{i}" for i in range(k)]
    summaries = [summarize(g, nm) for g, nm in zip(groups, names)]
    N = sum(s.n for s in summaries)
    if N <= k:
        raise TooFewSamples("ANOVA needs more observations than groups")
    grand = math.fsum(s.sum for s in summaries) / N
    ss_between = math.fsum(s.n * (s.mean - grand) ** 2 for s in summaries)
    ss_within = math.fsum(
        (float(v) - s.mean) ** 2 for g, s in zip(groups, summaries) for v in g
    )
    df1, df2 = k - 1, N - k
    degenerate = False
    if ss_within == 0:
        if ss_between == 0:
            F = 0.0
        else:
            F, degenerate = math.inf, True
    else:
        F = (ss_between / df1) / (ss_within / df2)
    return StatTestResult(
        statistic=F,
        df=(float(df1), float(df2)),
        p_one_tail=f_sf(F, df1, df2),
        p_two_tail=None,
        crit_one_tail=f_critical(df1, df2, ALPHA),
        crit_two_tail=None,
        groups=tuple(summaries),
        degenerate=degenerate,
    )


# -- ROC / AUC ----------------------------------------------------------------


@dataclass(frozen=True)
class EvalReport:
    auc: float
    roc_points: tuple[tuple[float, float], ...]
    n_pos: int
    n_neg: int


def average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks, ties sharing the mean of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2.0 + 1.0
        for idx in order[i:j + 1]:
            ranks[idx] = r
        i = j + 1
    return ranks


def roc_curve(scores: Sequence[float], labels: Sequence[int]) -> tuple[tuple[float, float], ...]:
    n_pos = sum(1 for y in labels if y)
    n_neg = len(labels) - n_pos
    pairs = sorted(zip(scores, labels), key=lambda p: -p[0])
    points = [(0.0, 0.0)]
    tp = fp = 0
    i = 0
    while i < len(pairs):
        thr = pairs[i][0]
        while i < len(pairs) and pairs[i][0] == thr:
            if pairs[i][1]:
                tp += 1
            else:
                fp += 1
            i += 1
        points.append((fp / n_neg, tp / n_pos))
    return tuple(points)


def trapezoid_area(points: Sequence[tuple[float, float]]) -> float:
    return math.fsum(
        (x1 - x0) * (y0 + y1) / 2.0 for (x0, y0), (x1, y1) in zip(points, points[1:])
    )


def roc_auc(scores: Sequence[float], labels: Sequence[int]) -> EvalReport:
    """Mann-Whitney AUC with average ranks for ties; labels are 1 (positive) / 0."""
    if len(scores) != len(labels):
        raise ValueError("scores and labels differ in length")
    labels = [1 if y else 0 for y in labels]
    n_pos = sum(labels)
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClass("AUC needs both positive and negative examples")
    ranks = average_ranks([float(s) for s in scores])
    rank_sum = math.fsum(r for r, y in zip(ranks, labels) if y)
    auc = (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)
    return EvalReport(auc, roc_curve(scores, labels), n_pos, n_neg)

"""Independent reference computations used by the tests.

Nothing here imports the code under test.
"""

import itertools
from collections import Counter

import mpmath

mpmath.mp.dps = 50


def llr_oracle(n11, n12, n21, n22):
    cells = [[n11, n12], [n21, n22]]
    N = mpmath.mpf(n11 + n12 + n21 + n22)
    rows = [n11 + n12, n21 + n22]
    cols = [n11 + n21, n12 + n22]
    total = mpmath.mpf(0)
    for i, j in itertools.product(range(2), range(2)):
        n = cells[i][j]
        if n:
            e = mpmath.mpf(rows[i]) * cols[j] / N
            total += n * mpmath.log(n / e)
    return 2 * total


def brute_pairs(streams):
    joint = Counter()
    for s in streams:
        for i in range(len(s) - 1):
            joint[(s[i], s[i + 1])] += 1
    return joint


def welch_oracle(a, b):
    a = [mpmath.mpf(x) for x in a]
    b = [mpmath.mpf(x) for x in b]
    ma, mb = sum(a) / len(a), sum(b) / len(b)
    va = sum((x - ma) ** 2 for x in a) / (len(a) - 1)
    vb = sum((x - mb) ** 2 for x in b) / (len(b) - 1)
    sa, sb = va / len(a), vb / len(b)
    t = (ma - mb) / mpmath.sqrt(sa + sb)
    df = (sa + sb) ** 2 / (sa ** 2 / (len(a) - 1) + sb ** 2 / (len(b) - 1))
    return t, df


def pooled_t_oracle(a, b):
    a = [mpmath.mpf(x) for x in a]
    b = [mpmath.mpf(x) for x in b]
    na, nb = len(a), len(b)
    ma, mb = sum(a) / na, sum(b) / nb
    ss = sum((x - ma) ** 2 for x in a) + sum((x - mb) ** 2 for x in b)
    sp2 = ss / (na + nb - 2)
    return (ma - mb) / mpmath.sqrt(sp2 * (mpmath.mpf(1) / na + mpmath.mpf(1) / nb))


def anova_oracle(groups):
    gs = [[mpmath.mpf(x) for x in g] for g in groups]
    allv = [x for g in gs for x in g]
    grand = sum(allv) / len(allv)
    means = [sum(g) / len(g) for g in gs]
    ssb = sum(len(g) * (m - grand) ** 2 for g, m in zip(gs, means))
    ssw = sum((x - m) ** 2 for g, m in zip(gs, means) for x in g)
    k, N = len(gs), len(allv)
    return (ssb / (k - 1)) / (ssw / (N - k))


def betainc_quadrature(a, b, x):
    """I_x(a, b) by direct numerical integration of the beta density."""
    a, b, x = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(x)
    f = lambda t: t ** (a - 1) * (1 - t) ** (b - 1)
    return mpmath.quad(f, [0, x]) / mpmath.beta(a, b)


def t_two_tail_quadrature(t, df):
    """P(|T| >= |t|) by integrating the Student t density over the tails."""
    t, df = abs(mpmath.mpf(t)), mpmath.mpf(df)
    c = mpmath.gamma((df + 1) / 2) / (mpmath.sqrt(df * mpmath.pi) * mpmath.gamma(df / 2))
    dens = lambda u: c * (1 + u * u / df) ** (-(df + 1) / 2)
    return 2 * mpmath.quad(dens, [t, mpmath.inf])


def f_upper_quadrature(f, d1, d2):
    f, d1, d2 = mpmath.mpf(f), mpmath.mpf(d1), mpmath.mpf(d2)
    c = (d1 / d2) ** (d1 / 2) / mpmath.beta(d1 / 2, d2 / 2)
    dens = lambda u: c * u ** (d1 / 2 - 1) * (1 + d1 * u / d2) ** (-(d1 + d2) / 2)
    return mpmath.quad(dens, [f, mpmath.inf])


def auc_all_pairs(scores, labels):
    pos = [s for s, y in zip(scores, labels) if y]
    neg = [s for s, y in zip(scores, labels) if not y]
    wins = sum(1.0 if p > n else 0.5 if p == n else 0.0 for p in pos for n in neg)
    return wins / (len(pos) * len(neg))

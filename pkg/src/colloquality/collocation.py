"""Bigram counting and Dunning log-likelihood scoring.

Pairs are counted between adjacent tokens of already-normalized streams,
never across stream (document) boundaries.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

Pair = tuple[str, str]


class MissingPair(KeyError):
    pass


@dataclass
class BigramCounts:
    joint: Counter = field(default_factory=Counter)
    left_margin: Counter = field(default_factory=Counter)
    right_margin: Counter = field(default_factory=Counter)
    total: int = 0

    def add_stream(self, tokens: Sequence[str]) -> None:
        toks = list(tokens)
        for w1, w2 in zip(toks, toks[1:]):
            self.joint[(w1, w2)] += 1
            self.left_margin[w1] += 1
            self.right_margin[w2] += 1
        self.total += max(len(toks) - 1, 0)

    def __add__(self, other: "BigramCounts") -> "BigramCounts":
        return BigramCounts(
            self.joint + other.joint,
            self.left_margin + other.left_margin,
            self.right_margin + other.right_margin,
            self.total + other.total,
        )


class Contingency(NamedTuple):
    n11: int
    n12: int
    n21: int
    n22: int

    @property
    def total(self) -> int:
        return self.n11 + self.n12 + self.n21 + self.n22


@dataclass(frozen=True)
class CollocationRecord:
    word1: str
    word2: str
    count: int
    llr: float

    @property
    def pair(self) -> Pair:
        return (self.word1, self.word2)


def count_bigrams(streams: Iterable[Sequence[str]]) -> BigramCounts:
    counts = BigramCounts()
    for stream in streams:
        counts.add_stream(stream)
    return counts


def contingency(pair: Pair, counts: BigramCounts) -> Contingency:
    n11 = counts.joint.get(pair, 0)
    if n11 == 0:
        raise MissingPair(pair)
    n12 = counts.left_margin[pair[0]] - n11
    n21 = counts.right_margin[pair[1]] - n11
    return Contingency(n11, n12, n21, counts.total - n11 - n12 - n21)


def _term(n: int, row: int, col: int, total: int) -> float:
    # n * ln(n / e) with e = row * col / total; the integer ratio keeps
    # exact independence at exactly zero.
    if n == 0:
        return 0.0
    return n * math.log((n * total) / (row * col))


def llr(c: Contingency) -> float:
    """G² = 2 Σ n_ij ln(n_ij / e_ij), floored at 0."""
    n11, n12, n21, n22 = c
    total = n11 + n12 + n21 + n22
    r1, r2 = n11 + n12, n21 + n22
    c1, c2 = n11 + n21, n12 + n22
    g = 2.0 * math.fsum((
        _term(n11, r1, c1, total),
        _term(n12, r1, c2, total),
        _term(n21, r2, c1, total),
        _term(n22, r2, c2, total),
    ))
    return max(g, 0.0)


def score_counts(counts: BigramCounts, min_freq: int = 5) -> list[CollocationRecord]:
    if min_freq < 1:
        raise ValueError("min_freq must be >= 1")
    records = [
        CollocationRecord(pair[0], pair[1], n, llr(contingency(pair, counts)))
        for pair, n in counts.joint.items()
        if n >= min_freq
    ]
    records.sort(key=lambda r: (-r.llr, r.word1, r.word2))
    return records


def extract_collocations(streams: Iterable[Sequence[str]], min_freq: int = 5) -> list[CollocationRecord]:
    """Score every adjacent pair seen at least ``min_freq`` times.

    Sorted by LLR descending, ties broken by ``(word1, word2)``.
    """
    return score_counts(count_bigrams(streams), min_freq)

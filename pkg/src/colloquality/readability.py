"""Classical English readability formulas computed from :class:`TextStats`.

No clamping is applied; extreme texts can yield reading-ease values above
100 or below 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .preprocess import TextStats, text_stats

SCORE_NAMES = (
    "flesch_reading_ease",
    "flesch_kincaid_grade",
    "gunning_fog",
    "smog",
    "smog_index",
    "ari",
    "coleman_liau",
)


class DegenerateText(ValueError):
    """The text has no words or no sentences, so ratios are undefined."""


@dataclass(frozen=True)
class ReadabilityReport:
    flesch_reading_ease: float
    flesch_kincaid_grade: float
    gunning_fog: float
    smog: float
    smog_index: float
    ari: float
    coleman_liau: float
    stats: TextStats

    def scores(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in SCORE_NAMES)


# The linear formulas are evaluated in exact rational arithmetic and rounded
# once, so a score whose decimal value is exact (e.g. 121.22) is returned as
# the nearest double rather than picking up error from each operation.
_Q = Fraction


def flesch_reading_ease(words, sentences, syllables):
    return float(_Q("206.835") - _Q("1.015") * _Q(words, sentences) - _Q("84.6") * _Q(syllables, words))


def flesch_kincaid_grade(words, sentences, syllables):
    return float(_Q("0.39") * _Q(words, sentences) + _Q("11.8") * _Q(syllables, words) - _Q("15.59"))


def gunning_fog(words, sentences, complex_words):
    return float(_Q("0.4") * (_Q(words, sentences) + 100 * _Q(complex_words, words)))


def smog(sentences, complex_words):
    """McLaughlin's 1969 regression form."""
    return 1.0430 * math.sqrt(30.0 * complex_words / sentences) + 3.1291


def smog_index(sentences, complex_words):
    """The simplified count form: square root of the 30-sentence polysyllable count, plus 3."""
    return math.sqrt(30.0 * complex_words / sentences) + 3.0


def automated_readability_index(words, sentences, characters):
    return float(_Q("4.71") * _Q(characters, words) + _Q("0.5") * _Q(words, sentences) - _Q("21.43"))


def coleman_liau(words, sentences, characters):
    return float(_Q("0.0588") * 100 * _Q(characters, words) - _Q("0.296") * 100 * _Q(sentences, words) - _Q("15.8"))


def readability_report(stats: TextStats) -> ReadabilityReport:
    """All seven scores for one document.

    Raises:
        DegenerateText: if ``stats.words`` or ``stats.sentences`` is zero.
    """
    W, S = stats.words, stats.sentences
    if W < 1 or S < 1:
        raise DegenerateText(f"need at least one word and one sentence (words={W}, sentences={S})")
    Y, C, L = stats.syllables, stats.complex_words, stats.characters
    return ReadabilityReport(
        flesch_reading_ease=flesch_reading_ease(W, S, Y),
        flesch_kincaid_grade=flesch_kincaid_grade(W, S, Y),
        gunning_fog=gunning_fog(W, S, C),
        smog=smog(S, C),
        smog_index=smog_index(S, C),
        ari=automated_readability_index(W, S, L),
        coleman_liau=coleman_liau(W, S, L),
        stats=stats,
    )


def text_readability(text: str) -> ReadabilityReport:
    return readability_report(text_stats(text))

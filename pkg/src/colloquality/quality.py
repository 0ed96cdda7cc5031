"""Document quality scores against a knowledge base.

``ads`` averages the KB log-likelihood scores of the distinct collocation
types a document shares with the KB; ``adsn`` divides the same sum by the
document's raw word count instead.  Degenerate documents (no matches, no
words) score 0 rather than raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .knowledge_store import DocCollocations, KnowledgeBase, doc_collocations
from .preprocess import Document, tokenize


@dataclass(frozen=True)
class QualityScore:
    ads: float
    adsn: float
    m: int
    w: int
    matched_sum: float
    doc_id: str = ""


def _matched(doc: DocCollocations, kb: KnowledgeBase) -> list[float]:
    entries = kb.entries
    return [entries[p] for p in sorted(doc.pairs) if p in entries]


def ads(doc: DocCollocations, kb: KnowledgeBase) -> tuple[float, int, float]:
    """Return ``(ads, m, matched_sum)``."""
    scores = _matched(doc, kb)
    m = len(scores)
    total = math.fsum(scores)
    return (total / m if m else 0.0), m, total


def adsn(doc: DocCollocations, kb: KnowledgeBase, w: int) -> float:
    if w < 0:
        raise ValueError("word count must be non-negative")
    total = math.fsum(_matched(doc, kb))
    return total / w if w else 0.0


def score_document(text: str | Document, kb: KnowledgeBase, stopwords=None) -> QualityScore:
    doc = text if isinstance(text, Document) else Document("<text>", text)
    pairs = doc_collocations(doc, stopwords)
    w = len(tokenize(doc.text).tokens)
    a, m, total = ads(pairs, kb)
    return QualityScore(
        ads=a,
        adsn=total / w if w else 0.0,
        m=m,
        w=w,
        matched_sum=total,
        doc_id=doc.id,
    )

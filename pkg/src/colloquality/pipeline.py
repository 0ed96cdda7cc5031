"""Per-corpus processing shared by the CLI and the end-to-end tests.

Work is per document and optionally spread over a process pool; results
are always returned sorted by document id.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from .classify import FEATURE_NAMES, LABEL_VALUES, FeatureVector
from .knowledge_store import KnowledgeBase
from .preprocess import Document, text_stats
from .quality import QualityScore, score_document
from .readability import DegenerateText, ReadabilityReport, readability_report

logger = logging.getLogger(__name__)

READABILITY_COLUMNS = ("id",) + FEATURE_NAMES[:13]
SCORE_COLUMNS = ("id", "ads", "adsn", "m", "w")
FEATURE_COLUMNS = ("id", "label") + FEATURE_NAMES


def parallel_map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _readability_one(doc: Document):
    try:
        return doc.id, readability_report(text_stats(doc.text))
    except DegenerateText:
        return doc.id, None


def corpus_readability(docs: Sequence[Document], jobs: int = 1) -> tuple[list[tuple[str, ReadabilityReport]], list[str]]:
    """Reports for every non-degenerate document, plus the ids that were skipped."""
    results = parallel_map(_readability_one, list(docs), jobs)
    skipped = [i for i, r in results if r is None]
    for doc_id in skipped:
        logger.warning("%s: no words or sentences, skipped", doc_id)
    kept = sorted(((i, r) for i, r in results if r is not None), key=lambda p: p[0])
    return kept, skipped


def _score_one(doc: Document, kb: KnowledgeBase, stopwords) -> QualityScore:
    return score_document(doc, kb, stopwords)


def corpus_scores(docs: Sequence[Document], kb: KnowledgeBase, stopwords=None, jobs: int = 1) -> list[QualityScore]:
    scores = parallel_map(partial(_score_one, kb=kb, stopwords=stopwords), list(docs), jobs)
    return sorted(scores, key=lambda s: s.doc_id)


def _label_value(label: Optional[str]) -> Optional[int]:
    return None if label is None else LABEL_VALUES[label]


def _features_one(doc: Document, kb: KnowledgeBase, stopwords) -> Optional[FeatureVector]:
    try:
        report = readability_report(text_stats(doc.text))
    except DegenerateText:
        return None
    q = score_document(doc, kb, stopwords)
    values = report.scores() + tuple(float(v) for v in report.stats.as_tuple()) + (q.ads, q.adsn)
    return FeatureVector(doc.id, FEATURE_NAMES, values, _label_value(doc.label))


def document_features(doc: Document, kb: KnowledgeBase, stopwords=None) -> FeatureVector:
    """All fifteen features of one document.

    Raises:
        DegenerateText: when readability is undefined for the document.
    """
    fv = _features_one(doc, kb, stopwords)
    if fv is None:
        raise DegenerateText(f"{doc.id}: no words or sentences")
    return fv


def corpus_features(docs: Sequence[Document], kb: KnowledgeBase, stopwords=None, jobs: int = 1):
    """Feature vectors for a corpus; degenerate documents are skipped and returned by id."""
    docs = list(docs)
    out = parallel_map(partial(_features_one, kb=kb, stopwords=stopwords), docs, jobs)
    skipped = [d.id for d, fv in zip(docs, out) if fv is None]
    for doc_id in skipped:
        logger.warning("%s: no words or sentences, skipped", doc_id)
    return sorted((fv for fv in out if fv is not None), key=lambda f: f.doc_id), skipped


# -- TSV --------------------------------------------------------------------


def format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_tsv(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = ["\t".join(columns)]
    lines.extend("\t".join(format_value(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def readability_rows(reports: Iterable[tuple[str, ReadabilityReport]]):
    for doc_id, r in reports:
        yield (doc_id,) + r.scores() + r.stats.as_tuple()


def score_rows(scores: Iterable[QualityScore]):
    for s in scores:
        yield (s.doc_id, s.ads, s.adsn, s.m, s.w)


def feature_rows(fvs: Iterable[FeatureVector]):
    names = {v: k for k, v in LABEL_VALUES.items()}
    for fv in fvs:
        yield (fv.doc_id, names.get(fv.label, "")) + fv.values


class TableError(ValueError):
    pass


def read_table(path: str | Path) -> tuple[list[str], list[list[str]]]:
    """Header and rows of a TSV file; every row must match the header width."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or not lines[0]:
        raise TableError(f"{path}:1: missing header")
    header = lines[0].split("\t")
    rows = []
    for lineno, line in enumerate(lines[1:], 2):
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != len(header):
            raise TableError(f"{path}:{lineno}: expected {len(header)} fields, got {len(cols)}")
        rows.append(cols)
    return header, rows


def read_column(path: str | Path, column: str) -> list[float]:
    header, rows = read_table(path)
    if column not in header:
        raise TableError(f"{path}:1: no column {column!r} (have {', '.join(header)})")
    j = header.index(column)
    out = []
    for lineno, row in enumerate(rows, 2):
        try:
            v = float(row[j])
        except ValueError:
            raise TableError(f"{path}:{lineno}: {column} is not a number: {row[j]!r}") from None
        out.append(v)
    return out


def read_features(path: str | Path) -> list[FeatureVector]:
    header, rows = read_table(path)
    if header[:2] != ["id", "label"] or len(header) < 3:
        raise TableError(f"{path}:1: expected id<TAB>label<TAB>features...")
    names = tuple(header[2:])
    out = []
    for lineno, row in enumerate(rows, 2):
        label = row[1] or None
        if label is not None and label not in LABEL_VALUES:
            raise TableError(f"{path}:{lineno}: unknown label {label!r}")
        try:
            values = tuple(float(v) for v in row[2:])
        except ValueError:
            raise TableError(f"{path}:{lineno}: non-numeric feature value") from None
        if not all(math.isfinite(v) for v in values):
            raise TableError(f"{path}:{lineno}: non-finite feature value")
        out.append(FeatureVector(row[0], names, values, _label_value(label)))
    return out

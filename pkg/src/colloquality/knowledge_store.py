"""The collocation knowledge base built from a reference corpus, and its TSV files.

KB file layout::

    # meta {"corpus_name": ..., "min_freq": ..., ...}
    word1<TAB>word2<TAB>count<TAB>llr
    source<TAB>code<TAB>812<TAB>132755.2
    ...

Scores are written with ``repr`` (shortest string that parses back to the
same double) so a save/load/save cycle is byte-identical.

Per-document pair files are ``doc_id<TAB>word1<TAB>word2`` with a header.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from .collocation import CollocationRecord, Pair, count_bigrams, score_counts
from .preprocess import Corpus, Document, load_corpus, normalize, tokenize

logger = logging.getLogger(__name__)

KB_HEADER = "word1\tword2\tcount\tllr"
DOC_HEADER = "doc_id\tword1\tword2"
_META_PREFIX = "# meta "


class EmptyCorpus(ValueError):
    pass


class FormatError(ValueError):
    def __init__(self, message: str, line: int, path: str = ""):
        self.line = line
        self.path = path
        where = f"{path}:{line}" if path else f"line {line}"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class KBMeta:
    corpus_name: str = ""
    built_at: str = ""
    n_documents: int = 0
    n_bigram_positions: int = 0
    min_freq: int = 1
    skipped_files: tuple[str, ...] = ()


@dataclass(frozen=True)
class KnowledgeBase:
    entries: Mapping[Pair, float]
    counts: Mapping[Pair, int]
    meta: KBMeta = field(default_factory=KBMeta)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))
        object.__setattr__(self, "counts", MappingProxyType(dict(self.counts)))

    def __reduce__(self):
        return (type(self), (dict(self.entries), dict(self.counts), self.meta))

    @classmethod
    def from_records(cls, records: Iterable[CollocationRecord], meta: KBMeta = KBMeta()) -> "KnowledgeBase":
        records = list(records)
        return cls(
            {r.pair: r.llr for r in records},
            {r.pair: r.count for r in records},
            meta,
        )

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, pair) -> bool:
        return pair in self.entries

    def get(self, word1: str, word2: str) -> Optional[float]:
        return self.entries.get((word1.lower(), word2.lower()))

    def records(self) -> list[CollocationRecord]:
        recs = [CollocationRecord(w1, w2, self.counts.get((w1, w2), 0), s) for (w1, w2), s in self.entries.items()]
        recs.sort(key=lambda r: (-r.llr, r.word1, r.word2))
        return recs


def lookup(kb: KnowledgeBase, word1: str, word2: str) -> Optional[float]:
    """LLR for the pair, or ``None`` when the KB has never seen it."""
    return kb.get(word1, word2)


def build_kb_from_documents(
    documents: Sequence[Document],
    min_freq: int = 5,
    stopwords=None,
    corpus_name: str = "",
    built_at: str = "",
    skipped: Sequence[str] = (),
) -> KnowledgeBase:
    if not documents:
        raise EmptyCorpus("no readable documents in corpus")
    counts = count_bigrams(normalize(tokenize(d.text), stopwords) for d in documents)
    meta = KBMeta(
        corpus_name=corpus_name,
        built_at=built_at,
        n_documents=len(documents),
        n_bigram_positions=counts.total,
        min_freq=min_freq,
        skipped_files=tuple(skipped),
    )
    return KnowledgeBase.from_records(score_counts(counts, min_freq), meta)


def _corpus_timestamp(directory: Path, corpus: Corpus) -> str:
    # Newest input mtime, so rebuilding unchanged inputs gives identical files.
    mtimes = [p.stat().st_mtime for p in directory.rglob("*.txt") if p.is_file()]
    if not mtimes:
        return ""
    ts = datetime.fromtimestamp(int(max(mtimes)), tz=timezone.utc)
    return ts.isoformat().replace("+00:00", "Z")


def build_kb(
    corpus_dir: str | Path,
    min_freq: int = 5,
    stopwords=None,
    manifest: Optional[str | Path] = None,
    corpus_name: Optional[str] = None,
) -> KnowledgeBase:
    """Tokenize, normalize, count and score a whole reference corpus."""
    root = Path(corpus_dir)
    corpus = load_corpus(root, manifest)
    if not corpus.documents:
        raise EmptyCorpus(f"no readable .txt documents under {root}")
    return build_kb_from_documents(
        corpus.documents,
        min_freq=min_freq,
        stopwords=stopwords,
        corpus_name=root.name if corpus_name is None else corpus_name,
        built_at=_corpus_timestamp(root, corpus),
        skipped=corpus.skipped,
    )


def _check_token(tok: str) -> None:
    if not tok or any(ch.isspace() for ch in tok):
        raise ValueError(f"token {tok!r} cannot be stored in a TSV row")


def save_kb(kb: KnowledgeBase, path: str | Path) -> None:
    meta = asdict(kb.meta)
    meta["skipped_files"] = list(kb.meta.skipped_files)
    lines = [_META_PREFIX + json.dumps(meta, sort_keys=True, ensure_ascii=False), KB_HEADER]
    for r in kb.records():
        _check_token(r.word1)
        _check_token(r.word2)
        lines.append(f"{r.word1}\t{r.word2}\t{r.count}\t{r.llr!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_kb(path: str | Path) -> KnowledgeBase:
    """Parse a KB file.

    Raises:
        FormatError: carrying the 1-based line number of the first bad line.
    """
    path = str(path)
    meta = KBMeta()
    entries: dict[Pair, float] = {}
    counts: dict[Pair, int] = {}
    seen_header = False
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not seen_header:
                if line.startswith(_META_PREFIX):
                    try:
                        data = json.loads(line[len(_META_PREFIX):])
                        data["skipped_files"] = tuple(data.get("skipped_files", ()))
                        meta = KBMeta(**data)
                    except (ValueError, TypeError) as exc:
                        raise FormatError(f"bad meta line: {exc}", lineno, path) from None
                    continue
                if line.startswith("#"):
                    continue
                if line != KB_HEADER:
                    raise FormatError(f"expected header {KB_HEADER!r}", lineno, path)
                seen_header = True
                continue
            if not raw.endswith("\n"):
                raise FormatError("truncated row (no line terminator)", lineno, path)
            cols = line.split("\t")
            if len(cols) != 4 or not cols[0] or not cols[1]:
                raise FormatError(f"expected 4 tab-separated fields, got {len(cols)}", lineno, path)
            try:
                count = int(cols[2])
                score = float(cols[3])
            except ValueError:
                raise FormatError("count must be an integer and llr a number", lineno, path) from None
            if count < 0 or not math.isfinite(score) or score < 0:
                raise FormatError("count and llr must be finite and non-negative", lineno, path)
            pair = (cols[0], cols[1])
            if pair in entries:
                raise FormatError(f"duplicate pair {pair}", lineno, path)
            entries[pair] = score
            counts[pair] = count
    if not seen_header:
        raise FormatError("missing header", 1, path)
    return KnowledgeBase(entries, counts, meta)


# -- per-document collocations ----------------------------------------------


@dataclass(frozen=True)
class DocCollocations:
    doc_id: str
    pairs: frozenset[Pair]

    def __len__(self) -> int:
        return len(self.pairs)


def doc_collocations(document: Document | str, stopwords=None) -> DocCollocations:
    """Distinct adjacent pairs of one document after normalization, unfiltered."""
    if isinstance(document, str):
        document = Document("<text>", document)
    toks = normalize(tokenize(document.text), stopwords).tokens
    return DocCollocations(document.id, frozenset(zip(toks, toks[1:])))


def save_doc_collocations(items: Iterable[DocCollocations], path: str | Path) -> None:
    lines = [DOC_HEADER]
    for dc in items:
        for w1, w2 in sorted(dc.pairs):
            lines.append(f"{dc.doc_id}\t{w1}\t{w2}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_doc_collocations(path: str | Path) -> list[DocCollocations]:
    path = str(path)
    order: list[str] = []
    pairs: dict[str, set] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if lineno == 1:
                if line != DOC_HEADER:
                    raise FormatError(f"expected header {DOC_HEADER!r}", lineno, path)
                continue
            cols = line.split("\t")
            if len(cols) != 3 or not all(cols):
                raise FormatError("expected doc_id<TAB>word1<TAB>word2", lineno, path)
            if cols[0] not in pairs:
                order.append(cols[0])
                pairs[cols[0]] = set()
            pairs[cols[0]].add((cols[1], cols[2]))
    return [DocCollocations(d, frozenset(pairs[d])) for d in order]

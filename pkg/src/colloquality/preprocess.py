"""Tokenization, sentence splitting, syllable counting and corpus ingestion.

Everything downstream (readability, collocations, quality scores) works off
the token streams and counts produced here.  All functions are pure.
"""

from __future__ import annotations

import logging
import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

logger = logging.getLogger(__name__)

HIGH = "High"
LOW = "Low"
LABELS = (HIGH, LOW)

_SENTENCE_BREAK = re.compile(r"(?<=[.!?])\s+")
_VOWEL_GROUPS = re.compile(r"[aeiouy]+")


class CorpusError(Exception):
    """Raised for unusable corpus directories or manifests."""


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    label: Optional[str] = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")
        if self.label is not None and self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {self.label!r}")


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[str, ...]
    source_id: str = ""

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]


@dataclass(frozen=True)
class TextStats:
    characters: int = 0
    syllables: int = 0
    words: int = 0
    complex_words: int = 0
    sentences: int = 0
    commas: int = 0

    FIELDS = ("characters", "syllables", "words", "complex_words", "sentences", "commas")

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, f) for f in self.FIELDS)


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def _strip_punct(token: str) -> str:
    start, end = 0, len(token)
    while start < end and _is_punct(token[start]):
        start += 1
    while end > start and _is_punct(token[end - 1]):
        end -= 1
    return token[start:end]


def tokenize(text: str, source_id: str = "") -> TokenStream:
    """Split on whitespace, strip edge punctuation, lowercase.

    Internal punctuation survives (``state-of-the-art``, ``v2.0``).
    Symbols (``$``, ``#``) are treated like punctuation at token edges.
    """
    tokens = []
    for raw in text.split():
        tok = _strip_punct(raw.lower())
        if tok:
            tokens.append(tok)
    return TokenStream(tuple(tokens), source_id)


def split_sentences(text: str) -> list[str]:
    """Split after ``.``, ``!`` or ``?`` when followed by whitespace or end of text.

    Deliberately naive: abbreviations such as "e.g." end a sentence.
    Fragments without any word token are dropped, so the result is
    non-empty exactly when the text contains a word.
    """
    parts = _SENTENCE_BREAK.split(text.strip())
    return [p for p in (s.strip() for s in parts) if p and tokenize(p).tokens]


@lru_cache(maxsize=65536)
def count_syllables(word: str) -> int:
    """Vowel-group heuristic with a silent terminal ``e`` rule; never below 1."""
    w = word.lower()
    n = len(_VOWEL_GROUPS.findall(w))
    if n > 1 and w.endswith("e") and len(w) > 1 and w[-2] not in "aeiouy":
        n -= 1
    return max(n, 1)


def load_stopwords(path: Optional[str | Path] = None) -> frozenset[str]:
    """Read a one-word-per-line stopword file; the bundled English list by default."""
    if path is None:
        text = resources.files("colloquality").joinpath("data/stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return frozenset(line.strip().lower() for line in text.splitlines() if line.strip())


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    return load_stopwords()


def normalize(stream: TokenStream, stopwords: Optional[Iterable[str]] = None) -> TokenStream:
    """Drop stopwords and pure-punctuation tokens; survivors become adjacent."""
    stop = default_stopwords() if stopwords is None else stopwords
    kept = tuple(
        t for t in stream.tokens
        if t not in stop and not all(_is_punct(ch) for ch in t)
    )
    return TokenStream(kept, stream.source_id)


def text_stats(text: str) -> TextStats:
    """The six surface counts of a raw (stopwords included) text."""
    words = tokenize(text).tokens
    syllables = complex_words = 0
    for w in words:
        s = count_syllables(w)
        syllables += s
        if s >= 3:
            complex_words += 1
    return TextStats(
        characters=sum(1 for ch in text if ch.isalnum()),
        syllables=syllables,
        words=len(words),
        complex_words=complex_words,
        sentences=len(split_sentences(text)) if words else 0,
        commas=text.count(","),
    )


# -- corpus ingestion -------------------------------------------------------


@dataclass
class Corpus:
    documents: list[Document]
    skipped: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)


def read_manifest(path: str | Path) -> list[tuple[str, str, Optional[str]]]:
    """Parse ``path<TAB>id<TAB>label`` rows.  A leading ``path`` header is allowed."""
    rows = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if lineno == 1 and cols[0] == "path":
                continue
            if len(cols) < 2 or len(cols) > 3 or not cols[0] or not cols[1]:
                raise CorpusError(f"{path}:{lineno}: expected path<TAB>id[<TAB>label]")
            label = cols[2] if len(cols) == 3 and cols[2] else None
            if label is not None and label not in LABELS:
                raise CorpusError(f"{path}:{lineno}: unknown label {label!r}")
            if cols[1] in seen:
                raise CorpusError(f"{path}:{lineno}: duplicate document id {cols[1]!r}")
            seen.add(cols[1])
            rows.append((cols[0], cols[1], label))
    return rows


def load_corpus(
    directory: str | Path,
    manifest: Optional[str | Path] = None,
    label: Optional[str] = None,
) -> Corpus:
    """Load every ``.txt`` file under ``directory`` (recursively, sorted by path).

    Without a manifest, the id is the path relative to ``directory`` and
    ``label`` (if given) applies to every document.  Unreadable or non-UTF-8
    files are skipped with a warning and listed in ``Corpus.skipped``.
    """
    root = Path(directory)
    if not root.is_dir():
        raise CorpusError(f"corpus directory not found: {root}")
    if manifest is not None:
        entries = [(root / p, i, lab) for p, i, lab in read_manifest(manifest)]
    else:
        entries = [
            (p, p.relative_to(root).as_posix(), label)
            for p in sorted(root.rglob("*.txt"))
            if p.is_file()
        ]
    docs, skipped = [], []
    for path, doc_id, lab in entries:
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            logger.warning("skipping %s: %s", path, exc)
            skipped.append(doc_id)
            continue
        docs.append(Document(doc_id, text, lab))
    return Corpus(docs, skipped)


def token_streams(documents: Sequence[Document], stopwords=None) -> list[TokenStream]:
    """Normalized token stream per document, in input order."""
    return [normalize(tokenize(d.text, d.id), stopwords) for d in documents]

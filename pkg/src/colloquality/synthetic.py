"""Deterministic synthetic corpora for demos and end-to-end checks.

A "domain" is a fixed list of two-word technical phrases.  Reference
("main") documents use them at a steady rate with a Zipf-like preference
for the head of the list, so the knowledge base assigns head phrases large
log-likelihood scores.  Labelled test documents come in two classes:

* ``High``: head-heavy phrase use, somewhat shorter sentences, longer texts;
* ``Low``: sparser, flatter phrase use mixed with off-domain pairs.

The signals overlap per document, so no single feature separates classes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from .preprocess import HIGH, LOW, Document

TECH_PHRASES = (
    ("source", "code"), ("training", "set"), ("experimental", "results"),
    ("augmented", "reality"), ("distributed", "system"), ("neural", "network"),
    ("feature", "selection"), ("data", "mining"), ("information", "retrieval"),
    ("decision", "tree"), ("support", "vector"), ("gradient", "descent"),
    ("search", "engine"), ("query", "expansion"), ("knowledge", "base"),
    ("loss", "function"), ("time", "series"), ("social", "network"),
    ("random", "forest"), ("hash", "table"), ("linear", "regression"),
    ("matrix", "factorization"), ("graph", "partitioning"), ("cluster", "analysis"),
    ("language", "model"), ("recommender", "system"), ("anomaly", "detection"),
    ("cross", "validation"), ("sparse", "representation"), ("state", "vector"),
    ("hidden", "layer"), ("test", "collection"), ("user", "study"),
    ("baseline", "method"), ("parameter", "tuning"), ("ground", "truth"),
    ("running", "time"), ("upper", "bound"), ("objective", "function"),
    ("evaluation", "metric"),
)

OFF_DOMAIN_PHRASES = (
    ("artificial", "data"), ("computer", "program"), ("good", "result"),
    ("new", "method"), ("big", "problem"), ("fast", "machine"),
    ("simple", "network"), ("strong", "growth"), ("modern", "device"),
    ("useful", "tool"), ("high", "speed"), ("main", "idea"),
    ("general", "approach"), ("large", "amount"), ("common", "way"),
)

FILLER = tuple("""
approach analysis answer area aspect basis behavior benefit block board body
bridge budget call capacity care case cause center chain chance change choice
claim class clear close color column comment company control cost count course
cover current cycle deal degree demand design detail direction effect effort
element energy entry error event example factor field figure file focus form
frame gain goal group growth guide history image impact increase input issue
item kind layer length level limit line link list mark measure member memory
mode motion name need note number object offer order output owner page part
path pattern period phase piece place plan point power practice pressure price
problem process produce project quality range rate reason record region report
request resource response result return review role rule sample scale scope
score section sense sequence service share shape side sign signal size skill
source space speed stage standard step store structure style subject support
surface target task term theory topic total track trade trend unit usage value
version view volume weight window work
activity additional alternative application appropriate approximately
available certain considerable consistency corresponding development
different especially evaluation experiment frequently generally important
individual information interesting particular performance possibility
previously probability relatively significant similarity specifically
substantially sufficiently technology understanding unfortunately various
""".split())

# Stopwords sprinkled between items; normalization removes them again.
GLUE = ("the", "of", "and", "to", "in", "is", "for", "that", "with", "on", "by", "this", "are", "as", "we")

TOPIC_A = tuple("""
protein gene cell enzyme molecule membrane tissue receptor genome mutation
organism species bacteria virus antibody neuron hormone metabolism
chromosome ribosome
""".split())
TOPIC_B = tuple("""
market stock investor broker currency inflation revenue profit bank mortgage
credit asset portfolio equity bond dividend tariff economy wage loan
""".split())


def _zipf_weights(n: int, exponent: float) -> list[float]:
    return [1.0 / (i + 1) ** exponent for i in range(n)]


@dataclass(frozen=True)
class Style:
    phrase_rate: float
    mean_sentence_length: float
    n_sentences: int
    phrase_exponent: float = 0.8
    off_domain_rate: float = 0.0
    comma_rate: float = 0.08
    glue_rate: float = 0.3


def _filler_picker(rng: random.Random) -> Callable[[], str]:
    weights = _zipf_weights(len(FILLER), 1.0)
    return lambda: rng.choices(FILLER, weights)[0]


def write_text(rng: random.Random, style: Style, phrases=TECH_PHRASES) -> str:
    """One synthetic document in the given style."""
    pweights = _zipf_weights(len(phrases), style.phrase_exponent)
    filler = _filler_picker(rng)
    sentences = []
    for _ in range(style.n_sentences):
        target = max(4, round(rng.gauss(style.mean_sentence_length, 3.0)))
        words: list[str] = []
        while len(words) < target:
            if words and rng.random() < style.glue_rate:
                words.append(rng.choice(GLUE))
            r = rng.random()
            if r < style.off_domain_rate:
                words.extend(rng.choice(OFF_DOMAIN_PHRASES))
            elif r < style.off_domain_rate + style.phrase_rate:
                words.extend(rng.choices(phrases, pweights)[0])
            else:
                words.append(filler())
            if rng.random() < style.comma_rate and len(words) < target:
                words[-1] += ","
        words[-1] = words[-1].rstrip(",")
        words[0] = words[0].capitalize()
        sentences.append(" ".join(words) + ".")
    return " ".join(sentences) + "\n"


def main_style(rng: random.Random) -> Style:
    return Style(phrase_rate=0.25, mean_sentence_length=16.0, n_sentences=rng.randint(20, 30))


def high_style(rng: random.Random) -> Style:
    return Style(
        phrase_rate=rng.uniform(0.12, 0.30),
        mean_sentence_length=rng.gauss(15.5, 2.5),
        n_sentences=rng.randint(16, 34),
        phrase_exponent=0.8,
        off_domain_rate=rng.uniform(0.0, 0.06),
    )


def low_style(rng: random.Random) -> Style:
    return Style(
        phrase_rate=rng.uniform(0.04, 0.20),
        mean_sentence_length=rng.gauss(17.0, 2.5),
        n_sentences=rng.randint(12, 30),
        phrase_exponent=0.0,
        off_domain_rate=rng.uniform(0.03, 0.12),
    )


@dataclass
class Benchmark:
    main: list[Document]
    test: list[Document]


def benchmark(n_main: int = 60, n_test_per_class: int = 120, seed: int = 2017) -> Benchmark:
    """Reference corpus plus a balanced, labelled test corpus."""
    rng = random.Random(seed)
    main = [Document(f"main_{i:03d}.txt", write_text(rng, main_style(rng))) for i in range(n_main)]
    test = []
    for i in range(n_test_per_class):
        test.append(Document(f"high_{i:03d}.txt", write_text(rng, high_style(rng)), HIGH))
        test.append(Document(f"low_{i:03d}.txt", write_text(rng, low_style(rng)), LOW))
    return Benchmark(main, test)


def write_benchmark(directory: str | Path, bench: Optional[Benchmark] = None) -> Path:
    """Write ``main/``, ``test/`` and ``test_manifest.tsv`` under ``directory``."""
    bench = bench or benchmark()
    root = Path(directory)
    (root / "main").mkdir(parents=True, exist_ok=True)
    (root / "test").mkdir(parents=True, exist_ok=True)
    for d in bench.main:
        (root / "main" / d.id).write_text(d.text, encoding="utf-8")
    rows = ["path\tid\tlabel"]
    for d in bench.test:
        (root / "test" / d.id).write_text(d.text, encoding="utf-8")
        rows.append(f"{d.id}\t{d.id}\t{d.label}")
    (root / "test_manifest.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    return root


def shuffle_tokens(text: str, rng: random.Random) -> str:
    """Same words in random order: surface counts survive, collocations do not."""
    toks = text.split()
    rng.shuffle(toks)
    return " ".join(toks) + "\n"


def planted_corpus(seed: int, n_kb: int = 40, n_high: int = 20, n_low: int = 20, n_phrases: int = 30):
    """Reference docs, held-out high docs and token-shuffled low docs.

    All high documents share the first ``n_phrases`` technical phrases.
    """
    rng = random.Random(seed)
    phrases = TECH_PHRASES[:n_phrases]

    def doc():
        return write_text(rng, Style(phrase_rate=0.25, mean_sentence_length=15.0,
                                     n_sentences=rng.randint(15, 25)), phrases)

    kb_docs = [Document(f"kb_{i:03d}", doc()) for i in range(n_kb)]
    high = [Document(f"high_{i:03d}", doc(), HIGH) for i in range(n_high)]
    low = [Document(f"low_{i:03d}", shuffle_tokens(doc(), rng), LOW) for i in range(n_low)]
    return kb_docs, high, low


def two_topic_corpus(n_docs: int = 200, seed: int = 7, doc_length: int = 80) -> list[Document]:
    """Balanced corpus whose classes draw from disjoint topical vocabularies.

    Both classes share the general filler vocabulary, so only the topic
    words discriminate.
    """
    rng = random.Random(seed)
    filler = _filler_picker(rng)
    docs = []
    for i in range(n_docs):
        label, topic = (HIGH, TOPIC_A) if i % 2 == 0 else (LOW, TOPIC_B)
        words = [rng.choice(topic) if rng.random() < 0.15 else filler() for _ in range(doc_length)]
        docs.append(Document(f"topic_{i:03d}", " ".join(words) + ".\n", label))
    return docs

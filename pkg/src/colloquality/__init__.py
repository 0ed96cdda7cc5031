"""Collocation-based quality scoring of technical documents.

A knowledge base of bigram log-likelihood scores is built once from a
reference corpus of strong documents; other documents are then scored by
the collocations they share with it, alongside classical readability
formulas, and classified with linear models.
"""

from .collocation import CollocationRecord, extract_collocations, llr
from .knowledge_store import KnowledgeBase, build_kb, load_kb, lookup, save_kb
from .preprocess import Document, TextStats, text_stats, tokenize
from .quality import QualityScore, score_document
from .readability import ReadabilityReport, readability_report

__version__ = "0.1.0"

__all__ = [
    "CollocationRecord",
    "Document",
    "KnowledgeBase",
    "QualityScore",
    "ReadabilityReport",
    "TextStats",
    "build_kb",
    "extract_collocations",
    "llr",
    "load_kb",
    "lookup",
    "readability_report",
    "save_kb",
    "score_document",
    "text_stats",
    "tokenize",
]

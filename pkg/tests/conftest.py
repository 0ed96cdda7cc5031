import json
from pathlib import Path

import pytest

from colloquality.knowledge_store import KnowledgeBase

DATA = Path(__file__).parent / "data"
REPO = Path(__file__).parent.parent

# Reference main-corpus scores (word1, word2, llr); counts are unknown.
REFERENCE_SCORES = [
    ("source", "code", 132755.20),
    ("augmented", "reality", 176330.41),
    ("training", "set", 92254.74),
    ("experimental", "results", 167023.14),
]


@pytest.fixture
def reference_kb():
    return KnowledgeBase({(a, b): s for a, b, s in REFERENCE_SCORES}, {(a, b): 0 for a, b, _ in REFERENCE_SCORES})


@pytest.fixture(scope="session")
def golden():
    return json.loads((DATA / "golden_paragraph.json").read_text())


# Acceptance criteria record one line each; printed together after the run.
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])

import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sciqa.corpus import DocumentStore, RawArticle, SplitConfig, add_documents
from sciqa.retriever import fit

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            match = _CRITERION.search(getattr(report, "nodeid", ""))
            if match:
                number, slug = int(match.group(1)), match.group(2)
                status = "PASS" if outcome == "passed" else "FAIL"
                lines.append((number, f"criterion {number:>2} [{status}] {slug.replace('_', ' ')}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


def make_store(texts: dict, titles: dict | None = None, max_tokens: int = 512) -> DocumentStore:
    """Store with one article per (doc_id, text) pair."""
    titles = titles or {}
    articles = [
        RawArticle(pmid=doc_id, title=titles.get(doc_id, f"Title of {doc_id}"), paragraphs=(text,))
        for doc_id, text in texts.items()
    ]
    return add_documents(DocumentStore(), articles, SplitConfig(max_tokens=max_tokens))


@pytest.fixture
def tiny_store():
    return make_store(
        {
            "P1": "covid vaccine",
            "P2": "covid symptoms cough",
            "P3": "vaccine trial",
        }
    )


@pytest.fixture
def tiny_model(tiny_store):
    return fit(tiny_store.iter_passages())

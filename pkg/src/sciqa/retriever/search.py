"""Top-k retrieval by cosine similarity over the fitted passage index."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .. import _kernels
from ..corpus import DocumentStore
from ..errors import NotFittedError
from .model import TfIdfModel, transform


@dataclass(frozen=True)
class RetrievedDocument:
    doc_id: str
    score: float
    rank: int
    best_passages: Tuple[Tuple[str, float], ...]


def _passage_scores(model: TfIdfModel, query: str) -> List[Tuple[str, float]]:
    """All passages with nonzero cosine score, sorted by score descending and
    passage_id ascending on ties."""
    if not model.fitted:
        raise NotFittedError("model is not fitted")
    query_vec = transform(model, query)
    if not query_vec:
        return []
    posting_idx = [model.postings[t][0] for t, _ in query_vec]
    posting_weights = [model.postings[t][1] for t, _ in query_vec]
    query_weights = np.asarray([w for _, w in query_vec], dtype=np.float64)
    scores = _kernels.score_postings(posting_idx, posting_weights, query_weights, model.n_passages)
    hits = [
        (model.passage_ids[i], min(float(scores[i]), 1.0))
        for i in np.nonzero(scores > 0.0)[0]
    ]
    hits.sort(key=lambda hit: (-hit[1], hit[0]))
    return hits


def retrieve_passages(model: TfIdfModel, query: str, k: int) -> List[Tuple[str, float]]:
    """Top-k passages by cosine; zero-scoring passages are never returned."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return _passage_scores(model, query)[:k]


def retrieve_documents(
    model: TfIdfModel, store: DocumentStore, query: str, k: int
) -> List[RetrievedDocument]:
    """Top-k documents, each scored as the max over its passages' cosine
    scores and carrying those passages in score order."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    per_doc: dict[str, List[Tuple[str, float]]] = {}
    for passage_id, score in _passage_scores(model, query):
        doc_id = store.get_passage(passage_id).doc_id
        per_doc.setdefault(doc_id, []).append((passage_id, score))

    scored = sorted(
        ((passages[0][1], doc_id, passages) for doc_id, passages in per_doc.items()),
        key=lambda item: (-item[0], item[1]),
    )
    return [
        RetrievedDocument(doc_id=doc_id, score=score, rank=rank, best_passages=tuple(passages))
        for rank, (score, doc_id, passages) in enumerate(scored[:k], start=1)
    ]

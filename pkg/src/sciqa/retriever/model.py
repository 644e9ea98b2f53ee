"""TF-IDF model over passages: raw-count tf, smoothed idf, L2-normalized
sparse vectors.

Weighting scheme: tf(t, p) is the raw count of t in p, idf(t) =
ln((1 + N) / (1 + df(t))) + 1 with N the number of passages and df counting
passages containing t; passage and query vectors are tf*idf, L2-normalized,
so cosine similarity is a plain dot product.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Dict, Iterable, List, Tuple

import numpy as np

from ..corpus import Passage
from ..errors import EmptyCorpusError, NotFittedError
from ..text import terms


class TfIdfModel:
    """Fitted vocabulary, document frequencies, idf weights, and normalized
    passage vectors. Immutable once fitted; safe for concurrent retrieval."""

    def __init__(self) -> None:
        self.vocab: Dict[str, int] = {}
        self.df: np.ndarray = np.zeros(0, dtype=np.int64)
        self.idf: np.ndarray = np.zeros(0, dtype=np.float64)
        self.n_passages: int = 0
        self.passage_ids: List[str] = []
        # per passage: (term_ids int32, weights float64), aligned with passage_ids
        self.vectors: List[Tuple[np.ndarray, np.ndarray]] = []
        # per term: (passage indices int32, weights float64)
        self.postings: List[Tuple[np.ndarray, np.ndarray]] = []
        self.fitted = False

    def idf_weight(self, term: str) -> float:
        """Smoothed idf; unknown terms get the df = 0 value of the same
        formula."""
        term_id = self.vocab.get(term)
        if term_id is None:
            return math.log(1.0 + self.n_passages) + 1.0
        return float(self.idf[term_id])

    def vector_for(self, passage_id: str) -> List[Tuple[int, float]]:
        idx = self.passage_ids.index(passage_id)
        term_ids, weights = self.vectors[idx]
        return [(int(t), float(w)) for t, w in zip(term_ids, weights)]

    def _build_postings(self) -> None:
        per_term_idx: List[List[int]] = [[] for _ in range(len(self.vocab))]
        per_term_w: List[List[float]] = [[] for _ in range(len(self.vocab))]
        for passage_idx, (term_ids, weights) in enumerate(self.vectors):
            for term_id, weight in zip(term_ids, weights):
                per_term_idx[term_id].append(passage_idx)
                per_term_w[term_id].append(weight)
        self.postings = [
            (np.asarray(idx, dtype=np.int32), np.asarray(w, dtype=np.float64))
            for idx, w in zip(per_term_idx, per_term_w)
        ]


def _weight_counts(counts: Counter, model: TfIdfModel) -> Tuple[np.ndarray, np.ndarray]:
    """tf*idf weights over known terms, L2-normalized; empty when nothing is
    in vocabulary."""
    items = [(model.vocab[t], n) for t, n in counts.items() if t in model.vocab]
    if not items:
        return np.zeros(0, dtype=np.int32), np.zeros(0, dtype=np.float64)
    items.sort()
    term_ids = np.asarray([t for t, _ in items], dtype=np.int32)
    tf = np.asarray([n for _, n in items], dtype=np.float64)
    weights = tf * model.idf[term_ids]
    norm = math.sqrt(float(np.dot(weights, weights)))
    if norm > 0.0:
        weights = weights / norm
    return term_ids, weights


def fit(passages: Iterable[Passage]) -> TfIdfModel:
    """Build the model from an iterable of passages (at least one with at
    least one token)."""
    passage_list = list(passages)
    token_lists = [terms(p.text) for p in passage_list]
    if not any(token_lists):
        raise EmptyCorpusError("no passages with indexable tokens")

    model = TfIdfModel()
    model.n_passages = len(passage_list)
    model.passage_ids = [p.passage_id for p in passage_list]

    df_counter: Counter = Counter()
    for tokens in token_lists:
        for term in tokens:
            if term not in model.vocab:
                model.vocab[term] = len(model.vocab)
        df_counter.update(set(tokens))

    n_terms = len(model.vocab)
    model.df = np.zeros(n_terms, dtype=np.int64)
    for term, count in df_counter.items():
        model.df[model.vocab[term]] = count
    model.idf = np.log((1.0 + model.n_passages) / (1.0 + model.df)) + 1.0

    model.vectors = [_weight_counts(Counter(tokens), model) for tokens in token_lists]
    model._build_postings()
    model.fitted = True
    return model


def transform(model: TfIdfModel, text: str) -> List[Tuple[int, float]]:
    """Map text to a normalized sparse vector; out-of-vocabulary terms are
    ignored."""
    if not model.fitted:
        raise NotFittedError("model is not fitted")
    term_ids, weights = _weight_counts(Counter(terms(text)), model)
    return [(int(t), float(w)) for t, w in zip(term_ids, weights)]

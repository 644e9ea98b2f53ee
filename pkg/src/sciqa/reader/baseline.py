"""Deterministic lexical reader: idf-weighted span coverage with a
sqrt-length penalty.

A span's raw score is the sum of the idf of the distinct query terms it
covers divided by the square root of its token length; greedy selection
across passages picks non-overlapping spans in score order. Confidence maps
the unbounded raw score into [0, 1) via s / (1 + s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .. import _kernels
from ..corpus import Passage
from ..errors import EmptyInputError
from ..retriever.model import TfIdfModel
from ..text import tokenize


@dataclass(frozen=True)
class ReaderConfig:
    max_query_tokens: int = 100
    max_answer_tokens: int = 250
    max_seq_tokens: int = 512
    baseline_span_cap: int = 30
    no_answer_threshold: float = 0.0

    def __post_init__(self) -> None:
        for name in ("max_query_tokens", "max_answer_tokens", "max_seq_tokens", "baseline_span_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.baseline_span_cap > self.max_answer_tokens:
            raise ValueError("baseline_span_cap must be <= max_answer_tokens")
        if self.no_answer_threshold < 0:
            raise ValueError("no_answer_threshold must be >= 0")


@dataclass(frozen=True)
class Answer:
    answer: str
    type: str  # "extractive" | "no_answer"
    score: float
    context: str
    meta: Dict[str, object]
    offsets_in_document: Tuple[int, int]
    offsets_in_context: Tuple[int, int]
    doc_id: str
    passage_id: str


NO_ANSWER = Answer(
    answer="",
    type="no_answer",
    score=0.0,
    context="",
    meta={},
    offsets_in_document=(0, 0),
    offsets_in_context=(0, 0),
    doc_id="",
    passage_id="",
)


def confidence(raw_score: float) -> float:
    """Strictly increasing map of a raw span score into [0, 1)."""
    if raw_score < 0:
        raise ValueError(f"raw score must be >= 0, got {raw_score}")
    return raw_score / (1.0 + raw_score)


@dataclass(frozen=True, order=True)
class _Candidate:
    # sort key: best score first, then earlier span start, shorter span,
    # lower passage id
    neg_score: float
    char_start: int
    token_len: int
    passage_id: str
    passage_order: int = field(compare=False)
    tok_start: int = field(compare=False)
    tok_end: int = field(compare=False)
    char_end: int = field(compare=False)
    score: float = field(compare=False)


def extract_answers_baseline(
    model: TfIdfModel,
    query: str,
    passages: Sequence[Tuple[Passage, Dict[str, object]]],
    top_k: int,
    cfg: ReaderConfig = ReaderConfig(),
) -> List[Answer]:
    """Rank answer spans across the given passages for the query.

    Returns at most top_k extractive answers sorted by score descending, or
    a single no-answer result when no span clears cfg.no_answer_threshold.
    """
    if not passages:
        raise EmptyInputError("no passages to read")
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")

    query_tokens = tokenize(query)[: cfg.max_query_tokens]
    query_terms = sorted({t.term for t in query_tokens})
    term_index = {term: i for i, term in enumerate(query_terms)}
    idfs = [model.idf_weight(term) for term in query_terms]

    candidates: List[_Candidate] = []
    for order, (passage, _meta) in enumerate(passages):
        tokens = tokenize(passage.text)
        if not tokens or not query_terms:
            continue
        token_qidx = [term_index.get(tok.term, -1) for tok in tokens]
        for i, j, score in _kernels.span_candidates(
            token_qidx, idfs, cfg.baseline_span_cap, cfg.no_answer_threshold
        ):
            candidates.append(
                _Candidate(
                    neg_score=-score,
                    char_start=tokens[i].char_start,
                    token_len=j - i + 1,
                    passage_id=passage.passage_id,
                    passage_order=order,
                    tok_start=i,
                    tok_end=j,
                    char_end=tokens[j].char_end,
                    score=score,
                )
            )

    if not candidates:
        return [NO_ANSWER]

    candidates.sort()
    taken: Dict[int, List[Tuple[int, int]]] = {}
    answers: List[Answer] = []
    for cand in candidates:
        spans = taken.setdefault(cand.passage_order, [])
        if any(cand.tok_start <= e and s <= cand.tok_end for s, e in spans):
            continue
        spans.append((cand.tok_start, cand.tok_end))
        passage, meta = passages[cand.passage_order]
        start_c, end_c = cand.char_start, cand.char_end
        answers.append(
            Answer(
                answer=passage.text[start_c:end_c],
                type="extractive",
                score=confidence(cand.score),
                context=passage.text,
                meta=dict(meta),
                offsets_in_document=(passage.char_start + start_c, passage.char_start + end_c),
                offsets_in_context=(start_c, end_c),
                doc_id=passage.doc_id,
                passage_id=passage.passage_id,
            )
        )
        if len(answers) == top_k:
            break
    return answers

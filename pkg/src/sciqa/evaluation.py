"""Retriever and reader evaluation: precision/recall/MRR at k, exact match,
token-F1, semantic answer similarity, and the combined per-k report."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import httpx

from .corpus import DocumentStore
from .errors import AlignmentError, RemoteUnavailableError, UndefinedMetricError
from .pipeline import Pipeline, QueryRequest, run
from .reader import Answer
from .retriever import retrieve_documents
from .squad import Qrels, SquadDataset, SquadExample, to_qrels
from .text import normalize_answer

DEFAULT_KS = (5, 10, 20)


def precision_at_k(ranked: Sequence[str], relevant: Set[str], k: int) -> float:
    """|relevant ∩ top-k| / k; missing result slots count as irrelevant."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return sum(1 for doc_id in ranked[:k] if doc_id in relevant) / k


def recall_at_k(ranked: Sequence[str], relevant: Set[str], k: int) -> float:
    """|relevant ∩ top-k| / |relevant|; undefined for an empty relevant set."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not relevant:
        raise UndefinedMetricError("recall undefined for empty relevant set")
    return sum(1 for doc_id in ranked[:k] if doc_id in relevant) / len(relevant)


def reciprocal_rank(ranked: Sequence[str], relevant: Set[str], k: int) -> float:
    """1/rank of the first relevant document within the top-k, else 0."""
    for rank, doc_id in enumerate(ranked[:k], start=1):
        if doc_id in relevant:
            return 1.0 / rank
    return 0.0


def mrr_at_k(rankings: Dict[str, Sequence[str]], qrels: Qrels, k: int) -> float:
    """Mean reciprocal rank over queries; queries with empty relevant sets
    are skipped."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    values = [
        reciprocal_rank(ranked, qrels.get(qid, set()), k)
        for qid, ranked in rankings.items()
        if qrels.get(qid)
    ]
    if not values:
        raise UndefinedMetricError("MRR undefined without queries with relevance judgments")
    return sum(values) / len(values)


def exact_match(pred: str, golds: Sequence[str]) -> int:
    """1 iff the normalized prediction equals some normalized gold; an empty
    prediction matches an empty gold list (unanswerable convention)."""
    norm_pred = normalize_answer(pred)
    if not golds:
        return int(norm_pred == "")
    return int(any(norm_pred == normalize_answer(g) for g in golds))


def token_f1(pred: str, gold: str) -> float:
    """F1 over normalized token multisets; both empty -> 1, one empty -> 0."""
    pred_tokens = normalize_answer(pred).split()
    gold_tokens = normalize_answer(gold).split()
    if not pred_tokens and not gold_tokens:
        return 1.0
    if not pred_tokens or not gold_tokens:
        return 0.0
    common = Counter(pred_tokens) & Counter(gold_tokens)
    num_same = sum(common.values())
    if num_same == 0:
        return 0.0
    precision = num_same / len(pred_tokens)
    recall = num_same / len(gold_tokens)
    return 2 * precision * recall / (precision + recall)


class SemanticScorer:
    """Graded similarity of a predicted answer to a gold answer, in [0, 1]."""

    def score(self, pred: str, gold: str) -> float:
        raise NotImplementedError


class TokenF1Scorer(SemanticScorer):
    """Built-in baseline standing in for a cross-encoder similarity model."""

    def score(self, pred: str, gold: str) -> float:
        return token_f1(pred, gold)


class RemoteScorer(SemanticScorer):
    """Client for the /score wire protocol:
    POST {pairs: [{pred, gold}]} -> {scores: [real]}."""

    def __init__(self, endpoint: str, timeout: float = 10.0, client: Optional[httpx.Client] = None):
        self.endpoint = endpoint
        self.timeout = timeout
        self.client = client

    def score(self, pred: str, gold: str) -> float:
        payload = {"pairs": [{"pred": pred, "gold": gold}]}
        try:
            if self.client is None:
                response = httpx.post(self.endpoint, json=payload, timeout=self.timeout)
            else:
                response = self.client.post(self.endpoint, json=payload, timeout=self.timeout)
            response.raise_for_status()
            scores = response.json().get("scores", [])
        except httpx.HTTPError as exc:
            raise RemoteUnavailableError(f"scorer at {self.endpoint}: {exc}") from exc
        if len(scores) != 1 or not 0.0 <= float(scores[0]) <= 1.0:
            raise RemoteUnavailableError(f"scorer returned invalid payload: {scores!r}")
        return float(scores[0])


def _best_gold_score(pred: str, golds: Sequence[str], scorer: SemanticScorer) -> float:
    if not golds:
        return 1.0 if normalize_answer(pred) == "" else 0.0
    return max(scorer.score(pred, gold) for gold in golds)


def sas(preds: Sequence[str], golds: Sequence[Sequence[str]], scorer: SemanticScorer) -> float:
    """Mean over examples of the best scorer value against that example's
    golds."""
    if len(preds) != len(golds):
        raise AlignmentError(f"{len(preds)} predictions vs {len(golds)} gold lists")
    if not preds:
        raise UndefinedMetricError("SAS undefined on an empty example list")
    return sum(_best_gold_score(p, g, scorer) for p, g in zip(preds, golds)) / len(preds)


def answer_accuracy(preds: Sequence[Answer], examples: Sequence[SquadExample]) -> float:
    """A prediction is correct when the example is answerable and its best
    token-F1 against a gold reaches 0.5, or the example is impossible and the
    prediction is a no-answer."""
    if len(preds) != len(examples):
        raise AlignmentError(f"{len(preds)} predictions vs {len(examples)} examples")
    if not preds:
        raise UndefinedMetricError("accuracy undefined on an empty example list")
    correct = 0
    for pred, example in zip(preds, examples):
        if example.is_impossible:
            correct += int(pred.type == "no_answer")
        else:
            golds = [a.text for a in example.answers]
            correct += int(max(token_f1(pred.answer, g) for g in golds) >= 0.5)
    return correct / len(preds)


@dataclass
class RetrieverEval:
    per_k: Dict[int, Dict[str, float]] = field(default_factory=dict)


@dataclass
class ReaderEval:
    per_k: Dict[int, Dict[str, float]] = field(default_factory=dict)


def evaluate(
    pipeline: Pipeline,
    dataset: SquadDataset,
    store: DocumentStore,
    ks: Iterable[int] = DEFAULT_KS,
    scorer: Optional[SemanticScorer] = None,
) -> Tuple[RetrieverEval, ReaderEval]:
    """Evaluate both components over a dataset for every k.

    Retriever metrics run retrieval with top-k = k; reader metrics run the
    full pipeline at that retrieval depth taking the single best answer.
    """
    scorer = scorer or TokenF1Scorer()
    qrels = to_qrels(dataset, store)
    retriever_node = pipeline.nodes["retriever"]
    model = retriever_node.model

    retriever_eval = RetrieverEval()
    reader_eval = ReaderEval()
    for k in sorted(set(ks)):
        rankings: Dict[str, List[str]] = {}
        best_answers: List[Answer] = []
        for ex in dataset.examples:
            docs = retrieve_documents(model, store, ex.question, k)
            rankings[ex.id] = [d.doc_id for d in docs]
            rows = run(pipeline, QueryRequest(query=ex.question, retriever_top_k=k, reader_top_k=1))
            top = rows[0]
            best_answers.append(
                Answer(
                    answer=top.answer,
                    type=top.type,
                    score=top.score,
                    context=top.context,
                    meta=top.meta,
                    offsets_in_document=top.offsets_in_document,
                    offsets_in_context=top.offsets_in_context,
                    doc_id=top.doc_id,
                    passage_id="",
                )
            )

        precisions = [precision_at_k(rankings[ex.id], qrels.get(ex.id, set()), k) for ex in dataset.examples]
        recalls = [
            recall_at_k(rankings[ex.id], qrels[ex.id], k)
            for ex in dataset.examples
            if qrels.get(ex.id)
        ]
        retriever_eval.per_k[k] = {
            "precision": sum(precisions) / len(precisions),
            "recall": sum(recalls) / len(recalls) if recalls else 0.0,
            "mrr": mrr_at_k(rankings, qrels, k),
        }

        golds = [[a.text for a in ex.answers] for ex in dataset.examples]
        preds = [a.answer for a in best_answers]
        reader_eval.per_k[k] = {
            "em": sum(exact_match(p, g) for p, g in zip(preds, golds)) / len(preds),
            "accuracy": answer_accuracy(best_answers, dataset.examples),
            "sas": sas(preds, golds, scorer),
        }
    return retriever_eval, reader_eval


def report_dict(dataset_name: str, retriever_eval: RetrieverEval, reader_eval: ReaderEval) -> dict:
    return {
        "dataset": dataset_name,
        "retriever": {
            str(k): {m: metrics[m] for m in ("precision", "recall", "mrr")}
            for k, metrics in sorted(retriever_eval.per_k.items())
        },
        "reader": {
            str(k): {m: metrics[m] for m in ("em", "accuracy", "sas")}
            for k, metrics in sorted(reader_eval.per_k.items())
        },
    }


def report_json(dataset_name: str, retriever_eval: RetrieverEval, reader_eval: ReaderEval) -> bytes:
    payload = report_dict(dataset_name, retriever_eval, reader_eval)
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2).encode("utf-8")


def render_table(dataset_name: str, retriever_eval: RetrieverEval, reader_eval: ReaderEval) -> str:
    """Fixed-width per-k metric table for terminal output."""
    lines = [
        f"dataset: {dataset_name}",
        f"{'k':>4}  {'precision':>9}  {'recall':>9}  {'mrr':>9}  |  {'em':>9}  {'accuracy':>9}  {'sas':>9}",
    ]
    for k in sorted(retriever_eval.per_k):
        r = retriever_eval.per_k[k]
        d = reader_eval.per_k.get(k, {})
        lines.append(
            f"{k:>4}  {r['precision']:>9.4f}  {r['recall']:>9.4f}  {r['mrr']:>9.4f}  |  "
            f"{d.get('em', 0.0):>9.4f}  {d.get('accuracy', 0.0):>9.4f}  {d.get('sas', 0.0):>9.4f}"
        )
    return "\n".join(lines)

"""Retriever-reader composition as a validated DAG producing result rows.

Nodes are named stages over a shared per-request context; a validated
pipeline over an immutable index is safe for concurrent run() calls since
nodes keep no per-request state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .corpus import DocumentStore, clean_text, get_document
from .errors import (
    DanglingNodeError,
    EmptyIndexError,
    IntegrityError,
    PipelineCycleError,
    PipelineStageError,
)
from .reader import Answer, ReaderConfig, extract_answers_baseline, remote_read
from .retriever import TfIdfModel, retrieve_documents


@dataclass(frozen=True)
class QueryRequest:
    query: str
    retriever_top_k: int = 10
    reader_top_k: int = 5

    def __post_init__(self) -> None:
        if self.retriever_top_k < 1 or self.reader_top_k < 1:
            raise ValueError("top_k values must be >= 1")
        if not clean_text(self.query):
            raise ValueError("query is empty after cleaning")


@dataclass
class ResultRow:
    index: int
    answer: str
    type: str
    score: float
    context: str
    meta: Dict[str, object]
    offsets_in_document: Tuple[int, int]
    offsets_in_context: Tuple[int, int]
    doc_id: str
    retriever_score: float = 0.0  # internal ranking aid, not serialized

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "answer": self.answer,
            "type": self.type,
            "score": self.score,
            "context": self.context,
            "meta": self.meta,
            "offsets_in_document": {
                "start": self.offsets_in_document[0],
                "end": self.offsets_in_document[1],
            },
            "offsets_in_context": {
                "start": self.offsets_in_context[0],
                "end": self.offsets_in_context[1],
            },
            "doc_id": self.doc_id,
        }


class RetrieverNode:
    """Retrieves top-k documents and selects the passage budget for the
    reader: first the best passage of each document in rank order, then the
    remaining scoring passages in global score order, at most retriever_top_k
    in total."""

    def __init__(self, model: TfIdfModel, store: DocumentStore):
        self.model = model
        self.store = store

    def run(self, ctx: dict) -> dict:
        if not self.store.documents:
            raise EmptyIndexError("document store is empty")
        request: QueryRequest = ctx["request"]
        retrieved = retrieve_documents(self.model, self.store, request.query, request.retriever_top_k)

        budget = request.retriever_top_k
        chosen: List[Tuple[str, float]] = []
        chosen_ids = set()
        for doc in retrieved:
            if len(chosen) >= budget:
                break
            pid, score = doc.best_passages[0]
            chosen.append((pid, score))
            chosen_ids.add(pid)
        rest = sorted(
            (
                (pid, score)
                for doc in retrieved
                for pid, score in doc.best_passages
                if pid not in chosen_ids
            ),
            key=lambda hit: (-hit[1], hit[0]),
        )
        chosen.extend(rest[: budget - len(chosen)])

        doc_scores = {doc.doc_id: doc.score for doc in retrieved}
        reader_passages = []
        for pid, _score in chosen:
            passage = self.store.get_passage(pid)
            reader_passages.append((passage, dict(get_document(self.store, passage.doc_id).meta)))
        return {
            "retrieved": retrieved,
            "doc_scores": doc_scores,
            "reader_passages": reader_passages,
        }


class BaselineReaderNode:
    def __init__(self, model: TfIdfModel, cfg: ReaderConfig = ReaderConfig()):
        self.model = model
        self.cfg = cfg

    def run(self, ctx: dict) -> dict:
        request: QueryRequest = ctx["request"]
        if not ctx["reader_passages"]:  # nothing retrieved: unanswerable
            return {"answers": []}
        answers = extract_answers_baseline(
            self.model, request.query, ctx["reader_passages"], request.reader_top_k, self.cfg
        )
        return {"answers": answers}


class RemoteReaderNode:
    def __init__(self, endpoint: str, cfg: ReaderConfig = ReaderConfig(), timeout: float = 10.0):
        self.endpoint = endpoint
        self.cfg = cfg
        self.timeout = timeout

    def run(self, ctx: dict) -> dict:
        request: QueryRequest = ctx["request"]
        if not ctx["reader_passages"]:
            return {"answers": []}
        answers = remote_read(
            self.endpoint,
            request.query,
            ctx["reader_passages"],
            request.reader_top_k,
            self.cfg,
            timeout=self.timeout,
        )
        return {"answers": answers}


@dataclass
class Pipeline:
    """Named stages plus directed edges; first-added node is the query
    entry, last-added the answer exit."""

    nodes: Dict[str, object] = field(default_factory=dict)
    edges: List[Tuple[str, str]] = field(default_factory=list)

    def add_node(self, name: str, component: object) -> None:
        if name in self.nodes:
            raise ValueError(f"duplicate node name {name!r}")
        self.nodes[name] = component

    def add_edge(self, src: str, dst: str) -> None:
        for name in (src, dst):
            if name not in self.nodes:
                raise ValueError(f"edge references unknown node {name!r}")
        self.edges.append((src, dst))

    def _order(self) -> List[str]:
        """Topological order; raises on cycles."""
        incoming = {name: 0 for name in self.nodes}
        adjacency: Dict[str, List[str]] = {name: [] for name in self.nodes}
        for src, dst in self.edges:
            incoming[dst] += 1
            adjacency[src].append(dst)
        queue = [name for name in self.nodes if incoming[name] == 0]
        order = []
        while queue:
            name = queue.pop(0)
            order.append(name)
            for nxt in adjacency[name]:
                incoming[nxt] -= 1
                if incoming[nxt] == 0:
                    queue.append(nxt)
        if len(order) != len(self.nodes):
            cycle = [name for name in self.nodes if name not in order]
            raise PipelineCycleError(cycle)
        return order

    def validate(self) -> None:
        """Check the graph is a single-entry, single-exit DAG."""
        if not self.nodes:
            raise DanglingNodeError([], "pipeline has no nodes")
        self._order()
        names = list(self.nodes)
        entry, exit_ = names[0], names[-1]
        has_in = {dst for _, dst in self.edges}
        has_out = {src for src, _ in self.edges}
        dangling = [n for n in names if n != entry and n not in has_in]
        if dangling:
            raise DanglingNodeError(dangling, "nodes with unconnected inputs")
        unconsumed = [n for n in names if n != exit_ and n not in has_out]
        if unconsumed:
            raise DanglingNodeError(unconsumed, "nodes with unconsumed outputs")
        if entry in has_in:
            raise DanglingNodeError([entry], "entry node must not have inputs")
        if exit_ in has_out:
            raise DanglingNodeError([exit_], "exit node must not have outputs")


def build_default_pipeline(retriever: RetrieverNode, reader: object) -> Pipeline:
    pipeline = Pipeline()
    pipeline.add_node("retriever", retriever)
    pipeline.add_node("reader", reader)
    pipeline.add_edge("retriever", "reader")
    return pipeline


def _no_answer_row(answer: Answer) -> ResultRow:
    return ResultRow(
        index=0,
        answer="",
        type="no_answer",
        score=answer.score,
        context="",
        meta={},
        offsets_in_document=(0, 0),
        offsets_in_context=(0, 0),
        doc_id="",
    )


def _check_substring_law(row: ResultRow, store: DocumentStore) -> None:
    start_c, end_c = row.offsets_in_context
    if row.context[start_c:end_c] != row.answer:
        raise IntegrityError(f"row {row.index}: context slice != answer")
    start_d, end_d = row.offsets_in_document
    doc = get_document(store, row.doc_id)
    if doc.text[start_d:end_d] != row.answer:
        raise IntegrityError(f"row {row.index}: document slice != answer")
    if (end_c - start_c) != len(row.answer) or (end_d - start_d) != len(row.answer):
        raise IntegrityError(f"row {row.index}: offset widths != answer length")


def run(pipeline: Pipeline, request: QueryRequest, store: Optional[DocumentStore] = None) -> List[ResultRow]:
    """Execute the pipeline for one request and assemble result rows.

    Rows are sorted by score descending with dense indices from 0; every
    extractive row is re-checked against the substring law before release.
    """
    pipeline.validate()
    ctx: dict = {"request": request, "query": request.query}
    for name in pipeline._order():
        node = pipeline.nodes[name]
        try:
            ctx.update(node.run(ctx))
        except PipelineStageError:
            raise
        except Exception as exc:
            raise PipelineStageError(name, exc) from exc

    answers: Sequence[Answer] = ctx.get("answers", [])
    doc_scores: Dict[str, float] = ctx.get("doc_scores", {})
    if not answers or all(a.type == "no_answer" for a in answers):
        return [_no_answer_row(answers[0] if answers else Answer(
            answer="", type="no_answer", score=0.0, context="", meta={},
            offsets_in_document=(0, 0), offsets_in_context=(0, 0), doc_id="", passage_id="",
        ))]

    rows = []
    check_store = store
    if check_store is None and "retriever" in pipeline.nodes:
        check_store = getattr(pipeline.nodes["retriever"], "store", None)
    for index, answer in enumerate(answers):
        row = ResultRow(
            index=index,
            answer=answer.answer,
            type=answer.type,
            score=answer.score,
            context=answer.context,
            meta=dict(answer.meta),
            offsets_in_document=answer.offsets_in_document,
            offsets_in_context=answer.offsets_in_context,
            doc_id=answer.doc_id,
            retriever_score=doc_scores.get(answer.doc_id, 0.0),
        )
        if row.type == "extractive" and check_store is not None:
            _check_substring_law(row, check_store)
        rows.append(row)
    return rows


def rerank(rows: List[ResultRow]) -> List[ResultRow]:
    """Stable sort by answer score, then retriever document score, then
    doc_id; indices rewritten to match."""
    ordered = sorted(rows, key=lambda r: (-r.score, -r.retriever_score, r.doc_id))
    return [replace(row, index=i) for i, row in enumerate(ordered)]
